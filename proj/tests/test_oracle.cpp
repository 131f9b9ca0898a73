#include <gtest/gtest.h>

#include "gamesearch/harness.hpp"

using namespace gamesearch;

namespace {

TestingTask open_goal(const std::string& g) {
  TestingTask t;
  t.goal = g;
  return t;
}

const char* kCorridor = R"([grid]
#############
#@.1.#......#
#....D......#
#############
[objects]
1 = button b1
D = door dT
[wiring]
b1 -> dT
)";

}  // namespace

TEST(Oracle, SimpleSolvable) {
  const auto r = oracle_solvable(parse_level(kCorridor), open_goal("dT"));
  EXPECT_TRUE(r.solvable);
  EXPECT_EQ(r.min_interactions, 1);
}

TEST(Oracle, UnwiredDoorIsUnsolvable) {
  std::string text = kCorridor;
  text = text.substr(0, text.find("[wiring]"));
  const auto r = oracle_solvable(parse_level(text), open_goal("dT"));
  EXPECT_FALSE(r.solvable);
  EXPECT_FALSE(r.min_interactions);
}

TEST(Oracle, InitiallyOpenNeedsNoInteraction) {
  std::string text = kCorridor;
  text.replace(text.find("door dT"), 7, "door dT open");
  EXPECT_EQ(oracle_solvable(parse_level(text), open_goal("dT")).min_interactions, 0);
}

TEST(Oracle, IsClosedGoal) {
  TestingTask t = open_goal("dT");
  t.phi = Predicate::IsClosed;
  EXPECT_EQ(oracle_solvable(parse_level(kCorridor), t).min_interactions, 0);
}

TEST(Oracle, Fig1NeedsFourInteractions) {
  const auto r = oracle_solvable(parse_suite_level(fig1_level()), fig1_level().task);
  EXPECT_TRUE(r.solvable);
  EXPECT_EQ(r.min_interactions, 4);
}

TEST(Oracle, SuiteLevelsAreSolvable) {
  for (const auto& s : benchmark_levels()) EXPECT_TRUE(oracle_solvable(parse_suite_level(s), s.task).solvable) << s.name;
  for (const auto& s : trap_levels()) EXPECT_TRUE(oracle_solvable(parse_suite_level(s), s.task).solvable) << s.name;
}

TEST(Oracle, RejectsLargeLevels) {
  std::string grid = "[grid]\n";
  std::string objects = "[objects]\n";
  std::string row1 = "#@", row2 = "##";
  for (int i = 0; i < 13; ++i) {
    const char m = static_cast<char>('A' + i);
    row1 += ".";
    row2 += std::string(1, m) + "#";
    objects += std::string(1, m) + " = door d" + std::to_string(i) + "\n";
    row1 += ".";
  }
  row1 += "#";
  row2 += "#";
  const std::string border(row1.size(), '#');
  row2.resize(row1.size(), '#');
  const std::string text = grid + border + "\n" + row1 + "\n" + row2 + "\n" + border + "\n" + objects;
  EXPECT_THROW(oracle_solvable(parse_level(text), open_goal("d0")), TooLarge);
}
