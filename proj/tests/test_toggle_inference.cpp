#include <gtest/gtest.h>

#include <random>

#include "gamesearch/toggle_inference.hpp"

using namespace gamesearch;

namespace {

std::string b(int i) { return "b" + std::to_string(i); }
std::string d(int i) { return "d" + std::to_string(i); }

}  // namespace

TEST(ToggleInference, SimplePair) {
  ToggleInference inf;
  inf.sighting("d", false);
  inf.interaction("b");
  const auto proven = inf.sighting("d", true);
  ASSERT_EQ(proven.size(), 1u);
  EXPECT_EQ(proven[0], (std::pair<std::string, std::string>{"b", "d"}));
  EXPECT_EQ(inf.wired("b", "d"), true);
}

TEST(ToggleInference, AmbiguousUntilSeparated) {
  ToggleInference inf;
  inf.sighting("d", false);
  inf.interaction("x");
  inf.interaction("y");
  EXPECT_TRUE(inf.sighting("d", true).empty());  // x + y = 1: one of them, unknown which
  EXPECT_FALSE(inf.wired("x", "d"));
  inf.interaction("y");
  const auto proven = inf.sighting("d", true);  // y = 0, so x = 1
  ASSERT_EQ(proven.size(), 1u);
  EXPECT_EQ(proven[0].first, "x");
  EXPECT_EQ(inf.wired("y", "d"), false);
}

TEST(ToggleInference, DoublePressCancels) {
  ToggleInference inf;
  inf.sighting("d", false);
  inf.interaction("b");
  inf.interaction("b");
  EXPECT_TRUE(inf.sighting("d", false).empty());
  EXPECT_FALSE(inf.wired("b", "d").has_value());
}

// Random wirings and random partial observation: nothing unsound is ever
// proven, and watching every door after every single press proves everything.
TEST(ToggleInference, SoundAgainstRandomWiring) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const int nb = 2 + static_cast<int>(rng() % 6);
    const int nd = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<bool>> wired(nb, std::vector<bool>(nd));
    for (auto& row : wired)
      for (auto&& w : row) w = rng() % 3 == 0;
    std::vector<bool> open(nd);
    for (auto&& o : open) o = rng() % 2;

    const bool full = trial % 3 == 0;
    ToggleInference inf;
    std::vector<std::pair<std::string, std::string>> proven;
    auto look = [&](int k) {
      for (auto& p : inf.sighting(d(k), open[k])) proven.push_back(p);
    };
    for (int k = 0; k < nd; ++k) look(k);
    for (int step = 0; step < 40; ++step) {
      const int i = full ? step % nb : static_cast<int>(rng() % nb);
      inf.interaction(b(i));
      for (int k = 0; k < nd; ++k)
        if (wired[i][k]) open[k] = !open[k];
      for (int k = 0; k < nd; ++k)
        if (full || rng() % 3 == 0) look(k);
    }
    for (const auto& [bi, dk] : proven) {
      const int i = std::stoi(bi.substr(1)), k = std::stoi(dk.substr(1));
      EXPECT_TRUE(wired[i][k]) << bi << " -> " << dk;
    }
    for (int i = 0; i < nb; ++i)
      for (int k = 0; k < nd; ++k) {
        const auto w = inf.wired(b(i), d(k));
        if (w) EXPECT_EQ(*w, bool(wired[i][k]));
        if (full) EXPECT_TRUE(w.has_value());
      }
  }
}
