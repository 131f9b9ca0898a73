#include <gtest/gtest.h>

#include "gamesearch/world.hpp"

using namespace gamesearch;

namespace {

const char* kTwoRooms = R"(# comment lines are ignored
[grid]
#########
#.1.#...#
#@..D...#
#########
[objects]
1 = button b1
D = door d1
[wiring]
b1 -> d1
[meta]
radius = 3
goal = d1
)";

int parse_error_line(const std::string& text) {
  try {
    parse_level(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(World, ParsesLevel) {
  const Level l = parse_level(kTwoRooms, "two");
  EXPECT_EQ(l.name, "two");
  EXPECT_EQ(l.grid.rows(), 4);
  EXPECT_EQ(l.grid.cols(), 9);
  EXPECT_EQ(l.agent_start, (Cell{2, 1}));
  EXPECT_EQ(l.radius, 3);
  EXPECT_EQ(l.goal, "d1");
  ASSERT_NE(l.find("d1"), nullptr);
  EXPECT_EQ(l.find("d1")->cell, (Cell{2, 4}));
  EXPECT_EQ(l.doors_of("b1"), std::vector<std::string>{"d1"});
  EXPECT_EQ(l.buttons_of("d1"), std::vector<std::string>{"b1"});
  EXPECT_TRUE(l.init_open.empty());
}

TEST(World, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("[grid]\n###\n#@#\n###\n[bogus]\n"), 5);
  EXPECT_EQ(parse_error_line("[grid]\n###\n#@\n###\n"), 3);
  EXPECT_EQ(parse_error_line("[grid]\n####\n#@X#\n####\n"), 3);
  EXPECT_EQ(parse_error_line("[grid]\n####\n#@.#\n####\n[objects]\n@ = door d\n"), 6);
  EXPECT_EQ(parse_error_line("[grid]\n####\n#@.#\n####\n[objects]\nX = lever x\n"), 6);
  EXPECT_EQ(parse_error_line("[grid]\n####\n#@@#\n####\n"), 3);
  EXPECT_EQ(parse_error_line("stray\n"), 1);
  EXPECT_GT(parse_error_line("[meta]\nradius = 2\n"), 0);
}

TEST(World, ValidationErrors) {
  EXPECT_THROW(parse_level("[grid]\n###\n#@.\n###\n"), ValidationError);  // open border
  EXPECT_THROW(parse_level("[grid]\n#####\n#@12#\n#####\n[objects]\n1 = button b\n2 = button b\n"),
               ValidationError);
  EXPECT_THROW(parse_level("[grid]\n#####\n#@1D#\n#####\n[objects]\n1 = button b\nD = door d\n[wiring]\nb -> d\n"),
               ValidationError);  // button next to its door
  EXPECT_THROW(parse_level("[grid]\n####\n#@.#\n####\n[meta]\ngoal = nope\n"), ValidationError);
  EXPECT_THROW(load_level("/nonexistent/file.level"), std::runtime_error);
}

TEST(World, DoorParity) {
  const Level l = parse_level(kTwoRooms);
  GameConfiguration cfg = init(l);
  EXPECT_FALSE(cfg.door_open.at("d1"));
  cfg = interact(cfg, l, "b1");
  EXPECT_TRUE(cfg.door_open.at("d1"));
  cfg = interact(cfg, l, "b1");
  EXPECT_FALSE(cfg.door_open.at("d1"));
  EXPECT_EQ(cfg.tick, 2u);
  EXPECT_THROW(interact(cfg, l, "d1"), NotInteractable);
  EXPECT_THROW(interact(cfg, l, "zz"), UnknownObject);
}

TEST(World, InteractOutOfRangeOnlyTicks) {
  const Level l = parse_level(kTwoRooms);
  GameConfiguration cfg = init(l);
  cfg = move_agent(cfg, l, Direction::East);
  cfg = move_agent(cfg, l, Direction::East);  // (2,3): still adjacent to b1 at (1,2)
  cfg = move_agent(cfg, l, Direction::East);  // blocked by the closed door
  EXPECT_EQ(cfg.agent_cell, (Cell{2, 3}));
  cfg = interact(cfg, l, "b1");
  EXPECT_TRUE(cfg.door_open.at("d1"));
  cfg = move_agent(cfg, l, Direction::East);
  cfg = move_agent(cfg, l, Direction::East);
  EXPECT_EQ(cfg.agent_cell, (Cell{2, 5}));
  const auto before = cfg.door_open;
  cfg = interact(cfg, l, "b1");
  EXPECT_EQ(cfg.door_open, before);
  EXPECT_EQ(cfg.tick, 7u);
}

TEST(World, ClosedDoorBlocksSight) {
  const Level l = parse_level(kTwoRooms);
  GameConfiguration cfg = init(l);
  auto sees = [&](const GameConfiguration& c, Cell target) {
    const Observation o = observe(c, l, 10);
    for (const auto& [cell, kind] : o.visible_cells)
      if (cell == target) return true;
    return false;
  };
  EXPECT_TRUE(sees(cfg, {2, 4}));   // the door itself
  EXPECT_FALSE(sees(cfg, {2, 6}));  // behind it
  cfg = interact(cfg, l, "b1");
  EXPECT_TRUE(sees(cfg, {2, 6}));
  const Observation o = observe(cfg, l, 1);
  for (const auto& [cell, kind] : o.visible_cells) EXPECT_LE(distance_squared(cell, cfg.agent_cell), 1);
}
