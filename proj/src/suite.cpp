#include <fstream>

#include "gamesearch/harness.hpp"
#include "json.hpp"

namespace gamesearch {

namespace {

TestingTask open_task(const std::string& goal) {
  TestingTask t;
  t.goal = goal;
  t.phi = Predicate::IsOpen;
  return t;
}

SuiteLevel make(std::string name, std::string text, std::string goal, std::optional<LevelMetrics> target = {}) {
  return SuiteLevel{std::move(name), std::move(text), open_task(goal), target};
}

}  // namespace

const SuiteLevel& fig1_level() {
  static const SuiteLevel level = make("fig1", R"(# Four rooms; the treasure door dT needs b4, which sits behind d1 and d2.
[grid]
#################
#.......#.......#
#.......#....4..#
#.......#.......#
#.......#.......#
####T#######Y####
#.......#.......#
#.......#.......#
#.......#....3..#
#.......#.......#
#..1....#.......#
#.......#.......#
#...2...X.......#
#@......#.......#
#################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
X = door d1
Y = door d2
T = door dT
[wiring]
b2 -> d1
b3 -> d1 d2
b4 -> dT
[meta]
radius = 4
goal = dT
)",
                                       "dT");
  return level;
}

const std::vector<SuiteLevel>& benchmark_levels() {
  static const std::vector<SuiteLevel> levels = {
      make("R3_1_1_H", R"([grid]
###############################
#.........#.........#.........#
#..2......#.....4...#.........#
#.........A.........C.........#
#.........#.........#.........#
#.@...1...#..3......#....6....#
#.........#.........#.........#
#.........B.........T.........#
#.........#....5....#.........#
#.........#.........#.........#
###############################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
A = door d1
B = door d2
C = door d3
T = door dT
[wiring]
b1 -> d1
b3 -> d2
b4 -> dT
b6 -> d3
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{3, 6, 4, 1, 1, 0}),
      make("R4_1_1", R"([grid]
###############################
#.........#.........#.........#
#...3.....#.....4...#.........#
#.........#.........#.....6...#
#.........C.........D.........#
#.........#.........#.........#
#.........#.5.......#..8......#
#.........#.........#.........#
#####A#########E#########T#####
#.........#...................#
#.........#...................#
#.........#...................#
#...1.....B...................#
#.........#...................#
#.@....2..#...........7.......#
#.........#...................#
###############################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
8 = button b8
A = door dA
B = door dB
C = door dC
D = door dD
E = door dE
T = door dT
[wiring]
b1 -> dA
b3 -> dC
b4 -> dD
b5 -> dE
b6 -> dT
b7 -> dB
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{5, 8, 6, 1, 1, 0}),
      make("R4_1_1_M", R"([grid]
#########################
#.......#...#...........#
#.@...1.#...#.......3...#
#.......#...A...........#
#.......#...#########...#
#.......#...#...4.......#
#..2........B...........#
#...........#...........#
####D#############E######
#...........#...........#
#....7......#.......5...#
#.....#.....C...........#
#.....#.....#...#########
#.....#.....#...........#
#.....#8....T...6.......#
#.....#.....#...........#
#########################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
8 = button b8
A = door d1
B = door d2
C = door d3
T = door dT
D = door d4
E = door d5
[wiring]
b1 -> d1
b3 -> d5
b5 -> d3
b6 -> d4
b7 -> dT
b8 -> d2
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{4, 8, 6, 1, 1, 0}),
      make("R5_2_2_M", R"([grid]
#########################################
#.......#.......#.......#.......#.......#
#.......#.......B.......#...6...#.......#
#...1...#.......#...4...#.......#.......#
#.......######..#.......#...#...#.......#
#.@.....A.......#.......#...#...T.......#
#.......#.......#.......#...#...#.......#
#.......#...3...#.......#.......#.......#
#..2....#.......#...5...C...7...#.......#
#.......#.......#.......#.......#.......#
#########################################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
A = door d1
B = door d2
C = door d3
T = door dT
[wiring]
b1 -> d1
b3 -> d1 d2
b4 -> d3
b5 -> d2
b6 -> dT
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{5, 7, 4, 2, 2, 0}),
      make("R7_2_2", R"([grid]
#########################################
#.........#.........#.........#.........#
#.........#.........#.........#.........#
#....6....#....3....#....4....#.........#
#.........#.........E.........#.........#
#.........#.........#.........#.........#
#.........#.........#.........#.........#
#.........#.........#.........#.........#
#####A###########C#################T#####
#.............#.............#...........#
#.............#.............#...........#
#....1........#.............#...........#
#.............B.............D....5......#
#.............#......2......#...........#
#.@.......7...#.............#...........#
#.............#.............#...........#
#########################################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
A = door dA
B = door dB
C = door dC
D = door dD
E = door dE
T = door dT
[wiring]
b1 -> dB
b2 -> dD dA
b3 -> dE
b4 -> dT
b5 -> dC
b7 -> dC
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{7, 7, 6, 2, 2, 0}),
      make("R4_2_2", R"([grid]
#######################
#######.......#.......#
#######.......#....4..#
#######.......#.5.....#
#######.......#.......#
##########T#######Y#G##
#.....#.......#.......#
#.6...#.......#.......#
#.....#.......#....3..#
#.....F.......#.......#
#.....#..1....#.......#
#.....#.......#.......#
#.8...H...2...X..7....#
#.....#@......#.......#
#######################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
X = door d1
Y = door d2
T = door dT
F = door d3 open
8 = button b8
G = door d4
H = door d5
[wiring]
b2 -> d1
b3 -> d1 d2
b4 -> dT
b5 -> d4
b6 -> d3
b8 -> d5
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{5, 8, 6, 2, 2, 1}),
      make("R4_2_2_M", R"([grid]
#######################
#######.......#.......#
#######.......#....4..#
#######.......#.5.....#
#######.......#.......#
##########T#######Y####
#.....#.......#.......#
#.6...#.......#.......#
#.....#.......#....3..#
#.....F.......#.......#
#.....#..1....#.......#
#.....#.......#.......#
#.....#...2...X..7....#
#.....#@......#.......#
#######################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
X = door d1
Y = door d2
T = door dT
F = door d3 open
[wiring]
b2 -> d1
b3 -> d1 d2
b4 -> dT
b6 -> d3
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{5, 7, 4, 2, 2, 1}),
      make("R7_3_3", R"([grid]
#########################################
#.........#.........#.........#.........#
#.........#.........#.........#.........#
#....6....#....3....#....4....#.........#
#.........#.........E.........#.........#
#.........#.........#.........#.........#
#.........#.........#.........#.........#
#.........#.........#.........#.........#
#####A###########C#################T#####
#.............#.............#...........#
#.............#.............#...........#
#....1........#.............#...........#
#.............B.............D....5......#
#.............#......2......#...........#
#.@.......7...#.............#...........#
#.............#.............#...........#
#########################################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
5 = button b5
6 = button b6
7 = button b7
A = door dA
B = door dB
C = door dC
D = door dD
E = door dE
T = door dT
[wiring]
b1 -> dB dA dC
b2 -> dD dC
b3 -> dE dC
b4 -> dT
b5 -> dC
[meta]
radius = 4
goal = dT
)", "dT", LevelMetrics{7, 7, 6, 3, 4, 0}),
  };
  return levels;
}

const std::vector<SuiteLevel>& trap_levels() {
  static const std::vector<SuiteLevel> levels = {
      make("trap_reopen", R"(# trap: a button beyond the open door closes it; the goal button is back at the start
[grid]
#########################
#.......#.......#.......#
#.......#....1..#.......#
#.......X.......#.......#
#.......#.......T.......#
#@.2....#.......#.......#
#########################
[objects]
1 = button b1
2 = button b2
X = door dX open
T = door dT
[wiring]
b1 -> dX
b2 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("trap_parity", R"(# trap: the goal button also closes the way in, a second button reopens it
[grid]
#########################
#..1....#.......#.......#
#.......#.......#.......#
#.......X.......#.......#
#.......#.......T.......#
#@..2...#.......#.......#
#########################
[objects]
1 = button b1
2 = button b2
X = door dX open
T = door dT
[wiring]
b1 -> dX dT
b2 -> dX
[meta]
radius = 4
goal = dT
)", "dT"),
  };
  return levels;
}

const std::vector<SuiteLevel>& small_levels() {
  static const std::vector<SuiteLevel> levels = {
      make("s01", R"(# solvable: button next to the goal door
[grid]
#############
#.1...#.....#
#.....T.....#
#.....#.....#
#@....#.....#
#############
[objects]
1 = button b1
T = door dT
[wiring]
b1 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s02", R"(# unsolvable: goal door is not wired
[grid]
#############
#.1...#.....#
#.....T.....#
#.....#.....#
#@....#.....#
#############
[objects]
1 = button b1
T = door dT
[wiring]
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s03", R"(# unsolvable: the only button is behind the goal door
[grid]
#############
#.....#..1..#
#.....T.....#
#.....#.....#
#@.2..#.....#
#############
[objects]
1 = button b1
2 = button b2
T = door dT
[wiring]
b1 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s04", R"(# solvable: goal door starts open
[grid]
#############
#.1...#.....#
#.....T.....#
#.....#.....#
#@....#.....#
#############
[objects]
1 = button b1
T = door dT open
[wiring]
b1 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s05", R"(# solvable chain
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@....#..2..#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1
T = door dT
[wiring]
b1 -> d1
b2 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s06", R"(# unsolvable: goal button in the last room
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@....#.....#..2..#
###################
[objects]
1 = button b1
2 = button b2
A = door d1
T = door dT
[wiring]
b1 -> d1
b2 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s07", R"(# solvable: one button opens both doors
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@....#..2..#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1
T = door dT
[wiring]
b1 -> d1 dT
b2 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s08", R"(# unsolvable: opening the goal closes the way to it
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@....#.....#.....#
###################
[objects]
1 = button b1
A = door d1 open
T = door dT
[wiring]
b1 -> d1 dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s09", R"(# solvable: the second button closes the door behind
[grid]
###################
#.1...#..2..#.....#
#.....A.....#.....#
#.....#.....T.....#
#@....#.....#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1
T = door dT
[wiring]
b1 -> d1
b2 -> d1 dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s10", R"(# unsolvable: the first door needs a button behind it
[grid]
###################
#.....#..2..#.....#
#.....A.....#.....#
#.....#.....T.....#
#@.1..#.....#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1
T = door dT
[wiring]
b2 -> d1 dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s11", R"(# solvable chain of three doors
[grid]
#########################
#.1...#.....#..3..#.....#
#.....A.....#.....T.....#
#.....#.....B.....#.....#
#@....#..2..#.....#.....#
#########################
[objects]
1 = button b1
2 = button b2
3 = button b3
A = door d1
B = door d2
T = door dT
[wiring]
b1 -> d1
b2 -> d2
b3 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s12", R"(# unsolvable: the middle door is not wired
[grid]
#########################
#.1...#.....#..3..#.....#
#.....A.....#.....T.....#
#.....#.....B.....#.....#
#@....#..2..#.....#.....#
#########################
[objects]
1 = button b1
2 = button b2
3 = button b3
A = door d1
B = door d2
T = door dT
[wiring]
b1 -> d1
b3 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s13", R"(# solvable: a double toggle closes the way back, not needed
[grid]
#########################
#.1...#.....#..3..#.....#
#.....A.....#.....T.....#
#.....#.....B.....#.....#
#@.4..#..2..#.....#.....#
#########################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
A = door d1
B = door d2
T = door dT
[wiring]
b1 -> d1
b2 -> d1 d2
b3 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s14", R"(# unsolvable: the goal door sits between two sealed rooms
[grid]
###################
#.1...#.....#.....#
#.....#.....#.....#
#.....#.....T.....#
#@....#.....#.....#
###################
[objects]
1 = button b1
T = door dT
[wiring]
b1 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s15", R"(# solvable: the button closes the way back but opens the goal
[grid]
###################
#.....#..1..#.....#
#.....A.....#.....#
#.....#.....T.....#
#@....#.....#.....#
###################
[objects]
1 = button b1
A = door d1 open
T = door dT
[wiring]
b1 -> d1 dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s16", R"(# unsolvable: three doors, goal button in the last room
[grid]
#########################
#.1...#.....#..3..#..4..#
#.....A.....#.....T.....#
#.....#.....B.....#.....#
#@....#..2..#.....#.....#
#########################
[objects]
1 = button b1
2 = button b2
3 = button b3
4 = button b4
A = door d1
B = door d2
T = door dT
[wiring]
b1 -> d1
b2 -> d2
b4 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s17", R"(# solvable: both buttons in the first room
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@.2..#.....#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1
T = door dT
[wiring]
b1 -> d1
b2 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s18", R"(# solvable: a second button reopens the way
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@.2..#.....#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1 open
T = door dT
[wiring]
b1 -> d1 dT
b2 -> d1
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s19", R"(# unsolvable: every button flips both doors together
[grid]
###################
#.1...#.....#.....#
#.....A.....#.....#
#.....#.....T.....#
#@.2..#.....#.....#
###################
[objects]
1 = button b1
2 = button b2
A = door d1 open
T = door dT
[wiring]
b1 -> d1 dT
b2 -> d1 dT
[meta]
radius = 4
goal = dT
)", "dT"),
      make("s20", R"(# solvable: two distractor buttons
[grid]
#############
#.1.3.#.....#
#.....T.....#
#.....#.....#
#@.2..#.....#
#############
[objects]
1 = button b1
2 = button b2
3 = button b3
T = door dT
[wiring]
b3 -> dT
[meta]
radius = 4
goal = dT
)", "dT"),
  };
  return levels;
}

Level parse_suite_level(const SuiteLevel& s) { return parse_level(s.text, s.name); }

std::vector<std::filesystem::path> generate_suite(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<const SuiteLevel*> all;
  for (const auto& l : benchmark_levels()) all.push_back(&l);
  all.push_back(&fig1_level());
  for (const auto& l : trap_levels()) all.push_back(&l);

  std::vector<std::filesystem::path> written;
  for (const SuiteLevel* s : all) {
    const Level level = parse_suite_level(*s);
    if (s->target && measure_level(level) != *s->target)
      throw std::logic_error("level " + s->name + " has " + to_string(measure_level(level)) + ", expected " +
                             to_string(*s->target));
    if (!oracle_solvable(level, s->task).solvable) throw std::logic_error("level " + s->name + " is not solvable");
    const auto path = dir / (s->name + ".level");
    std::ofstream out(path);
    out << s->text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
  }

  nlohmann::ordered_json spec;
  spec["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : benchmark_levels())
    spec["levels"].push_back({{"path", l.name + ".level"}, {"goal", l.task.goal}, {"phi", "isOpen"}});
  spec["modes"] = {"search", "basic", "random"};
  spec["random_repeats"] = 10;
  spec["seed"] = 1;
  const auto spec_path = dir / "suite.json";
  std::ofstream out(spec_path);
  out << spec.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + spec_path.string());
  written.push_back(spec_path);
  return written;
}

}  // namespace gamesearch
