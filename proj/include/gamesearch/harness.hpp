#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamesearch/agent.hpp"
#include "gamesearch/model.hpp"
#include "gamesearch/world.hpp"

namespace gamesearch {

// ---- oracle --------------------------------------------------------------

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleMaxDoors = 12;

struct OracleResult {
  bool solvable = false;
  std::optional<int> min_interactions;
};

// Exhaustive search over (agent cell, door vector) with full knowledge of
// the level. A configuration is a witness when phi holds and the agent is
// within interaction range of the goal.
OracleResult oracle_solvable(const Level& level, const TestingTask& task);

// ---- level metrics and suite ---------------------------------------------

struct LevelMetrics {
  int rooms = 0;
  int buttons = 0;
  int doors = 0;
  int nu = 0;  // most doors toggled by one button
  int mu = 0;  // most buttons toggling one door
  int init = 0;

  bool operator==(const LevelMetrics&) const = default;
};

LevelMetrics measure_level(const Level& level);
std::string to_string(const LevelMetrics& m);

struct SuiteLevel {
  std::string name;
  std::string text;
  TestingTask task;
  std::optional<LevelMetrics> target;  // set for the parameter-matched levels
};

// The eight parameter-matched benchmark levels.
const std::vector<SuiteLevel>& benchmark_levels();
const SuiteLevel& fig1_level();
// Levels that punish careless toggling; recovering needs unstuck.
const std::vector<SuiteLevel>& trap_levels();
// Small levels (at most four doors), some deliberately unsolvable.
const std::vector<SuiteLevel>& small_levels();

Level parse_suite_level(const SuiteLevel& s);

// Writes every benchmark, fig1 and trap level plus an experiment spec
// (suite.json) covering the benchmark levels. Each level is checked with the
// oracle first. Returns the written paths.
std::vector<std::filesystem::path> generate_suite(const std::filesystem::path& dir);

// ---- runs ----------------------------------------------------------------

// Radius used when "unlimited" is requested: covers the whole grid.
int unlimited_radius(const Level& level);

struct RunReport {
  std::string level;
  Mode mode = Mode::Search;
  std::uint64_t seed = 0;
  int radius = 0;
  std::uint64_t budget = 0;  // Random only
  Verdict verdict = Verdict::Aborted;
  RunStats stats;
  double exploration_fraction = 0.0;
  AccuracyReport accuracy;
  std::string model_dump;
  std::string trace;
};

// `random_budget` of 0 lets a Random run derive its budget from a Search run
// on the same level.
RunReport run_single(const Level& level, const TestingTask& task, Mode mode, std::uint64_t seed, int radius,
                     std::uint64_t random_budget = 0, bool keep_trace = true);

std::uint64_t random_budget_for(std::uint64_t search_steps);

double exploration_fraction(const RunStats& s);

// ---- batches -------------------------------------------------------------

struct LevelTask {
  std::string path;
  TestingTask task;
};

struct ExperimentSpec {
  std::vector<LevelTask> levels;
  std::vector<Mode> modes{Mode::Search, Mode::SearchBasic, Mode::Random};
  int random_repeats = 10;
  std::uint64_t seed = 1;
  std::optional<int> radius;  // <= 0 means unlimited
};

// Relative level paths are resolved against `base_dir`.
ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir = {});

struct BatchCell {
  std::string level;
  Mode mode = Mode::Search;
  std::optional<std::string> error;
  LevelMetrics metrics;
  double pass = 0.0;  // 0/1, or the pass rate over repeats for Random
  double total_steps = 0.0;
  double exploration_fraction = 0.0;
  std::uint64_t tried_doors = 0;
  std::uint64_t budget = 0;
  AccuracyReport accuracy;  // Random: summed over repeats
  int runs = 1;
};

struct BatchReport {
  std::vector<BatchCell> cells;
};

BatchReport run_batch(const ExperimentSpec& spec);           // OpenMP
BatchReport run_batch_serial(const ExperimentSpec& spec);    // reference

std::string report_json(const RunReport& r);
std::string report_text(const RunReport& r);
std::string report_json(const BatchReport& r);
std::string report_text(const BatchReport& r);

}  // namespace gamesearch
