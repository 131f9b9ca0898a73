// Command-line driver: single runs, batches, the solvability oracle and the
// level suite.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gamesearch/harness.hpp"

namespace fs = std::filesystem;
using namespace gamesearch;

namespace {

enum Exit : int {
  kPass = 0,
  kFail = 1,
  kAborted = 2,
  kNoSuchFile = 10,
  kParse = 11,
  kInvalid = 12,
  kWrite = 13,
  kUsage = 14,
};

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const fs::path& p) {
  if (!fs::exists(p)) throw CliError{kNoSuchFile, "no such file: " + p.string()};
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in) throw CliError{kNoSuchFile, "cannot read " + p.string()};
  return buf.str();
}

Level read_level(const fs::path& p) {
  const std::string text = read_file(p);
  try {
    return parse_level(text, p.stem().string());
  } catch (const ParseError& e) {
    throw CliError{kParse, p.string() + ": " + e.what()};
  } catch (const ValidationError& e) {
    throw CliError{kInvalid, p.string() + ": " + e.what()};
  }
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << text;
  if (!out) throw CliError{kWrite, "cannot write " + p.string()};
}

TestingTask make_task(const Level& level, const std::string& goal, const std::string& phi) {
  TestingTask t;
  t.goal = goal.empty() && level.goal ? *level.goal : goal;
  if (t.goal.empty()) throw CliError{kUsage, "no --goal given and the level names none"};
  if (!level.find(t.goal)) throw CliError{kInvalid, "goal '" + t.goal + "' is not an object of the level"};
  try {
    t.phi = parse_predicate(phi);
  } catch (const std::invalid_argument& e) {
    throw CliError{kUsage, e.what()};
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goal-driven search agent for grid games with buttons and doors"};
  app.require_subcommand(1);

  std::string level_path, goal, phi = "isOpen", mode = "search", trace_path, dump_path, report_path;
  std::uint64_t seed = 1;
  std::optional<int> radius;
  auto* run = app.add_subcommand("run", "run one agent on one level");
  run->add_option("--level", level_path, "level file")->required();
  run->add_option("--goal", goal, "goal object id");
  run->add_option("--phi", phi, "isOpen | isClosed | isReached");
  run->add_option("--mode", mode, "search | basic | random");
  run->add_option("--seed", seed, "seed for the random agent");
  run->add_option("--radius", radius, "visibility radius, 0 for unlimited");
  run->add_option("--trace", trace_path, "write the event trace here");
  run->add_option("--model-dump", dump_path, "write the model dump here");
  run->add_option("--report", report_path, "write the JSON report here");

  std::string spec_path, out_dir;
  auto* batch = app.add_subcommand("batch", "run an experiment spec");
  batch->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
  batch->add_option("--out", out_dir, "output directory")->required();

  std::string oracle_level, oracle_goal, oracle_phi = "isOpen";
  auto* oracle = app.add_subcommand("oracle", "decide solvability with full knowledge");
  oracle->add_option("--level", oracle_level, "level file")->required();
  oracle->add_option("--goal", oracle_goal, "goal object id");
  oracle->add_option("--phi", oracle_phi, "isOpen | isClosed | isReached");

  std::string suite_dir;
  auto* gen = app.add_subcommand("gen-suite", "write the benchmark levels");
  gen->add_option("--out", suite_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) {
      const Level level = read_level(level_path);
      const TestingTask task = make_task(level, goal, phi);
      Mode m;
      try {
        m = parse_mode(mode);
      } catch (const std::invalid_argument& e) {
        throw CliError{kUsage, e.what()};
      }
      const RunReport rep = run_single(level, task, m, seed, radius.value_or(level.radius));
      if (!trace_path.empty()) write_file(trace_path, rep.trace);
      if (!dump_path.empty()) write_file(dump_path, rep.model_dump);
      if (!report_path.empty()) write_file(report_path, report_json(rep));
      std::cout << report_text(rep);
      switch (rep.verdict) {
        case Verdict::Pass: return kPass;
        case Verdict::Fail: return kFail;
        case Verdict::Aborted: return kAborted;
      }
    }
    if (*batch) {
      const std::string text = read_file(spec_path);
      ExperimentSpec spec;
      try {
        spec = parse_experiment_spec(text, fs::path(spec_path).parent_path());
      } catch (const std::exception& e) {
        throw CliError{kParse, spec_path + ": " + e.what()};
      }
      const BatchReport rep = run_batch(spec);
      write_file(fs::path(out_dir) / "batch.json", report_json(rep));
      write_file(fs::path(out_dir) / "batch.txt", report_text(rep));
      std::cout << report_text(rep);
      return 0;
    }
    if (*oracle) {
      const Level level = read_level(oracle_level);
      const TestingTask task = make_task(level, oracle_goal, oracle_phi);
      const OracleResult r = oracle_solvable(level, task);
      if (r.solvable)
        std::cout << "solvable min_interactions=" << *r.min_interactions << '\n';
      else
        std::cout << "unsolvable\n";
      return r.solvable ? 0 : 1;
    }
    if (*gen) {
      for (const auto& p : generate_suite(suite_dir)) std::cout << p.string() << '\n';
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kWrite;
  }
  return 0;
}
