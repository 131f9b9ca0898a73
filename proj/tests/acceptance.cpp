// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gamesearch/harness.hpp"
#include "support.hpp"

using namespace gamesearch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << x;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<const SuiteLevel*> all_suite_levels() {
  std::vector<const SuiteLevel*> out;
  for (const auto& s : benchmark_levels()) out.push_back(&s);
  out.push_back(&fig1_level());
  for (const auto& s : trap_levels()) out.push_back(&s);
  return out;
}

Outcome c1_search_column() {
  const auto t0 = std::chrono::steady_clock::now();
  int search_pass = 0;
  std::vector<std::string> basic_fails;
  bool basic_fails_init = false;
  for (const auto& s : benchmark_levels()) {
    const Level l = parse_suite_level(s);
    search_pass += run_single(l, s.task, Mode::Search, 1, l.radius, 0, false).verdict == Verdict::Pass;
    if (run_single(l, s.task, Mode::SearchBasic, 1, l.radius, 0, false).verdict != Verdict::Pass) {
      basic_fails.push_back(s.name);
      basic_fails_init |= measure_level(l).init > 0;
    }
  }
  const double secs = seconds_since(t0);
  std::string names;
  for (const auto& n : basic_fails) names += (names.empty() ? "" : ",") + n;
  return {search_pass == 8 && basic_fails.size() >= 2 && basic_fails_init && secs < 60,
          "search " + std::to_string(search_pass) + "/8, basic fails on " + std::to_string(basic_fails.size()) + " (" +
              names + "), init>0 among them: " + (basic_fails_init ? "yes" : "no") + ", " + fmt(secs) + "s"};
}

Outcome c2_random_column(const ExperimentSpec& spec) {
  const BatchReport rep = run_batch(spec);
  double passes = 0;
  int runs = 0;
  for (const auto& c : rep.cells) {
    if (c.mode != Mode::Random || c.error) continue;
    passes += c.pass * c.runs;
    runs += c.runs;
  }
  const double rate = runs ? passes / runs : 0.0;
  return {runs == 80 && rate > 0.0 && rate < 1.0,
          "random passes " + fmt(passes, 0) + "/" + std::to_string(runs) + " (rate " + fmt(rate, 3) + ")"};
}

Outcome c3_wrong_connections() {
  int worst_default = 0, worst_full = 0;
  for (const auto& s : benchmark_levels()) {
    const Level l = parse_suite_level(s);
    worst_default = std::max(worst_default,
                             run_single(l, s.task, Mode::Search, 1, l.radius, 0, false).accuracy.wrong_connections);
    worst_full = std::max(worst_full, run_single(l, s.task, Mode::Search, 1, 0, 0, false).accuracy.wrong_connections);
  }
  return {worst_default <= 1 && worst_full == 0,
          "max W_c default radius " + std::to_string(worst_default) + ", unlimited " + std::to_string(worst_full)};
}

Outcome c4_fig1_model() {
  const Level l = parse_suite_level(fig1_level());
  AgentContext ctx(l, Mode::Search, l.radius, false);
  const SearchResult r = online_search(fig1_level().task, ctx);
  std::set<std::string> states;
  for (const auto& [id, st] : r.model.states()) states.insert(id);
  const std::set<std::string> want{"b1", "b2", "b3", "b4", "d1", "d2", "dT"};
  bool zones_ok = true;
  std::string zones;
  for (const char* d : {"d1", "d2", "dT"}) {
    const auto n = r.model.zones_of(d).size();
    zones_ok &= n == 2;
    zones += std::string(d) + ":" + std::to_string(n) + " ";
  }
  const bool has_b4 = r.model.connections().count({"b4", "dT"}) > 0;

  AgentContext full(l, Mode::Search, unlimited_radius(l), false);
  const SearchResult rf = online_search(fig1_level().task, full);
  const std::set<Connection> allowed{{"b2", "d1"}, {"b3", "d1"}, {"b3", "d2"}, {"b4", "dT"}};
  bool subset = true;
  for (const auto& c : rf.model.connections()) subset &= allowed.count(c) > 0;

  return {r.verdict == Verdict::Pass && states == want && zones_ok && has_b4 && rf.verdict == Verdict::Pass && subset,
          "states " + std::to_string(states.size()) + "/7, zones " + zones + "(b4,dT) " + (has_b4 ? "found" : "missing") +
              ", full-observability P size " + std::to_string(rf.model.connections().size()) +
              (subset ? " within ground truth" : " has a wrong entry")};
}

Outcome c5_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  int agree = 0, solvable = 0, fp = 0, fn = 0;
  std::size_t max_doors = 0;
  for (const auto& s : small_levels()) {
    const Level l = parse_suite_level(s);
    max_doors = std::max(max_doors, l.objects_of_kind(ObjectKind::Door).size());
    const bool o = oracle_solvable(l, s.task).solvable;
    const bool p = run_single(l, s.task, Mode::Search, 1, l.radius, 0, false).verdict == Verdict::Pass;
    solvable += o;
    agree += o == p;
    fp += p && !o;
    fn += o && !p;
  }
  const double secs = seconds_since(t0);
  const int n = static_cast<int>(small_levels().size());
  return {n == 20 && agree == n && max_doors <= 4 && solvable > 0 && solvable < n && secs < 30,
          std::to_string(agree) + "/" + std::to_string(n) + " agree (" + std::to_string(solvable) +
              " solvable), false positives " + std::to_string(fp) + ", false negatives " + std::to_string(fn) + ", " +
              fmt(secs) + "s"};
}

Outcome c6_navigation() {
  std::mt19937_64 rng(6);
  int equal = 0, reachable = 0;
  for (int q = 0; q < 100; ++q) {
    std::bernoulli_distribution wall(0.3);
    std::string text = "[grid]\n";
    const int rows = 16, cols = 24;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c)
        text += (r == 1 && c == 1) ? '@' : (r == 0 || c == 0 || r == rows - 1 || c == cols - 1 || wall(rng)) ? '#' : '.';
      text += '\n';
    }
    const Level l = parse_level(text);
    NavGraph nav(rows, cols);
    nav.integrate(fixtures::full_observation(l, init(l)));
    std::vector<Cell> floor;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (l.grid.at({r, c}) == CellKind::Floor) floor.push_back({r, c});
    const Cell a = floor[rng() % floor.size()], b = floor[rng() % floor.size()];

    std::vector<int> dist(l.grid.size(), -1);
    std::deque<Cell> queue{a};
    dist[l.grid.index(a)] = 0;
    while (!queue.empty()) {
      const Cell c = queue.front();
      queue.pop_front();
      for (Direction d : kAllDirections) {
        const Cell n = step(c, d);
        if (l.grid.at(n) != CellKind::Floor || dist[l.grid.index(n)] >= 0) continue;
        dist[l.grid.index(n)] = dist[l.grid.index(c)] + 1;
        queue.push_back(n);
      }
    }
    const auto path = find_path(nav, a, b, {});
    const int bfs = dist[l.grid.index(b)];
    if (bfs >= 0) ++reachable;
    equal += bfs < 0 ? !path : (path && static_cast<int>(path->steps()) == bfs);
  }
  return {equal == 100, std::to_string(equal) + "/100 queries match BFS (" + std::to_string(reachable) + " reachable)"};
}

Outcome c7_reasoner() {
  std::mt19937_64 rng(7);
  int models = 0, checks = 0, mismatches = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int gr = 1 + static_cast<int>(rng() % 2);
    const int gc = 1 + static_cast<int>(rng() % 4);
    const auto grid = fixtures::room_grid(rng, gr, gc, 0.6, 0.3);
    const Level l = parse_level(grid.text);
    NavGraph nav(l.grid.rows(), l.grid.cols());
    Model model(l.agent_start);
    const Observation obs = fixtures::full_observation(l, init(l));
    nav.integrate(obs);
    model.update_state_graph(obs, std::nullopt, nav);
    const auto zones = model.zones();
    const std::size_t n = zones.size();
    if (n > 8) continue;
    ++models;
    // Closure straight from shared blocker membership, by Warshall.
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 1 << 20));
    for (std::size_t i = 0; i < n; ++i) {
      d[i][i] = 0;
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& m : zones[i].members)
          if (i != j && zones[j].members.count(m) && model.state(m)->tag == StateTag::Blocker) d[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ++checks;
        mismatches += (i != j && model.neighbor(zones[i].id, zones[j].id) != (d[i][j] == 1));
        for (int k = 1; k <= 8; ++k) {
          ++checks;
          mismatches += model.room_reachability(k, zones[i].id, zones[j].id) != (d[i][j] <= k);
        }
      }
  }
  return {mismatches == 0 && models > 0, std::to_string(models) + " models, " + std::to_string(checks) +
                                             " queries, " + std::to_string(mismatches) + " mismatches"};
}

Outcome c8_determinism(const fs::path& suite) {
  const fs::path a = suite / "run_a", b = suite / "run_b";
  for (const auto& out : {a, b}) {
    const std::string cmd = std::string(GAMESEARCH_CLI) + " batch --spec " + (suite / "suite.json").string() +
                            " --out " + out.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "batch command failed"};
  }
  const std::string ja = slurp(a / "batch.json"), jb = slurp(b / "batch.json");
  const ExperimentSpec spec = parse_experiment_spec(slurp(suite / "suite.json"), suite);
  const bool serial_same = report_json(run_batch_serial(spec)) == ja;
  return {!ja.empty() && ja == jb && serial_same, std::to_string(ja.size()) + "-byte reports " +
                                                      (ja == jb ? "identical" : "differ") + ", serial reference " +
                                                      (serial_same ? "identical" : "differs")};
}

Outcome c9_termination() {
  int runs = 0, violations = 0;
  for (const SuiteLevel* s : all_suite_levels()) {
    const Level l = parse_suite_level(*s);
    const std::uint64_t bound = static_cast<std::uint64_t>(l.grid.rows()) * l.grid.cols() * l.objects.size() * 10;
    for (int radius : {l.radius, 0}) {
      const RunReport search = run_single(l, s->task, Mode::Search, 1, radius, 0, false);
      std::vector<RunReport> reps{search, run_single(l, s->task, Mode::SearchBasic, 1, radius, 0, false)};
      for (std::uint64_t seed = 0; seed < 10; ++seed)
        reps.push_back(
            run_single(l, s->task, Mode::Random, seed, radius, random_budget_for(search.stats.total_steps), false));
      for (const auto& r : reps) {
        ++runs;
        violations += r.stats.bound_exceeded || r.stats.total_steps > bound;
      }
    }
  }
  return {violations == 0, std::to_string(runs) + " runs, " + std::to_string(violations) + " over |cells|*|S|*10"};
}

Outcome c10_exploration() {
  double lo = 1, hi = 0;
  bool ok = true;
  for (const SuiteLevel* s : all_suite_levels()) {
    const Level l = parse_suite_level(*s);
    const double f = run_single(l, s->task, Mode::Search, 1, l.radius, 0, false).exploration_fraction;
    lo = std::min(lo, f);
    hi = std::max(hi, f);
    ok &= f >= 0.05 && f <= 0.60;
  }
  return {ok, "search exploration share " + fmt(lo * 100, 1) + "% to " + fmt(hi * 100, 1) + "%"};
}

}  // namespace

int main() {
  const fs::path suite = fs::temp_directory_path() / "gamesearch_acceptance";
  fs::remove_all(suite);
  generate_suite(suite);
  const ExperimentSpec spec = parse_experiment_spec(slurp(suite / "suite.json"), suite);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"search column", c1_search_column},
      {"random column", [&] { return c2_random_column(spec); }},
      {"wrong connections", c3_wrong_connections},
      {"fig1 model", c4_fig1_model},
      {"oracle equivalence", c5_oracle_equivalence},
      {"navigation optimality", c6_navigation},
      {"reasoner correctness", c7_reasoner},
      {"batch determinism", [&] { return c8_determinism(suite); }},
      {"termination bound", c9_termination},
      {"exploration share", c10_exploration},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << "criterion " << (i + 1) << " " << (o.ok ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
