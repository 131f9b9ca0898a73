#include "gamesearch/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace gamesearch {

using nlohmann::ordered_json;

LevelMetrics measure_level(const Level& level) {
  LevelMetrics m;
  m.rooms = true_rooms(level).second;
  m.buttons = static_cast<int>(level.objects_of_kind(ObjectKind::Button).size());
  m.doors = static_cast<int>(level.objects_of_kind(ObjectKind::Door).size());
  for (const auto* b : level.objects_of_kind(ObjectKind::Button))
    m.nu = std::max(m.nu, static_cast<int>(level.doors_of(b->id).size()));
  for (const auto* d : level.objects_of_kind(ObjectKind::Door))
    m.mu = std::max(m.mu, static_cast<int>(level.buttons_of(d->id).size()));
  m.init = static_cast<int>(level.init_open.size());
  return m;
}

std::string to_string(const LevelMetrics& m) {
  std::ostringstream out;
  out << "R=" << m.rooms << " B=" << m.buttons << " D=" << m.doors << " nu=" << m.nu << " mu=" << m.mu
      << " init=" << m.init;
  return out.str();
}

int unlimited_radius(const Level& level) { return level.grid.rows() + level.grid.cols(); }

std::uint64_t random_budget_for(std::uint64_t search_steps) {
  return (search_steps * 12 + 9) / 10;  // ceil(1.2 x steps)
}

double exploration_fraction(const RunStats& s) {
  return s.total_steps == 0 ? 0.0 : static_cast<double>(s.exploration_steps) / static_cast<double>(s.total_steps);
}

namespace {

AccuracyReport random_accuracy(const std::set<std::pair<std::string, std::string>>& found, const Level& level) {
  AccuracyReport a;
  a.zones_true = true_rooms(level).second;
  a.buttons_true = static_cast<int>(level.objects_of_kind(ObjectKind::Button).size());
  a.doors_true = static_cast<int>(level.objects_of_kind(ObjectKind::Door).size());
  a.connections_true = static_cast<int>(level.wiring.size());
  a.connections_found = static_cast<int>(found.size());
  for (const auto& c : found)
    if (!level.wiring.count(c)) ++a.wrong_connections;
  return a;
}

int effective_radius(const Level& level, int radius) { return radius <= 0 ? unlimited_radius(level) : radius; }

}  // namespace

RunReport run_single(const Level& level, const TestingTask& task, Mode mode, std::uint64_t seed, int radius,
                     std::uint64_t random_budget, bool keep_trace) {
  RunReport rep;
  rep.level = level.name;
  rep.mode = mode;
  rep.seed = seed;
  rep.radius = effective_radius(level, radius);
  if (mode == Mode::Random) {
    rep.budget = random_budget;
    if (rep.budget == 0) {
      AgentContext probe(level, Mode::Search, rep.radius, false);
      rep.budget = random_budget_for(online_search(task, probe).stats.total_steps);
    }
    AgentContext ctx(level, mode, rep.radius, keep_trace);
    const RandomResult r = random_agent(task, ctx, rep.budget, seed);
    rep.verdict = r.verdict;
    rep.stats = r.stats;
    rep.accuracy = random_accuracy(r.connections, level);
    std::ostringstream dump;
    for (const auto& [i, o] : r.connections) dump << "CONN " << i << " -> " << o << '\n';
    rep.model_dump = dump.str();
    rep.trace = ctx.trace().text();
  } else {
    AgentContext ctx(level, mode, rep.radius, keep_trace);
    const SearchResult r = online_search(task, ctx);
    rep.verdict = r.verdict;
    rep.stats = r.stats;
    rep.accuracy = compare_to_ground_truth(r.model, level);
    rep.model_dump = r.model.dump();
    rep.trace = ctx.trace().text();
  }
  rep.exploration_fraction = exploration_fraction(rep.stats);
  return rep;
}

// ---- experiment spec -----------------------------------------------------

ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir) {
  const auto j = nlohmann::json::parse(json_text);
  ExperimentSpec spec;
  for (const auto& l : j.at("levels")) {
    LevelTask lt;
    std::filesystem::path p = l.at("path").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    lt.path = p.string();
    lt.task.goal = l.at("goal").get<std::string>();
    lt.task.phi = parse_predicate(l.value("phi", std::string("isOpen")));
    if (l.contains("psi")) lt.task.psi = parse_predicate(l.at("psi").get<std::string>());
    spec.levels.push_back(std::move(lt));
  }
  if (j.contains("modes")) {
    spec.modes.clear();
    for (const auto& m : j.at("modes")) spec.modes.push_back(parse_mode(m.get<std::string>()));
  }
  spec.random_repeats = j.value("random_repeats", 10);
  if (spec.random_repeats < 1) throw std::invalid_argument("random_repeats must be at least 1");
  spec.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("radius") && !j.at("radius").is_null()) spec.radius = j.at("radius").get<int>();
  return spec;
}

// ---- batches -------------------------------------------------------------

namespace {

struct Job {
  std::size_t level = 0;
  Mode mode = Mode::Search;
  int repeat = 0;
};

struct JobResult {
  std::optional<std::string> error;
  RunReport report;
};

struct Prepared {
  std::vector<std::optional<Level>> levels;
  std::vector<std::optional<std::string>> errors;
};

Prepared load_all(const ExperimentSpec& spec) {
  Prepared p;
  for (const auto& lt : spec.levels) {
    try {
      p.levels.emplace_back(load_level(lt.path));
      p.errors.emplace_back();
    } catch (const std::exception& e) {
      p.levels.emplace_back();
      p.errors.emplace_back(e.what());
    }
  }
  return p;
}

std::uint64_t seed_for(const ExperimentSpec& spec, std::size_t level, int repeat) {
  return spec.seed + 1000 * level + static_cast<std::uint64_t>(repeat);
}

JobResult run_job(const ExperimentSpec& spec, const Prepared& p, const Job& job, std::uint64_t budget) {
  JobResult r;
  if (p.errors[job.level]) {
    r.error = p.errors[job.level];
    return r;
  }
  try {
    const Level& level = *p.levels[job.level];
    const int radius = spec.radius.value_or(level.radius);
    r.report = run_single(level, spec.levels[job.level].task, job.mode, seed_for(spec, job.level, job.repeat), radius,
                          budget, false);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

bool wants(const ExperimentSpec& spec, Mode m) {
  return std::find(spec.modes.begin(), spec.modes.end(), m) != spec.modes.end();
}

// Search runs first on every level since Random's budget depends on it;
// everything else is independent.
template <class ForEach>
BatchReport batch_with(const ExperimentSpec& spec, ForEach&& for_each) {
  const Prepared prepared = load_all(spec);
  const std::size_t n = spec.levels.size();

  std::vector<Job> first;
  for (std::size_t l = 0; l < n; ++l) {
    first.push_back({l, Mode::Search, 0});
    if (wants(spec, Mode::SearchBasic)) first.push_back({l, Mode::SearchBasic, 0});
  }
  std::vector<JobResult> first_results(first.size());
  for_each(first.size(), [&](std::size_t k) { first_results[k] = run_job(spec, prepared, first[k], 0); });

  std::vector<std::uint64_t> budgets(n, 0);
  for (std::size_t k = 0; k < first.size(); ++k)
    if (first[k].mode == Mode::Search && !first_results[k].error)
      budgets[first[k].level] = random_budget_for(first_results[k].report.stats.total_steps);

  std::vector<Job> randoms;
  if (wants(spec, Mode::Random))
    for (std::size_t l = 0; l < n; ++l)
      for (int r = 0; r < spec.random_repeats; ++r) randoms.push_back({l, Mode::Random, r});
  std::vector<JobResult> random_results(randoms.size());
  for_each(randoms.size(), [&](std::size_t k) {
    const Job& job = randoms[k];
    if (budgets[job.level] == 0 && !prepared.errors[job.level]) {
      random_results[k].error = "no Search run to derive the Random budget from";
      return;
    }
    random_results[k] = run_job(spec, prepared, job, budgets[job.level]);
  });

  BatchReport report;
  for (std::size_t l = 0; l < n; ++l) {
    const LevelMetrics metrics = prepared.levels[l] ? measure_level(*prepared.levels[l]) : LevelMetrics{};
    const std::string name =
        prepared.levels[l] ? prepared.levels[l]->name : std::filesystem::path(spec.levels[l].path).stem().string();
    for (Mode mode : spec.modes) {
      BatchCell cell;
      cell.level = name;
      cell.mode = mode;
      cell.metrics = metrics;
      cell.budget = budgets[l];
      std::vector<const JobResult*> runs;
      if (mode == Mode::Random) {
        for (std::size_t k = 0; k < randoms.size(); ++k)
          if (randoms[k].level == l) runs.push_back(&random_results[k]);
      } else {
        for (std::size_t k = 0; k < first.size(); ++k)
          if (first[k].level == l && first[k].mode == mode) runs.push_back(&first_results[k]);
      }
      cell.runs = static_cast<int>(runs.size());
      for (const JobResult* r : runs) {
        if (r->error) {
          cell.error = r->error;
          break;
        }
      }
      if (!cell.error && !runs.empty()) {
        double passes = 0, steps = 0, fraction = 0;
        for (const JobResult* r : runs) {
          const RunReport& rep = r->report;
          passes += rep.verdict == Verdict::Pass ? 1 : 0;
          steps += static_cast<double>(rep.stats.total_steps);
          fraction += rep.exploration_fraction;
          cell.tried_doors += rep.stats.tried_doors.size();
          if (mode == Mode::Random) {
            cell.accuracy.connections_found += rep.accuracy.connections_found;
            cell.accuracy.wrong_connections += rep.accuracy.wrong_connections;
            cell.accuracy.connections_true = rep.accuracy.connections_true;
          } else {
            cell.accuracy = rep.accuracy;
          }
        }
        const double k = static_cast<double>(runs.size());
        cell.pass = passes / k;
        cell.total_steps = steps / k;
        cell.exploration_fraction = fraction / k;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace

BatchReport run_batch(const ExperimentSpec& spec) {
  return batch_with(spec, [](std::size_t count, const auto& body) {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < n; ++k) body(static_cast<std::size_t>(k));
  });
}

BatchReport run_batch_serial(const ExperimentSpec& spec) {
  return batch_with(spec, [](std::size_t count, const auto& body) {
    for (std::size_t k = 0; k < count; ++k) body(k);
  });
}

// ---- reports ---------------------------------------------------------------

namespace {

ordered_json accuracy_json(const AccuracyReport& a) {
  ordered_json j;
  j["zones_found"] = a.zones_found;
  j["zones_true"] = a.zones_true;
  j["buttons_found"] = a.buttons_found;
  j["buttons_true"] = a.buttons_true;
  j["doors_found"] = a.doors_found;
  j["doors_true"] = a.doors_true;
  j["connections_found"] = a.connections_found;
  j["connections_true"] = a.connections_true;
  j["wrong_connections"] = a.wrong_connections;
  j["wrong_room_buttons"] = a.wrong_room_buttons;
  j["wrong_room_doors"] = a.wrong_room_doors;
  return j;
}

ordered_json metrics_json(const LevelMetrics& m) {
  return ordered_json{{"R", m.rooms}, {"B", m.buttons}, {"D", m.doors},
                      {"nu", m.nu},   {"mu", m.mu},      {"init", m.init}};
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

}  // namespace

std::string report_json(const RunReport& r) {
  ordered_json j;
  j["level"] = r.level;
  j["mode"] = std::string(to_string(r.mode));
  j["seed"] = r.seed;
  j["radius"] = r.radius;
  if (r.mode == Mode::Random) j["budget"] = r.budget;
  j["verdict"] = std::string(to_string(r.verdict));
  j["total_steps"] = r.stats.total_steps;
  j["exploration_steps"] = r.stats.exploration_steps;
  j["exploration_fraction"] = r.exploration_fraction;
  j["tried_doors"] = r.stats.tried_doors;
  j["interactions"] = r.stats.interactions;
  j["bound_exceeded"] = r.stats.bound_exceeded;
  j["accuracy"] = accuracy_json(r.accuracy);
  return j.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
  const AccuracyReport& a = r.accuracy;
  std::ostringstream out;
  out << std::left;
  const auto row = [&](const std::string& k, const std::string& v) { out << std::setw(22) << k << v << '\n'; };
  row("level", r.level);
  row("mode", std::string(to_string(r.mode)));
  row("seed", std::to_string(r.seed));
  row("radius", std::to_string(r.radius));
  if (r.mode == Mode::Random) row("budget", std::to_string(r.budget));
  row("verdict", std::string(to_string(r.verdict)));
  row("total_steps", std::to_string(r.stats.total_steps));
  row("exploration_steps", std::to_string(r.stats.exploration_steps));
  row("exploration_fraction", fixed(r.exploration_fraction, 3));
  row("tried_doors", std::to_string(r.stats.tried_doors.size()));
  row("interactions", std::to_string(r.stats.interactions));
  row("zones", std::to_string(a.zones_found) + "/" + std::to_string(a.zones_true));
  row("buttons", std::to_string(a.buttons_found) + "/" + std::to_string(a.buttons_true));
  row("doors", std::to_string(a.doors_found) + "/" + std::to_string(a.doors_true));
  row("connections", std::to_string(a.connections_found) + "/" + std::to_string(a.connections_true));
  row("wrong_connections", std::to_string(a.wrong_connections));
  row("wrong_room_buttons", std::to_string(a.wrong_room_buttons));
  row("wrong_room_doors", std::to_string(a.wrong_room_doors));
  return out.str();
}

std::string report_json(const BatchReport& r) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : r.cells) {
    ordered_json j;
    j["level"] = c.level;
    j["mode"] = std::string(to_string(c.mode));
    if (c.error) {
      j["error"] = *c.error;
      cells.push_back(std::move(j));
      continue;
    }
    j["metrics"] = metrics_json(c.metrics);
    j["runs"] = c.runs;
    j["pass"] = c.pass;
    j["total_steps"] = c.total_steps;
    j["exploration_fraction"] = c.exploration_fraction;
    j["tried_doors"] = c.tried_doors;
    if (c.mode == Mode::Random) j["budget"] = c.budget;
    j["accuracy"] = accuracy_json(c.accuracy);
    cells.push_back(std::move(j));
  }
  ordered_json root;
  root["cells"] = std::move(cells);
  return root.dump(2) + "\n";
}

std::string report_text(const BatchReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "level" << std::setw(8) << "mode" << std::right << std::setw(3) << "R"
      << std::setw(3) << "B" << std::setw(3) << "D" << std::setw(4) << "nu" << std::setw(4) << "mu" << std::setw(6)
      << "init" << std::setw(7) << "pass" << std::setw(10) << "steps" << std::setw(8) << "expl" << std::setw(7)
      << "tried" << std::setw(8) << "conn" << std::setw(5) << "Wc" << std::setw(5) << "Wb" << std::setw(5) << "Wd"
      << '\n';
  for (const auto& c : r.cells) {
    out << std::left << std::setw(12) << c.level << std::setw(8) << to_string(c.mode);
    if (c.error) {
      out << "error: " << *c.error << '\n';
      continue;
    }
    const auto& m = c.metrics;
    const auto& a = c.accuracy;
    std::string conn;
    if (c.mode == Mode::Random)
      conn = fixed(static_cast<double>(a.connections_found) / c.runs, 1) + "/" + std::to_string(a.connections_true);
    else
      conn = std::to_string(a.connections_found) + "/" + std::to_string(a.connections_true);
    out << std::right << std::setw(3) << m.rooms << std::setw(3) << m.buttons << std::setw(3) << m.doors
        << std::setw(4) << m.nu << std::setw(4) << m.mu << std::setw(6) << m.init << std::setw(7) << fixed(c.pass, 1)
        << std::setw(10) << fixed(c.total_steps, 1) << std::setw(8) << fixed(c.exploration_fraction, 3)
        << std::setw(7) << c.tried_doors << std::setw(8) << conn << std::setw(5) << a.wrong_connections
        << std::setw(5) << a.wrong_room_buttons << std::setw(5) << a.wrong_room_doors << '\n';
  }
  return out.str();
}

}  // namespace gamesearch
