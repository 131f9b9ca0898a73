#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gamesearch/model.hpp"
#include "gamesearch/nav.hpp"
#include "gamesearch/toggle_inference.hpp"
#include "gamesearch/world.hpp"

namespace gamesearch {

enum class Mode { Search, SearchBasic, Random };
enum class Predicate { IsOpen, IsClosed, IsReached };
enum class Verdict { Pass, Fail, Aborted };

std::string_view to_string(Mode m);
std::string_view to_string(Predicate p);
std::string_view to_string(Verdict v);
Mode parse_mode(std::string_view s);            // search | basic | random
Predicate parse_predicate(std::string_view s);  // isOpen | isClosed | isReached

// phi => psi over one goal object. psi defaults to true.
struct TestingTask {
  std::string goal;
  Predicate phi = Predicate::IsOpen;
  std::optional<Predicate> psi;
  std::optional<Cell> approx_goal;
};

struct RunStats {
  std::uint64_t total_steps = 0;
  std::uint64_t exploration_steps = 0;
  std::vector<std::string> tried_doors;
  std::uint64_t interactions = 0;
  Verdict verdict = Verdict::Aborted;
  bool bound_exceeded = false;
};

// Machine-readable event log: "TICK <n> <KIND> <details>".
class Trace {
 public:
  explicit Trace(bool enabled = true) : enabled_(enabled) {}
  void log(std::uint64_t tick, std::string_view kind, std::string_view details);
  const std::vector<std::string>& lines() const noexcept { return lines_; }
  std::string text() const;

 private:
  bool enabled_;
  std::vector<std::string> lines_;
};

// Thrown when a run hits its tick budget (Random) or the termination bound.
struct StepBudgetExhausted {};
struct TerminationBoundExceeded {};

// Everything one agent owns during one run.
class AgentContext {
 public:
  AgentContext(const Level& level, Mode mode, int radius, bool trace = true);

  const Level& level() const { return game_.level(); }
  const GameConfiguration& config() const { return game_.config(); }
  Cell agent() const { return game_.config().agent_cell; }
  std::uint64_t tick() const { return game_.config().tick; }
  Mode mode() const noexcept { return mode_; }
  int radius() const noexcept { return radius_; }

  NavGraph& nav() { return nav_; }
  const NavGraph& nav() const { return nav_; }
  Model& model() { return model_; }
  const Model& model() const { return model_; }
  RunStats& stats() { return stats_; }
  const RunStats& stats() const { return stats_; }
  Trace& trace() { return trace_; }
  const Trace& trace() const { return trace_; }

  // Zero disables the budget.
  void set_step_budget(std::uint64_t ticks) { step_budget_ = ticks; }
  // Ticks allowed given the current knowledge: cells x |S| x 10.
  std::uint64_t termination_bound() const;

  IntegrationDelta observe();
  IntegrationDelta move(Direction d);
  // Door flips noticed by the most recent observation.
  const std::vector<BlockerChange>& last_changes() const noexcept { return last_changes_; }
  const ToggleInference& inference() const noexcept { return inference_; }

  struct InteractOutcome {
    std::vector<std::string> changed;   // blockers seen to flip right after the interaction
    std::vector<std::string> recorded;  // blockers whose connection this observation proved
  };
  InteractOutcome interact(const std::string& button);

  void log(std::string_view kind, std::string_view details) { trace_.log(tick(), kind, details); }

  // Belief about the goal predicate, from what has been observed.
  bool holds(const std::string& object, Predicate p) const;

  std::set<std::string> marks_global;
  std::map<std::string, std::set<std::string>> marks_per_target;
  std::vector<std::string> fresh;  // states added since the last selection
  std::optional<std::string> current;
  std::optional<std::string> last_interacted;
  std::uint64_t last_interaction_tick = 0;
  std::optional<std::uint64_t> basic_retoggle_tick;
  std::optional<std::size_t> stuck_signature;
  std::set<std::pair<std::string, std::string>> random_connections;
  bool exploring = false;

 private:
  void charge();

  Game game_;
  Mode mode_;
  int radius_;
  NavGraph nav_;
  Model model_;
  RunStats stats_;
  Trace trace_;
  std::uint64_t step_budget_ = 0;
  std::uint64_t cells_ = 0;
  std::vector<BlockerChange> last_changes_;
  ToggleInference inference_;
  std::vector<std::pair<std::string, std::string>> last_learned_;
};

// ---- navigation driving -------------------------------------------------

struct Arrived {};
struct Blocked {
  std::optional<std::string> door;  // a closed door on the last believed route
};
using NavigateOutcome = std::variant<Arrived, Blocked>;

// Walks toward `target` one step at a time, replanning after every
// observation, until the agent is within interaction range. Throws UnknownCell.
NavigateOutcome navigate_to(AgentContext& ctx, Cell target);

enum class ExploreOutcome { NewSighting, Exhausted };

// Heads for the nearest reachable frontier cell until an observation reveals
// any new cell or object.
ExploreOutcome explore(AgentContext& ctx);

// ---- search --------------------------------------------------------------

class NoCandidate : public std::runtime_error {
 public:
  NoCandidate() : std::runtime_error("no unmarked state to select") {}
};

enum class GoalOutcome { Solved, Aborted };
enum class ReachOutcome { Arrived, Failed };
enum class UnstuckOutcome { Recovered, Exhausted };

// Where a stuck agent wants to go: an object, or any unexplored terrain.
struct FrontierDestination {};
using Destination = std::variant<std::string, FrontierDestination>;

struct SearchResult {
  Verdict verdict = Verdict::Aborted;
  Model model;
  RunStats stats;
};

SearchResult online_search(const TestingTask& task, AgentContext& ctx);

std::string select_node(AgentContext& ctx, const TestingTask& task);

GoalOutcome dynamic_goal(AgentContext& ctx, const std::string& target, Predicate eta);

ReachOutcome reach(AgentContext& ctx, const std::string& target);

UnstuckOutcome unstuck(AgentContext& ctx, const Destination& destination);

struct RandomResult {
  Verdict verdict = Verdict::Fail;
  std::set<std::pair<std::string, std::string>> connections;
  RunStats stats;
};

RandomResult random_agent(const TestingTask& task, AgentContext& ctx, std::uint64_t budget_steps,
                          std::uint64_t seed);

}  // namespace gamesearch
