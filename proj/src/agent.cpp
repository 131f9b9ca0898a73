#include "gamesearch/agent.hpp"

#include <algorithm>
#include <sstream>

namespace gamesearch {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Search: return "search";
    case Mode::SearchBasic: return "basic";
    case Mode::Random: return "random";
  }
  return "?";
}

std::string_view to_string(Predicate p) {
  switch (p) {
    case Predicate::IsOpen: return "isOpen";
    case Predicate::IsClosed: return "isClosed";
    case Predicate::IsReached: return "isReached";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Aborted: return "Aborted";
  }
  return "?";
}

Mode parse_mode(std::string_view s) {
  if (s == "search") return Mode::Search;
  if (s == "basic") return Mode::SearchBasic;
  if (s == "random") return Mode::Random;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

Predicate parse_predicate(std::string_view s) {
  if (s == "isOpen") return Predicate::IsOpen;
  if (s == "isClosed") return Predicate::IsClosed;
  if (s == "isReached") return Predicate::IsReached;
  throw std::invalid_argument("unknown predicate '" + std::string(s) + "'");
}

void Trace::log(std::uint64_t tick, std::string_view kind, std::string_view details) {
  if (!enabled_) return;
  std::string line = "TICK " + std::to_string(tick) + " " + std::string(kind);
  if (!details.empty()) {
    line += ' ';
    line += details;
  }
  lines_.push_back(std::move(line));
}

std::string Trace::text() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l;
    out += '\n';
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out.empty() ? "-" : out;
}

}  // namespace

AgentContext::AgentContext(const Level& level, Mode mode, int radius, bool trace)
    : game_(level),
      mode_(mode),
      radius_(radius),
      nav_(level.grid.rows(), level.grid.cols()),
      model_(level.agent_start),
      trace_(trace),
      cells_(static_cast<std::uint64_t>(level.grid.rows()) * level.grid.cols()) {}

std::uint64_t AgentContext::termination_bound() const {
  const std::uint64_t s = std::max<std::uint64_t>(1, nav_.objects().size());
  return cells_ * s * 10;
}

void AgentContext::charge() {
  if (step_budget_ && tick() >= step_budget_) throw StepBudgetExhausted{};
  if (mode_ != Mode::Random && tick() >= termination_bound()) {
    stats_.bound_exceeded = true;
    throw TerminationBoundExceeded{};
  }
}

IntegrationDelta AgentContext::observe() {
  const Observation obs = game_.observe(radius_);
  last_changes_.clear();
  for (const auto& v : obs.visible_objects) {
    if (v.object.kind != ObjectKind::Door || !v.door_open) continue;
    const auto it = nav_.doors().find(v.object.id);
    if (it != nav_.doors().end() && it->second.open != *v.door_open)
      last_changes_.push_back({v.object.id, it->second.open, *v.door_open, it->second.last_seen});
  }
  const IntegrationDelta delta = nav_.integrate(obs);
  last_learned_.clear();
  if (mode_ != Mode::Random) {
    const UpdateResult upd = model_.update_state_graph(obs, current, nav_);
    fresh.insert(fresh.end(), upd.new_states.begin(), upd.new_states.end());
    for (const auto& v : obs.visible_objects) {
      if (!v.door_open) continue;
      for (auto& pair : inference_.sighting(v.object.id, *v.door_open)) last_learned_.push_back(std::move(pair));
    }
    if (mode_ == Mode::Search) {
      for (const auto& [i, o] : last_learned_) {
        model_.record_connection(i, {o});
        log("LEARN", i + " -> " + o);
      }
    }
  }
  if (!delta.new_objects.empty() || !last_changes_.empty()) {
    std::vector<std::string> flips;
    for (const auto& c : last_changes_) flips.push_back(c.id + (c.after ? "=open" : "=closed"));
    log("OBS", "at=" + to_string(agent()) + " new=" + join(delta.new_objects) + " changed=" + join(flips));
  }
  return delta;
}

IntegrationDelta AgentContext::move(Direction d) {
  charge();
  const Cell before = agent();
  game_.move(d);
  stats_.total_steps = tick();
  if (exploring) ++stats_.exploration_steps;
  log("MOVE", std::string(1, direction_letter(d)) + " " + to_string(agent()) + (agent() == before ? " blocked" : ""));
  return observe();
}

AgentContext::InteractOutcome AgentContext::interact(const std::string& button) {
  charge();
  game_.interact(button);
  stats_.total_steps = tick();
  ++stats_.interactions;
  last_interaction_tick = tick();
  last_interacted = button;
  if (mode_ != Mode::Random) inference_.interaction(button);
  observe();

  InteractOutcome out;
  for (const auto& c : last_changes_) out.changed.push_back(c.id);
  if (mode_ == Mode::Search)
    for (const auto& [i, o] : last_learned_) out.recorded.push_back(o);
  log("INTERACT", button + " changed=" + join(out.changed) + " recorded=" + join(out.recorded));
  return out;
}

bool AgentContext::holds(const std::string& object, Predicate p) const {
  switch (p) {
    case Predicate::IsOpen: {
      const auto it = nav_.doors().find(object);
      return it != nav_.doors().end() && it->second.open;
    }
    case Predicate::IsClosed: {
      const auto it = nav_.doors().find(object);
      return it != nav_.doors().end() && !it->second.open;
    }
    case Predicate::IsReached: {
      const KnownObject* o = nav_.object(object);
      return o && chebyshev(agent(), o->cell) <= kInteractionRange;
    }
  }
  return false;
}

// ---- navigation driving -------------------------------------------------

namespace {

std::optional<std::string> first_closed_door(const NavGraph& nav, const std::vector<Cell>& cells) {
  for (Cell c : cells) {
    if (const auto d = nav.door_at(c); d && !nav.doors().at(*d).open) return d;
  }
  return std::nullopt;
}

std::size_t step_cap(const NavGraph& nav) { return static_cast<std::size_t>(nav.rows()) * nav.cols() * 4; }

}  // namespace

NavigateOutcome navigate_to(AgentContext& ctx, Cell target) {
  NavGraph& nav = ctx.nav();
  if (!nav.known(target)) throw UnknownCell(target);
  std::vector<Cell> last_route;
  for (std::size_t steps = 0;; ++steps) {
    if (chebyshev(ctx.agent(), target) <= kInteractionRange) return Arrived{};
    const DoorStates states = nav.door_states();
    std::vector<Cell> goals;
    for (int dr = -kInteractionRange; dr <= kInteractionRange; ++dr)
      for (int dc = -kInteractionRange; dc <= kInteractionRange; ++dc) {
        const Cell g{target.row + dr, target.col + dc};
        if (nav.in_bounds(g) && nav_walkable(nav, g, DoorPolicy::UseStates, states)) goals.push_back(g);
      }
    const auto path = find_path_to_any(nav, ctx.agent(), goals, DoorPolicy::UseStates, states);
    if (!path || steps > step_cap(nav)) {
      Blocked b;
      b.door = first_closed_door(nav, last_route);
      if (!b.door) {
        if (const auto open_route = find_path_to_any(nav, ctx.agent(), goals, DoorPolicy::AllOpen, states))
          b.door = first_closed_door(nav, open_route->cells);
      }
      return b;
    }
    last_route = path->cells;
    ctx.move(direction_between(ctx.agent(), path->cells[1]));
  }
}

ExploreOutcome explore(AgentContext& ctx) {
  struct Guard {
    AgentContext& c;
    explicit Guard(AgentContext& ctx) : c(ctx) { c.exploring = true; }
    ~Guard() { c.exploring = false; }
  };
  NavGraph& nav = ctx.nav();
  ctx.log("EXPLORE", "begin");
  ExploreOutcome outcome = ExploreOutcome::Exhausted;
  {
    Guard guard(ctx);
    for (std::size_t steps = 0; steps <= step_cap(nav); ++steps) {
      const DoorStates states = nav.door_states();
      const std::vector<int> field = distance_field(nav, ctx.agent(), DoorPolicy::UseStates, states);
      std::optional<Cell> best;
      int best_d = 0;
      for (Cell f : nav.frontier()) {
        const int d = field[static_cast<std::size_t>(f.row) * nav.cols() + f.col];
        if (d < 0) continue;
        if (!best || d < best_d) {
          best = f;
          best_d = d;
        }
      }
      if (!best) break;
      const auto path = find_path(nav, ctx.agent(), *best, states);
      if (!path || path->steps() == 0) break;
      if (ctx.move(direction_between(ctx.agent(), path->cells[1])).anything_new()) {
        outcome = ExploreOutcome::NewSighting;
        break;
      }
    }
  }
  ctx.log("EXPLORE", outcome == ExploreOutcome::NewSighting ? "end NewSighting" : "end Exhausted");
  return outcome;
}

}  // namespace gamesearch
