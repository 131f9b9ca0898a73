#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <tuple>

#include "gamesearch/agent.hpp"

namespace gamesearch {

namespace {

std::size_t cell_index(const NavGraph& nav, Cell c) { return static_cast<std::size_t>(c.row) * nav.cols() + c.col; }

bool in_field(const NavGraph& nav, const std::vector<int>& field, Cell c) {
  return nav.in_bounds(c) && field[cell_index(nav, c)] >= 0;
}

// Some cell within interaction range of `c` is reachable.
bool reachable_near(const NavGraph& nav, const std::vector<int>& field, Cell c) {
  for (int dr = -kInteractionRange; dr <= kInteractionRange; ++dr)
    for (int dc = -kInteractionRange; dc <= kInteractionRange; ++dc)
      if (in_field(nav, field, {c.row + dr, c.col + dc})) return true;
  return false;
}

bool frontier_reachable(const NavGraph& nav, const std::vector<int>& field) {
  for (Cell f : nav.frontier())
    if (in_field(nav, field, f)) return true;
  return false;
}

// Closed doors touching the region the agent can currently walk.
std::vector<std::string> boundary_doors(const NavGraph& nav, const std::vector<int>& field) {
  std::vector<std::string> out;
  for (const auto& [id, b] : nav.doors()) {
    if (b.open) continue;
    for (Direction d : kAllDirections) {
      if (in_field(nav, field, step(b.cell, d))) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

std::size_t knowledge_signature(const AgentContext& ctx) {
  std::size_t h = ctx.nav().known_count();
  h = h * 1000003u + ctx.model().states().size();
  h = h * 1000003u + ctx.model().connections().size();
  return h;
}

// One round of looking for new terrain: explore, and when every frontier is
// behind closed doors try to open one. The same stuck situation is not
// retried until something new has been learned.
bool explore_step(AgentContext& ctx) {
  if (explore(ctx) == ExploreOutcome::NewSighting) return true;
  if (ctx.nav().frontier().empty() || ctx.mode() == Mode::Random) return false;
  const std::size_t sig = knowledge_signature(ctx);
  if (ctx.stuck_signature == sig) return false;
  ctx.stuck_signature = sig;
  return unstuck(ctx, FrontierDestination{}) == UnstuckOutcome::Recovered;
}

Cell object_cell(const AgentContext& ctx, const std::string& id) {
  if (const KnownObject* o = ctx.nav().object(id)) return o->cell;
  throw UnknownObject(id);
}

bool psi_holds(const AgentContext& ctx, const TestingTask& task) {
  if (!task.psi) return true;
  const GameObject* o = ctx.level().find(task.goal);
  if (!o) return false;
  switch (*task.psi) {
    case Predicate::IsOpen:
    case Predicate::IsClosed: {
      const auto it = ctx.config().door_open.find(task.goal);
      if (it == ctx.config().door_open.end()) return false;
      return it->second == (*task.psi == Predicate::IsOpen);
    }
    case Predicate::IsReached: return chebyshev(ctx.agent(), o->cell) <= kInteractionRange;
  }
  return false;
}

UnstuckOutcome basic_unstuck(AgentContext& ctx) {
  if (!ctx.last_interacted) return UnstuckOutcome::Exhausted;
  if (ctx.basic_retoggle_tick && *ctx.basic_retoggle_tick == ctx.last_interaction_tick)
    return UnstuckOutcome::Exhausted;
  const std::string i = *ctx.last_interacted;
  NavGraph& nav = ctx.nav();
  const auto before = boundary_doors(nav, distance_field(nav, ctx.agent(), DoorPolicy::UseStates, nav.door_states()));
  ctx.log("UNSTUCK", "retoggle " + i);
  if (!std::holds_alternative<Arrived>(navigate_to(ctx, object_cell(ctx, i)))) return UnstuckOutcome::Exhausted;
  ctx.interact(i);
  ctx.basic_retoggle_tick = ctx.last_interaction_tick;
  for (const auto& d : before)
    if (nav.doors().at(d).open) return UnstuckOutcome::Recovered;
  return UnstuckOutcome::Exhausted;
}

}  // namespace

UnstuckOutcome unstuck(AgentContext& ctx, const Destination& destination) {
  if (ctx.mode() == Mode::Random) return UnstuckOutcome::Exhausted;
  if (ctx.mode() == Mode::SearchBasic) return basic_unstuck(ctx);

  NavGraph& nav = ctx.nav();
  Model& model = ctx.model();
  const bool to_frontier = std::holds_alternative<FrontierDestination>(destination);
  std::set<std::string> tried;
  ctx.log("UNSTUCK", to_frontier ? "begin frontier" : "begin " + std::get<std::string>(destination));

  constexpr int kUnknownSide = 1000;
  constexpr int kUnreachable = 2000;

  for (;;) {
    const DoorStates states = nav.door_states();
    const std::vector<int> field = distance_field(nav, ctx.agent(), DoorPolicy::UseStates, states);
    const std::vector<std::string> boundary = boundary_doors(nav, field);
    if (boundary.empty()) break;

    // A door believed closed may have been flipped since it was last seen.
    std::optional<std::string> stale;
    for (const auto& d : boundary)
      if (nav.doors().at(d).last_seen < ctx.last_interaction_tick) stale = d;
    if (stale) {
      ctx.log("UNSTUCK", "look " + *stale);
      navigate_to(ctx, nav.doors().at(*stale).cell);
      // Looking refreshes the belief; a door found open ends the episode.
      if (nav.doors().at(*stale).last_seen < ctx.last_interaction_tick) break;
      if (nav.doors().at(*stale).open) {
        ctx.log("UNSTUCK", "recovered");
        return UnstuckOutcome::Recovered;
      }
      continue;
    }

    std::vector<std::string> dest_zones;
    if (!to_frontier) dest_zones = model.zones_of(std::get<std::string>(destination));

    // Candidate ranking: how close the far side of the door is to the
    // destination, then known enablers before guesses, then distance.
    using Candidate = std::tuple<int, int, double, std::string, std::string>;
    std::vector<Candidate> candidates;
    for (const auto& d : boundary) {
      int rank = kUnreachable;
      if (to_frontier) {
        DoorStates opened = states;
        opened[d] = true;
        if (frontier_reachable(nav, distance_field(nav, ctx.agent(), DoorPolicy::UseStates, opened))) rank = 0;
      } else {
        std::vector<std::string> far;
        for (const auto& z : model.zones_of(d)) {
          const auto& anchors = model.zone_anchors(z);
          if (std::none_of(anchors.begin(), anchors.end(), [&](Cell a) { return in_field(nav, field, a); }))
            far.push_back(z);
        }
        if (far.empty()) {
          rank = kUnknownSide;
        } else {
          for (const auto& f : far)
            for (const auto& g : dest_zones)
              if (const auto k = model.room_distance(f, g)) rank = std::min(rank, *k);
        }
      }
      bool any_enabler = false;
      for (const auto& i : model.connected_enablers(d, ctx.agent())) {
        if (tried.count(i) || !reachable_near(nav, field, object_cell(ctx, i))) continue;
        any_enabler = true;
        candidates.emplace_back(rank, 0, euclidean(ctx.agent(), object_cell(ctx, i)), i, d);
      }
      if (any_enabler) continue;
      for (const auto& [id, st] : model.states()) {
        if (st.tag != StateTag::Interactable || tried.count(id) || !reachable_near(nav, field, st.cell)) continue;
        candidates.emplace_back(rank, 1, euclidean(ctx.agent(), st.cell), id, d);
      }
    }
    if (candidates.empty()) break;
    const auto [rank, cls, dist, i, d] = *std::min_element(candidates.begin(), candidates.end());
    tried.insert(i);
    ctx.log("UNSTUCK", "try " + d + " via " + i + " rank=" + std::to_string(rank));

    if (!std::holds_alternative<Arrived>(navigate_to(ctx, object_cell(ctx, i)))) continue;
    ctx.interact(i);
    // The door may be out of sight from the interactable; walk back to look.
    if (nav.doors().at(d).last_seen < ctx.last_interaction_tick) navigate_to(ctx, nav.doors().at(d).cell);

    bool recovered = false;
    if (to_frontier) {
      recovered = frontier_reachable(
          nav, distance_field(nav, ctx.agent(), DoorPolicy::UseStates, nav.door_states()));
    } else {
      recovered = std::any_of(boundary.begin(), boundary.end(),
                              [&](const std::string& b) { return nav.doors().at(b).open; });
    }
    if (recovered) {
      ctx.log("UNSTUCK", "recovered");
      return UnstuckOutcome::Recovered;
    }
  }
  ctx.log("UNSTUCK", "exhausted");
  return UnstuckOutcome::Exhausted;
}

ReachOutcome reach(AgentContext& ctx, const std::string& target) {
  const Cell cell = object_cell(ctx, target);
  const std::size_t max_attempts = std::max<std::size_t>(1, ctx.nav().doors().size());
  for (std::size_t attempt = 0;; ++attempt) {
    if (std::holds_alternative<Arrived>(navigate_to(ctx, cell))) {
      ctx.current = target;
      return ReachOutcome::Arrived;
    }
    if (ctx.mode() == Mode::Random || attempt >= max_attempts) return ReachOutcome::Failed;
    if (unstuck(ctx, target) == UnstuckOutcome::Exhausted) return ReachOutcome::Failed;
  }
}

std::string select_node(AgentContext& ctx, const TestingTask& task) {
  const Model& model = ctx.model();
  if (model.has_state(task.goal) && !ctx.marks_global.count(task.goal)) return task.goal;
  const std::set<std::string> fresh(ctx.fresh.begin(), ctx.fresh.end());
  using Key = std::tuple<int, int, double, double, std::string>;
  std::optional<Key> best;
  for (const auto& [id, st] : model.states()) {
    if (ctx.marks_global.count(id)) continue;
    const Key key{fresh.count(id) ? 0 : 1, st.tag == StateTag::Blocker ? 0 : 1,
                  task.approx_goal ? euclidean(st.cell, *task.approx_goal) : 0.0, euclidean(st.cell, ctx.agent()),
                  id};
    if (!best || key < *best) best = key;
  }
  if (!best) throw NoCandidate();
  return std::get<4>(*best);
}

GoalOutcome dynamic_goal(AgentContext& ctx, const std::string& target, Predicate eta) {
  ctx.log("GOALPUSH", target + " " + std::string(to_string(eta)));
  const KnownObject* target_obj = ctx.nav().object(target);
  if (target_obj && target_obj->kind == ObjectKind::Door) ctx.stats().tried_doors.push_back(target);
  auto& marks = ctx.marks_per_target[target];
  const Model& model = ctx.model();

  GoalOutcome outcome = GoalOutcome::Aborted;
  // Candidates that could not be reached, with the knowledge they were tried
  // under; they become eligible again once something new is known.
  std::map<std::string, std::size_t> unreached;
  for (;;) {
    if (ctx.holds(target, eta)) {
      outcome = GoalOutcome::Solved;
      break;
    }
    const std::size_t sig = knowledge_signature(ctx);
    for (auto it = unreached.begin(); it != unreached.end();) {
      if (it->second != sig) {
        marks.erase(it->first);
        it = unreached.erase(it);
      } else {
        ++it;
      }
    }
    std::vector<std::string> delta;
    if (ctx.mode() == Mode::Search) {
      for (const auto& i : model.connected_enablers(target, ctx.agent()))
        if (!marks.count(i)) delta.push_back(i);
    }
    if (delta.empty()) {
      for (const auto& t : model.transitions()) {
        if (t.dst != target || t.src == target || marks.count(t.src)) continue;
        const ModelState* s = model.state(t.src);
        if (s && s->tag == StateTag::Interactable &&
            std::find(delta.begin(), delta.end(), t.src) == delta.end())
          delta.push_back(t.src);
      }
    }
    if (delta.empty()) {
      for (const auto& [id, st] : model.states())
        if (st.tag == StateTag::Interactable && !marks.count(id)) delta.push_back(id);
    }
    if (delta.empty()) {
      if (explore_step(ctx)) continue;
      break;
    }

    const auto nearest = std::min_element(delta.begin(), delta.end(), [&](const auto& a, const auto& b) {
      const double da = euclidean(ctx.agent(), model.state(a)->cell);
      const double db = euclidean(ctx.agent(), model.state(b)->cell);
      return da != db ? da < db : a < b;
    });
    const std::string i = *nearest;
    marks.insert(i);
    ctx.log("MARK", i + " for " + target);
    if (reach(ctx, i) != ReachOutcome::Arrived) {
      unreached[i] = knowledge_signature(ctx);
      continue;
    }
    ctx.interact(i);
    reach(ctx, target);
  }
  ctx.marks_per_target.erase(target);
  std::string recorded;
  for (const auto& [i, o] : model.connections())
    if (o == target) recorded += (recorded.empty() ? "" : ",") + i;
  ctx.log("GOALPOP", target + (outcome == GoalOutcome::Solved ? " Solved" : " Aborted") +
                         " connections=" + (recorded.empty() ? "-" : recorded));
  return outcome;
}

SearchResult online_search(const TestingTask& task, AgentContext& ctx) {
  SearchResult result;
  Verdict verdict = Verdict::Aborted;
  try {
    ctx.observe();
    for (;;) {
      if (ctx.holds(task.goal, task.phi)) {
        verdict = psi_holds(ctx, task) ? Verdict::Pass : Verdict::Fail;
        break;
      }
      const bool goal_pending = ctx.model().has_state(task.goal) && !ctx.marks_global.count(task.goal);
      if (!goal_pending && ctx.fresh.empty() && explore_step(ctx)) continue;

      std::string o;
      try {
        o = select_node(ctx, task);
      } catch (const NoCandidate&) {
        break;
      }
      ctx.fresh.clear();
      ctx.marks_global.insert(o);
      ctx.log("MARK", o);
      reach(ctx, o);
      if (o == task.goal) {
        if (!ctx.holds(task.goal, task.phi) && dynamic_goal(ctx, task.goal, task.phi) == GoalOutcome::Aborted) break;
        continue;
      }
      if (ctx.model().state(o)->tag == StateTag::Blocker && ctx.holds(o, Predicate::IsClosed))
        dynamic_goal(ctx, o, Predicate::IsOpen);
    }
  } catch (const TerminationBoundExceeded&) {
    ctx.log("ABORT", "termination bound exceeded");
    verdict = Verdict::Aborted;
  }
  ctx.stats().verdict = verdict;
  ctx.stats().total_steps = ctx.tick();
  result.verdict = verdict;
  result.model = ctx.model();
  result.stats = ctx.stats();
  return result;
}

RandomResult random_agent(const TestingTask& task, AgentContext& ctx, std::uint64_t budget_steps,
                          std::uint64_t seed) {
  RandomResult result;
  std::mt19937_64 rng(seed);
  ctx.set_step_budget(budget_steps);
  Verdict verdict = Verdict::Fail;
  const auto done = [&] {
    if (!ctx.holds(task.goal, task.phi)) return false;
    verdict = psi_holds(ctx, task) ? Verdict::Pass : Verdict::Fail;
    return true;
  };
  try {
    ctx.observe();
    std::size_t stalled = 0;
    while (!done()) {
      const std::uint64_t tick_before = ctx.tick();
      const ExploreOutcome explored = explore(ctx);
      if (done()) break;
      std::vector<std::string> buttons;
      std::vector<std::string> doors;
      for (const auto& [id, o] : ctx.nav().objects()) (o.kind == ObjectKind::Button ? buttons : doors).push_back(id);
      if (buttons.empty() || doors.empty()) {
        if (explored == ExploreOutcome::Exhausted) break;
        continue;
      }
      const std::string b = buttons[std::uniform_int_distribution<std::size_t>(0, buttons.size() - 1)(rng)];
      const std::string d = doors[std::uniform_int_distribution<std::size_t>(0, doors.size() - 1)(rng)];
      ctx.log("PICK", b + " " + d);
      if (reach(ctx, b) == ReachOutcome::Arrived) {
        const bool before = ctx.nav().doors().at(d).open;
        ctx.interact(b);
        if (done()) break;
        if (reach(ctx, d) == ReachOutcome::Arrived && ctx.nav().doors().at(d).open != before)
          ctx.random_connections.insert({b, d});
      }
      // Every pair may be unreachable without costing a tick.
      stalled = ctx.tick() == tick_before ? stalled + 1 : 0;
      if (stalled > 64 * (buttons.size() * doors.size())) break;
    }
  } catch (const StepBudgetExhausted&) {
    ctx.log("ABORT", "step budget exhausted");
    verdict = Verdict::Fail;
  }
  ctx.stats().verdict = verdict;
  ctx.stats().total_steps = ctx.tick();
  result.verdict = verdict;
  result.connections = ctx.random_connections;
  result.stats = ctx.stats();
  return result;
}

}  // namespace gamesearch
