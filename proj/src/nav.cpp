#include "gamesearch/nav.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

namespace gamesearch {

NavGraph::NavGraph(int rows, int cols)
    : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, std::int8_t{-1}) {}

IntegrationDelta NavGraph::integrate(const Observation& obs) {
  IntegrationDelta delta;
  for (const auto& [cell, kind] : obs.visible_cells) {
    if (!in_bounds(cell)) continue;
    auto& slot = cells_[index(cell)];
    if (slot < 0) {
      slot = static_cast<std::int8_t>(kind);
      ++known_count_;
      ++delta.new_cells;
    }
  }
  for (const auto& v : obs.visible_objects) {
    const auto& o = v.object;
    if (objects_.emplace(o.id, KnownObject{o.id, o.kind, o.cell}).second) delta.new_objects.push_back(o.id);
    if (o.kind == ObjectKind::Door) {
      door_cells_[o.cell] = o.id;
      auto& belief = doors_[o.id];
      belief.id = o.id;
      belief.cell = o.cell;
      belief.open = v.door_open.value_or(false);
      belief.last_seen = obs.tick;
    }
  }
  return delta;
}

bool NavGraph::known(Cell c) const { return in_bounds(c) && cells_[index(c)] >= 0; }

std::optional<CellKind> NavGraph::kind_at(Cell c) const {
  if (!known(c)) return std::nullopt;
  return static_cast<CellKind>(cells_[index(c)]);
}

std::vector<std::pair<Cell, CellKind>> NavGraph::known_cells() const {
  std::vector<std::pair<Cell, CellKind>> out;
  out.reserve(known_count_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (const auto k = kind_at({r, c})) out.emplace_back(Cell{r, c}, *k);
  return out;
}

const KnownObject* NavGraph::object(const std::string& id) const {
  const auto it = objects_.find(id);
  return it == objects_.end() ? nullptr : &it->second;
}

std::optional<std::string> NavGraph::door_at(Cell c) const {
  const auto it = door_cells_.find(c);
  if (it == door_cells_.end()) return std::nullopt;
  return it->second;
}

DoorStates NavGraph::door_states() const {
  DoorStates out;
  for (const auto& [id, b] : doors_) out[id] = b.open;
  return out;
}

std::vector<Cell> NavGraph::frontier() const {
  std::vector<Cell> out;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const Cell cell{r, c};
      if (kind_at(cell) != CellKind::Floor) continue;
      for (Direction d : kAllDirections) {
        const Cell n = step(cell, d);
        if (in_bounds(n) && !known(n)) {
          out.push_back(cell);
          break;
        }
      }
    }
  }
  return out;
}

std::string NavGraph::render(std::optional<Cell> agent) const {
  std::string out;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const Cell cell{r, c};
      char ch = '?';
      if (agent && *agent == cell) {
        ch = '@';
      } else if (const auto k = kind_at(cell)) {
        ch = *k == CellKind::Wall ? '#' : '.';
        if (const auto d = door_at(cell)) {
          ch = doors_.at(*d).open ? 'd' : 'D';
        } else {
          for (const auto& [id, o] : objects_)
            if (o.cell == cell && o.kind == ObjectKind::Button) ch = 'B';
        }
      }
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  return out;
}

bool nav_walkable(const NavGraph& nav, Cell c, DoorPolicy policy, const DoorStates& states) {
  if (nav.kind_at(c) != CellKind::Floor) return false;
  const auto door = nav.door_at(c);
  if (!door) return true;
  switch (policy) {
    case DoorPolicy::AllClosed: return false;
    case DoorPolicy::AllOpen: return true;
    case DoorPolicy::UseStates: {
      const auto it = states.find(*door);
      return it != states.end() && it->second;
    }
  }
  return false;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

// Reverse A*: costs are distances *to the goal set*, the heuristic points at
// `from`. The search keeps expanding every node whose f does not exceed the
// optimum, so all nodes lying on some optimal path end up closed with exact
// costs; the forward walk then picks the row-major smallest successor.
std::optional<Path> shortest_lexicographic(const NavGraph& nav, Cell from, std::span<const Cell> goals,
                                           DoorPolicy policy, const DoorStates& states,
                                           const ExpansionAudit& audit) {
  const std::size_t n = static_cast<std::size_t>(nav.rows()) * nav.cols();
  const auto idx = [&](Cell c) { return static_cast<std::size_t>(c.row) * nav.cols() + c.col; };
  const auto passable = [&](Cell c) { return c == from || nav_walkable(nav, c, policy, states); };

  std::vector<int> g(n, kInf);
  std::vector<char> closed(n, 0);
  using Entry = std::tuple<int, int, int, int>;  // f, g, row, col
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  for (Cell goal : goals) {
    if (!nav.in_bounds(goal) || !passable(goal)) continue;
    if (g[idx(goal)] == 0) continue;
    g[idx(goal)] = 0;
    open.emplace(manhattan(goal, from), 0, goal.row, goal.col);
  }

  int best = kInf;
  while (!open.empty()) {
    const auto [f, cost, r, c] = open.top();
    if (f > best) break;
    open.pop();
    const Cell cell{r, c};
    const std::size_t ci = idx(cell);
    if (closed[ci] || cost != g[ci]) continue;
    closed[ci] = 1;
    if (audit) audit(cell);
    if (cell == from) {
      best = cost;
      continue;
    }
    for (Direction d : kAllDirections) {
      const Cell nb = step(cell, d);
      if (!nav.in_bounds(nb) || !passable(nb)) continue;
      const std::size_t ni = idx(nb);
      if (closed[ni] || cost + 1 >= g[ni]) continue;
      g[ni] = cost + 1;
      open.emplace(cost + 1 + manhattan(nb, from), cost + 1, nb.row, nb.col);
    }
  }
  if (best == kInf) return std::nullopt;

  Path path;
  path.cells.push_back(from);
  Cell cur = from;
  int remaining = best;
  while (remaining > 0) {
    std::optional<Cell> next;
    for (Direction d : kAllDirections) {
      const Cell nb = step(cur, d);
      if (!nav.in_bounds(nb)) continue;
      const std::size_t ni = idx(nb);
      if (!closed[ni] || g[ni] != remaining - 1) continue;
      if (!next || nb < *next) next = nb;
    }
    cur = *next;  // exists: cur lies on an optimal path
    path.cells.push_back(cur);
    --remaining;
  }
  return path;
}

}  // namespace

std::optional<Path> find_path(const NavGraph& nav, Cell from, Cell to, const DoorStates& door_states,
                              const ExpansionAudit& audit) {
  if (!nav.known(from)) throw UnknownCell(from);
  if (!nav.known(to)) throw UnknownCell(to);
  if (from == to) return Path{{from}};
  const Cell goals[] = {to};
  return shortest_lexicographic(nav, from, goals, DoorPolicy::UseStates, door_states, audit);
}

std::optional<Path> find_path_to_any(const NavGraph& nav, Cell from, std::span<const Cell> goals,
                                     DoorPolicy policy, const DoorStates& door_states,
                                     const ExpansionAudit& audit) {
  if (!nav.known(from)) throw UnknownCell(from);
  if (std::find(goals.begin(), goals.end(), from) != goals.end()) return Path{{from}};
  return shortest_lexicographic(nav, from, goals, policy, door_states, audit);
}

std::optional<Path> path_with_blockers_as_walls(const NavGraph& nav, Cell a, Cell b) {
  if (!nav.known(a)) throw UnknownCell(a);
  if (!nav.known(b)) throw UnknownCell(b);
  if (a == b) return Path{{a}};
  if (nav.door_at(a) || nav.door_at(b)) return std::nullopt;
  const Cell goals[] = {b};
  return shortest_lexicographic(nav, a, goals, DoorPolicy::AllClosed, {}, {});
}

std::vector<int> distance_field(const NavGraph& nav, Cell from, DoorPolicy policy,
                                const DoorStates& door_states) {
  const std::size_t n = static_cast<std::size_t>(nav.rows()) * nav.cols();
  std::vector<int> dist(n, -1);
  if (!nav.known(from)) return dist;
  const auto idx = [&](Cell c) { return static_cast<std::size_t>(c.row) * nav.cols() + c.col; };
  std::deque<Cell> queue{from};
  dist[idx(from)] = 0;
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (Direction d : kAllDirections) {
      const Cell nb = step(cur, d);
      if (!nav.in_bounds(nb) || dist[idx(nb)] >= 0) continue;
      if (!nav_walkable(nav, nb, policy, door_states)) continue;
      dist[idx(nb)] = dist[idx(cur)] + 1;
      queue.push_back(nb);
    }
  }
  return dist;
}

}  // namespace gamesearch
