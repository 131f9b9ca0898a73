#include <deque>
#include <limits>

#include "gamesearch/harness.hpp"

namespace gamesearch {

OracleResult oracle_solvable(const Level& level, const TestingTask& task) {
  const GameObject* goal = level.find(task.goal);
  if (!goal) throw UnknownObject(task.goal);
  const auto doors = level.objects_of_kind(ObjectKind::Door);
  if (doors.size() > kOracleMaxDoors)
    throw TooLarge("oracle supports at most " + std::to_string(kOracleMaxDoors) + " doors, level has " +
                   std::to_string(doors.size()));

  const int rows = level.grid.rows();
  const int cols = level.grid.cols();
  const std::size_t cells = static_cast<std::size_t>(rows) * cols;
  const std::size_t masks = std::size_t{1} << doors.size();

  std::vector<int> door_bit(cells, -1);
  int goal_bit = -1;
  std::uint32_t init_mask = 0;
  for (std::size_t k = 0; k < doors.size(); ++k) {
    door_bit[static_cast<std::size_t>(doors[k]->cell.row) * cols + doors[k]->cell.col] = static_cast<int>(k);
    if (doors[k]->id == task.goal) goal_bit = static_cast<int>(k);
    if (level.init_open.count(doors[k]->id)) init_mask |= 1u << k;
  }
  struct Lever {
    Cell cell;
    std::uint32_t flips = 0;
  };
  std::vector<Lever> levers;
  for (const auto* b : level.objects_of_kind(ObjectKind::Button)) {
    Lever l{b->cell, 0};
    for (const auto& d : level.doors_of(b->id))
      for (std::size_t k = 0; k < doors.size(); ++k)
        if (doors[k]->id == d) l.flips |= 1u << k;
    levers.push_back(l);
  }

  const auto witness = [&](Cell c, std::uint32_t mask) {
    if (chebyshev(c, goal->cell) > kInteractionRange) return false;
    switch (task.phi) {
      case Predicate::IsOpen: return goal_bit >= 0 && (mask >> goal_bit & 1u);
      case Predicate::IsClosed: return goal_bit >= 0 && !(mask >> goal_bit & 1u);
      case Predicate::IsReached: return true;
    }
    return false;
  };
  const auto passable = [&](Cell c, std::uint32_t mask) {
    if (!level.grid.in_bounds(c) || level.grid.at(c) != CellKind::Floor) return false;
    const int bit = door_bit[static_cast<std::size_t>(c.row) * cols + c.col];
    return bit < 0 || (mask >> bit & 1u);
  };

  // 0-1 BFS: moving is free, every interaction costs one.
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> cost(cells * masks, kInf);
  const auto id = [&](Cell c, std::uint32_t m) { return (static_cast<std::size_t>(c.row) * cols + c.col) * masks + m; };
  std::deque<std::pair<Cell, std::uint32_t>> queue;
  cost[id(level.agent_start, init_mask)] = 0;
  queue.emplace_back(level.agent_start, init_mask);
  while (!queue.empty()) {
    const auto [c, m] = queue.front();
    queue.pop_front();
    const int here = cost[id(c, m)];
    if (witness(c, m)) return {true, here};
    for (Direction d : kAllDirections) {
      const Cell n = step(c, d);
      if (!passable(n, m) || cost[id(n, m)] <= here) continue;
      cost[id(n, m)] = here;
      queue.emplace_front(n, m);
    }
    for (const auto& l : levers) {
      if (chebyshev(c, l.cell) > kInteractionRange || l.flips == 0) continue;
      const std::uint32_t nm = m ^ l.flips;
      if (cost[id(c, nm)] <= here + 1) continue;
      cost[id(c, nm)] = here + 1;
      queue.emplace_back(c, nm);
    }
  }
  return {false, std::nullopt};
}

}  // namespace gamesearch
