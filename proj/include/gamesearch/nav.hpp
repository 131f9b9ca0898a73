#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamesearch/geometry.hpp"
#include "gamesearch/world.hpp"

namespace gamesearch {

class UnknownCell : public std::runtime_error {
 public:
  explicit UnknownCell(Cell c) : std::runtime_error("cell " + to_string(c) + " is not known"), cell_(c) {}
  Cell cell() const noexcept { return cell_; }

 private:
  Cell cell_;
};

// What the agent believes about a door it has seen.
struct DoorBelief {
  std::string id;
  Cell cell;
  bool open = false;
  std::uint64_t last_seen = 0;
};

// An object the agent has seen at least once.
struct KnownObject {
  std::string id;
  ObjectKind kind = ObjectKind::Button;
  Cell cell;
};

using DoorStates = std::map<std::string, bool>;

struct IntegrationDelta {
  std::size_t new_cells = 0;
  std::vector<std::string> new_objects;

  bool anything_new() const { return new_cells > 0 || !new_objects.empty(); }
};

// Incrementally learned terrain. Dimensions are those of the level; cell
// contents are unknown until observed.
class NavGraph {
 public:
  NavGraph() = default;
  NavGraph(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool in_bounds(Cell c) const noexcept {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }

  IntegrationDelta integrate(const Observation& obs);

  bool known(Cell c) const;
  std::optional<CellKind> kind_at(Cell c) const;
  std::size_t known_count() const noexcept { return known_count_; }
  std::vector<std::pair<Cell, CellKind>> known_cells() const;

  const std::map<Cell, std::string>& door_cells() const noexcept { return door_cells_; }
  const std::map<std::string, DoorBelief>& doors() const noexcept { return doors_; }
  const std::map<std::string, KnownObject>& objects() const noexcept { return objects_; }
  const KnownObject* object(const std::string& id) const;
  std::optional<std::string> door_at(Cell c) const;

  DoorStates door_states() const;

  // Known walkable cells adjacent to at least one unknown in-bounds cell.
  std::vector<Cell> frontier() const;

  // ASCII dump of the known map using level glyphs; '?' for unknown cells.
  std::string render(std::optional<Cell> agent = std::nullopt) const;

 private:
  std::size_t index(Cell c) const noexcept { return static_cast<std::size_t>(c.row) * cols_ + c.col; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int8_t> cells_;  // -1 unknown, else CellKind
  std::size_t known_count_ = 0;
  std::map<Cell, std::string> door_cells_;
  std::map<std::string, DoorBelief> doors_;
  std::map<std::string, KnownObject> objects_;
};

struct Path {
  std::vector<Cell> cells;

  std::size_t steps() const { return cells.empty() ? 0 : cells.size() - 1; }
  bool operator==(const Path&) const = default;
};

// How door cells are treated by a path query.
enum class DoorPolicy {
  UseStates,  // open doors walkable, closed or unknown-state doors blocked
  AllClosed,  // every known door blocks
  AllOpen,    // every known door is walkable
};

// Receives every cell a search expands; used to audit that planning never
// touches unknown terrain.
using ExpansionAudit = std::function<void(Cell)>;

bool nav_walkable(const NavGraph& nav, Cell c, DoorPolicy policy, const DoorStates& states);

// Shortest 4-connected path over known walkable cells (A*, Manhattan
// heuristic). Among equal-length paths the row-major lexicographically
// smallest cell sequence is returned. Throws UnknownCell.
std::optional<Path> find_path(const NavGraph& nav, Cell from, Cell to, const DoorStates& door_states,
                              const ExpansionAudit& audit = {});

// As find_path, to whichever goal is closest. Goals need not be known; unknown
// or blocked goals are ignored.
std::optional<Path> find_path_to_any(const NavGraph& nav, Cell from, std::span<const Cell> goals,
                                     DoorPolicy policy, const DoorStates& door_states,
                                     const ExpansionAudit& audit = {});

// find_path with every known door treated as a wall, whatever its state.
std::optional<Path> path_with_blockers_as_walls(const NavGraph& nav, Cell a, Cell b);

// Breadth-first distances (in steps) from `from` over known walkable cells;
// -1 where unreachable. Indexed row-major.
std::vector<int> distance_field(const NavGraph& nav, Cell from, DoorPolicy policy,
                                const DoorStates& door_states);

}  // namespace gamesearch
