#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gamesearch/geometry.hpp"

namespace gamesearch {

enum class CellKind : std::uint8_t { Wall, Floor };
enum class ObjectKind : std::uint8_t { Button, Door };

std::string_view to_string(ObjectKind k);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UnknownObject : public std::runtime_error {
 public:
  explicit UnknownObject(const std::string& id) : std::runtime_error("unknown object '" + id + "'") {}
};

class NotInteractable : public std::runtime_error {
 public:
  explicit NotInteractable(const std::string& id)
      : std::runtime_error("object '" + id + "' is not interactable") {}
};

class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, CellKind fill = CellKind::Wall)
      : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool in_bounds(Cell c) const noexcept {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }
  std::size_t index(Cell c) const noexcept { return static_cast<std::size_t>(c.row) * cols_ + c.col; }
  Cell cell_at(std::size_t idx) const noexcept {
    return {static_cast<int>(idx / cols_), static_cast<int>(idx % cols_)};
  }

  CellKind at(Cell c) const { return cells_[index(c)]; }
  void set(Cell c, CellKind k) { cells_[index(c)] = k; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<CellKind> cells_;
};

struct GameObject {
  std::string id;
  ObjectKind kind = ObjectKind::Button;
  Cell cell;

  bool operator==(const GameObject&) const = default;
};

using Wiring = std::set<std::pair<std::string, std::string>>;

// Ground-truth world definition.
struct Level {
  std::string name;
  Grid grid;
  std::vector<GameObject> objects;
  Wiring wiring;  // (button-id, door-id)
  Cell agent_start;
  std::set<std::string> init_open;
  int radius = 4;
  std::optional<std::string> goal;

  const GameObject* find(std::string_view id) const;
  const GameObject* object_at(Cell c) const;
  std::vector<std::string> doors_of(std::string_view button) const;
  std::vector<std::string> buttons_of(std::string_view door) const;
  std::vector<const GameObject*> objects_of_kind(ObjectKind kind) const;

  // Rebuilds the cell lookup; call after editing `objects` or `grid` by hand.
  void reindex();

 private:
  std::vector<int> object_index_;  // per grid cell, -1 when empty
};

// Parses the line-based level format ([grid], [objects], [wiring], [meta]).
Level parse_level(std::string_view text, std::string_view name = "level");

// Reads and parses a level file; the level name defaults to the file stem.
// Throws std::runtime_error on I/O failure.
Level load_level(const std::filesystem::path& path);

// Live state of one play session.
struct GameConfiguration {
  Cell agent_cell;
  std::map<std::string, bool> door_open;
  std::uint64_t tick = 0;

  bool operator==(const GameConfiguration&) const = default;
};

struct VisibleObject {
  GameObject object;
  std::optional<bool> door_open;  // set for doors only
};

struct Observation {
  Cell agent_cell;
  std::vector<std::pair<Cell, CellKind>> visible_cells;  // row-major order
  std::vector<VisibleObject> visible_objects;            // ordered by id
  std::uint64_t tick = 0;
};

GameConfiguration init(const Level& level);

// Floor, and for door cells only when the door is open.
bool walkable(const Level& level, const GameConfiguration& cfg, Cell c);

// Walls and closed doors block sight.
bool opaque(const Level& level, const GameConfiguration& cfg, Cell c);

GameConfiguration move_agent(const GameConfiguration& cfg, const Level& level, Direction dir);

inline constexpr int kInteractionRange = 1;

GameConfiguration interact(const GameConfiguration& cfg, const Level& level, std::string_view button);

Observation observe(const GameConfiguration& cfg, const Level& level, int radius);

// A level plus its current configuration. Owns nothing shared.
class Game {
 public:
  explicit Game(const Level& level) : level_(&level), cfg_(init(level)) {}

  const Level& level() const { return *level_; }
  const GameConfiguration& config() const { return cfg_; }

  void move(Direction d) { cfg_ = move_agent(cfg_, *level_, d); }
  void interact(std::string_view button) { cfg_ = gamesearch::interact(cfg_, *level_, button); }
  Observation observe(int radius) const { return gamesearch::observe(cfg_, *level_, radius); }

 private:
  const Level* level_;
  GameConfiguration cfg_;
};

}  // namespace gamesearch
