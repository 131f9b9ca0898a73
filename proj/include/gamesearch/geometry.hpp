#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace gamesearch {

// Grid coordinate. Ordering is row-major, which is also the tie-break order
// used throughout navigation and selection.
struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

enum class Direction { North, South, East, West };

inline constexpr Direction kAllDirections[] = {Direction::North, Direction::West, Direction::East,
                                               Direction::South};

inline Cell step(Cell c, Direction d) {
  switch (d) {
    case Direction::North: return {c.row - 1, c.col};
    case Direction::South: return {c.row + 1, c.col};
    case Direction::East: return {c.row, c.col + 1};
    case Direction::West: return {c.row, c.col - 1};
  }
  return c;
}

// Direction that moves `from` onto the 4-adjacent cell `to`.
Direction direction_between(Cell from, Cell to);

char direction_letter(Direction d);

inline int manhattan(Cell a, Cell b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col); }

inline int chebyshev(Cell a, Cell b) {
  int dr = std::abs(a.row - b.row);
  int dc = std::abs(a.col - b.col);
  return dr > dc ? dr : dc;
}

inline long long distance_squared(Cell a, Cell b) {
  long long dr = a.row - b.row;
  long long dc = a.col - b.col;
  return dr * dr + dc * dc;
}

double euclidean(Cell a, Cell b);

std::string to_string(Cell c);

// Bresenham line between two cells, endpoints included. The line is always
// traced from the row-major smaller endpoint so that line(a, b) and line(b, a)
// contain the same cells.
std::vector<Cell> line_cells(Cell a, Cell b);

// True when nothing opaque lies strictly between a and b on the canonical line.
// A diagonal step is also blocked when both cells flanking its corner are
// opaque.
template <class Opaque>
bool line_clear(Cell a, Cell b, Opaque&& opaque) {
  if (a == b) return true;
  const std::vector<Cell> cells = line_cells(a, b);
  for (std::size_t k = 1; k < cells.size(); ++k) {
    const Cell prev = cells[k - 1];
    const Cell cur = cells[k];
    if (k + 1 < cells.size() && opaque(cur)) return false;
    if (prev.row != cur.row && prev.col != cur.col) {
      if (opaque(Cell{prev.row, cur.col}) && opaque(Cell{cur.row, prev.col})) return false;
    }
  }
  return true;
}

}  // namespace gamesearch
