#include "gamesearch/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gamesearch {

Direction direction_between(Cell from, Cell to) {
  if (to.row == from.row - 1 && to.col == from.col) return Direction::North;
  if (to.row == from.row + 1 && to.col == from.col) return Direction::South;
  if (to.row == from.row && to.col == from.col + 1) return Direction::East;
  if (to.row == from.row && to.col == from.col - 1) return Direction::West;
  throw std::invalid_argument("cells are not 4-adjacent: " + to_string(from) + " " + to_string(to));
}

char direction_letter(Direction d) {
  switch (d) {
    case Direction::North: return 'N';
    case Direction::South: return 'S';
    case Direction::East: return 'E';
    case Direction::West: return 'W';
  }
  return '?';
}

double euclidean(Cell a, Cell b) { return std::sqrt(static_cast<double>(distance_squared(a, b))); }

std::string to_string(Cell c) { return std::to_string(c.row) + "," + std::to_string(c.col); }

std::vector<Cell> line_cells(Cell a, Cell b) {
  if (b < a) std::swap(a, b);
  std::vector<Cell> out;
  int r = a.row;
  int c = a.col;
  const int dr = std::abs(b.row - a.row);
  const int dc = std::abs(b.col - a.col);
  const int sr = a.row < b.row ? 1 : -1;
  const int sc = a.col < b.col ? 1 : -1;
  int err = dc - dr;
  out.reserve(static_cast<std::size_t>(dr > dc ? dr : dc) + 1);
  while (true) {
    out.push_back({r, c});
    if (r == b.row && c == b.col) break;
    const int e2 = 2 * err;
    if (e2 > -dr) {
      err -= dr;
      c += sc;
    }
    if (e2 < dc) {
      err += dc;
      r += sr;
    }
  }
  return out;
}

}  // namespace gamesearch
