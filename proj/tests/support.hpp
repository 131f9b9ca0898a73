#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gamesearch/nav.hpp"
#include "gamesearch/world.hpp"

namespace gamesearch::fixtures {

// gr x gc rooms of 3x3 floor, one button per room, doors on a random subset
// of the shared walls. Door between rooms a and b is "d<a><b>".
struct RoomGrid {
  std::string text;
  int rooms = 0;
  std::vector<std::pair<int, int>> doors;  // room index pairs
};

inline RoomGrid room_grid(std::mt19937_64& rng, int gr, int gc, double door_p, double open_p) {
  const int rows = gr * 4 + 1;
  const int cols = gc * 4 + 1;
  std::vector<std::string> g(rows, std::string(cols, '#'));
  for (int r = 0; r < gr; ++r)
    for (int c = 0; c < gc; ++c)
      for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) g[r * 4 + y][c * 4 + x] = '.';

  RoomGrid out;
  out.rooms = gr * gc;
  std::string objects;
  std::bernoulli_distribution put_door(door_p);
  std::bernoulli_distribution open(open_p);
  char marker = 'A';
  for (int r = 0; r < gr; ++r)
    for (int c = 0; c < gc; ++c) {
      const int a = r * gc + c;
      const char button = static_cast<char>('0' + a);
      g[r * 4 + 2][c * 4 + 2] = button;
      objects += std::string(1, button) + " = button b" + std::to_string(a) + "\n";
      auto add_door = [&](int b, int row, int col) {
        if (!put_door(rng)) return;
        g[row][col] = marker;
        objects += std::string(1, marker) + " = door d" + std::to_string(a) + std::to_string(b) +
                   (open(rng) ? " open" : "") + "\n";
        out.doors.emplace_back(a, b);
        ++marker;
      };
      if (c + 1 < gc) add_door(a + 1, r * 4 + 2, c * 4 + 4);
      if (r + 1 < gr) add_door(a + gc, r * 4 + 4, c * 4 + 2);
    }
  g[3][3] = '@';
  out.text = "[grid]\n";
  for (const auto& row : g) out.text += row + "\n";
  out.text += "[objects]\n" + objects;
  return out;
}

// Everything in the level, as one observation taken from the start cell.
inline Observation full_observation(const Level& level, const GameConfiguration& cfg) {
  Observation obs;
  obs.agent_cell = cfg.agent_cell;
  obs.tick = cfg.tick;
  for (int r = 0; r < level.grid.rows(); ++r)
    for (int c = 0; c < level.grid.cols(); ++c) obs.visible_cells.emplace_back(Cell{r, c}, level.grid.at({r, c}));
  std::vector<VisibleObject> objs;
  for (const auto& o : level.objects) {
    VisibleObject v{o, std::nullopt};
    if (o.kind == ObjectKind::Door) v.door_open = cfg.door_open.at(o.id);
    objs.push_back(v);
  }
  std::sort(objs.begin(), objs.end(), [](const auto& a, const auto& b) { return a.object.id < b.object.id; });
  obs.visible_objects = std::move(objs);
  return obs;
}

}  // namespace gamesearch::fixtures
