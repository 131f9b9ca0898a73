#include "gamesearch/world.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gamesearch {

std::string_view to_string(ObjectKind k) { return k == ObjectKind::Button ? "button" : "door"; }

const GameObject* Level::find(std::string_view id) const {
  for (const auto& o : objects)
    if (o.id == id) return &o;
  return nullptr;
}

const GameObject* Level::object_at(Cell c) const {
  if (object_index_.size() == grid.size()) {
    if (!grid.in_bounds(c)) return nullptr;
    const int idx = object_index_[grid.index(c)];
    return idx < 0 ? nullptr : &objects[static_cast<std::size_t>(idx)];
  }
  for (const auto& o : objects)
    if (o.cell == c) return &o;
  return nullptr;
}

void Level::reindex() {
  object_index_.assign(grid.size(), -1);
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (grid.in_bounds(objects[i].cell)) object_index_[grid.index(objects[i].cell)] = static_cast<int>(i);
}

std::vector<std::string> Level::doors_of(std::string_view button) const {
  std::vector<std::string> out;
  for (const auto& [b, d] : wiring)
    if (b == button) out.push_back(d);
  return out;
}

std::vector<std::string> Level::buttons_of(std::string_view door) const {
  std::vector<std::string> out;
  for (const auto& [b, d] : wiring)
    if (d == door) out.push_back(b);
  return out;
}

std::vector<const GameObject*> Level::objects_of_kind(ObjectKind kind) const {
  std::vector<const GameObject*> out;
  for (const auto& o : objects)
    if (o.kind == kind) out.push_back(&o);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
  });
}

enum class Section { None, Grid, Objects, Wiring, Meta };

struct ObjectDecl {
  std::string id;
  ObjectKind kind;
  bool open;
  int line;
};

}  // namespace

Level parse_level(std::string_view text, std::string_view name) {
  Level level;
  level.name = std::string(name);

  Section section = Section::None;
  bool saw_grid = false;
  std::vector<std::string> grid_rows;
  std::vector<int> grid_lines;
  std::map<char, ObjectDecl> decls;
  std::vector<std::pair<int, std::pair<std::string, std::vector<std::string>>>> wiring_lines;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) throw ParseError(line_no, "unterminated section header");
      if (!strip_comment(line.substr(close + 1)).empty())
        throw ParseError(line_no, "trailing text after section header");
      const std::string_view header = line.substr(1, close - 1);
      if (header == "grid") {
        if (saw_grid) throw ParseError(line_no, "duplicate [grid] section");
        saw_grid = true;
        section = Section::Grid;
      } else if (header == "objects") {
        section = Section::Objects;
      } else if (header == "wiring") {
        section = Section::Wiring;
      } else if (header == "meta") {
        section = Section::Meta;
      } else {
        throw ParseError(line_no, "unknown section [" + std::string(header) + "]");
      }
      continue;
    }

    if (section == Section::Grid) {
      grid_rows.emplace_back(line);
      grid_lines.push_back(line_no);
      continue;
    }

    const std::string_view body = strip_comment(line);
    if (body.empty()) continue;

    switch (section) {
      case Section::None:
        throw ParseError(line_no, "content outside of any section");
      case Section::Objects: {
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'marker = kind id [open]'");
        const std::string_view marker = trim(body.substr(0, eq));
        const auto words = split_ws(body.substr(eq + 1));
        if (marker.size() != 1) throw ParseError(line_no, "marker must be a single character");
        const char m = marker.front();
        if (m == '#' || m == '.' || m == '@') throw ParseError(line_no, "reserved marker character");
        if (words.size() < 2 || words.size() > 3) throw ParseError(line_no, "expected 'kind id [open]'");
        ObjectKind kind;
        if (words[0] == "button") kind = ObjectKind::Button;
        else if (words[0] == "door") kind = ObjectKind::Door;
        else throw ParseError(line_no, "unknown object kind '" + std::string(words[0]) + "'");
        if (!valid_id(words[1])) throw ParseError(line_no, "invalid id '" + std::string(words[1]) + "'");
        bool open = false;
        if (words.size() == 3) {
          if (words[2] != "open") throw ParseError(line_no, "unexpected token '" + std::string(words[2]) + "'");
          if (kind != ObjectKind::Door) throw ParseError(line_no, "only doors can be declared open");
          open = true;
        }
        if (decls.count(m)) throw ParseError(line_no, std::string("duplicate marker '") + m + "'");
        decls.emplace(m, ObjectDecl{std::string(words[1]), kind, open, line_no});
        break;
      }
      case Section::Wiring: {
        const auto arrow = body.find("->");
        if (arrow == std::string_view::npos) throw ParseError(line_no, "expected 'button -> door...'");
        const std::string_view lhs = trim(body.substr(0, arrow));
        const auto rhs = split_ws(body.substr(arrow + 2));
        if (!valid_id(lhs) || rhs.empty()) throw ParseError(line_no, "malformed wiring line");
        std::vector<std::string> doors;
        for (auto d : rhs) {
          if (!valid_id(d)) throw ParseError(line_no, "invalid id '" + std::string(d) + "'");
          doors.emplace_back(d);
        }
        wiring_lines.push_back({line_no, {std::string(lhs), std::move(doors)}});
        break;
      }
      case Section::Meta: {
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const std::string_view key = trim(body.substr(0, eq));
        const std::string_view value = trim(body.substr(eq + 1));
        if (key == "radius") {
          int r = 0;
          const auto res = std::from_chars(value.data(), value.data() + value.size(), r);
          if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || r < 1)
            throw ParseError(line_no, "radius must be a positive integer");
          level.radius = r;
        } else if (key == "name") {
          if (!valid_id(value)) throw ParseError(line_no, "invalid level name");
          level.name = std::string(value);
        } else if (key == "goal") {
          if (!valid_id(value)) throw ParseError(line_no, "invalid goal id");
          level.goal = std::string(value);
        } else {
          throw ParseError(line_no, "unknown meta key '" + std::string(key) + "'");
        }
        break;
      }
      case Section::Grid:
        break;
    }
  }

  if (!saw_grid || grid_rows.empty()) throw ParseError(line_no, "missing [grid] section");

  const int rows = static_cast<int>(grid_rows.size());
  const int cols = static_cast<int>(grid_rows.front().size());
  level.grid = Grid(rows, cols);
  bool have_start = false;
  std::set<char> placed;
  for (int r = 0; r < rows; ++r) {
    const std::string& row = grid_rows[r];
    if (static_cast<int>(row.size()) != cols) throw ParseError(grid_lines[r], "grid is not rectangular");
    for (int c = 0; c < cols; ++c) {
      const char ch = row[c];
      const Cell cell{r, c};
      if (ch == '#') continue;
      level.grid.set(cell, CellKind::Floor);
      if (ch == '.') continue;
      if (ch == '@') {
        if (have_start) throw ParseError(grid_lines[r], "more than one agent start '@'");
        have_start = true;
        level.agent_start = cell;
        continue;
      }
      const auto it = decls.find(ch);
      if (it == decls.end()) throw ParseError(grid_lines[r], std::string("undeclared marker '") + ch + "'");
      if (!placed.insert(ch).second)
        throw ParseError(grid_lines[r], std::string("marker '") + ch + "' placed twice");
      level.objects.push_back({it->second.id, it->second.kind, cell});
      if (it->second.open) level.init_open.insert(it->second.id);
    }
  }
  if (!have_start) throw ParseError(line_no, "grid has no agent start '@'");
  for (const auto& [m, decl] : decls)
    if (!placed.count(m)) throw ParseError(decl.line, std::string("marker '") + m + "' not placed in grid");

  // Invariants beyond syntax.
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r == 0 || c == 0 || r == rows - 1 || c == cols - 1) && level.grid.at({r, c}) != CellKind::Wall)
        throw ValidationError("border cell " + to_string(Cell{r, c}) + " is not a wall");

  std::sort(level.objects.begin(), level.objects.end(),
            [](const GameObject& a, const GameObject& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < level.objects.size(); ++i)
    if (level.objects[i].id == level.objects[i - 1].id)
      throw ValidationError("duplicate object id '" + level.objects[i].id + "'");

  for (const auto& [ln, entry] : wiring_lines) {
    const GameObject* b = level.find(entry.first);
    if (!b) throw ValidationError("wiring references unknown object '" + entry.first + "'");
    if (b->kind != ObjectKind::Button) throw ValidationError("wiring source '" + entry.first + "' is not a button");
    for (const auto& d : entry.second) {
      const GameObject* door = level.find(d);
      if (!door) throw ValidationError("wiring references unknown object '" + d + "'");
      if (door->kind != ObjectKind::Door) throw ValidationError("wiring target '" + d + "' is not a door");
      level.wiring.insert({entry.first, d});
    }
  }

  // A button next to a door would let the agent close a door it stands on.
  for (const auto* b : level.objects_of_kind(ObjectKind::Button))
    for (const auto* d : level.objects_of_kind(ObjectKind::Door))
      if (chebyshev(b->cell, d->cell) <= kInteractionRange)
        throw ValidationError("button '" + b->id + "' is within interaction range of door '" + d->id + "'");

  level.reindex();

  if (level.goal && !level.find(*level.goal))
    throw ValidationError("goal references unknown object '" + *level.goal + "'");

  return level;
}

Level load_level(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open level file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_level(ss.str(), path.stem().string());
}

GameConfiguration init(const Level& level) {
  GameConfiguration cfg;
  cfg.agent_cell = level.agent_start;
  for (const auto* d : level.objects_of_kind(ObjectKind::Door)) cfg.door_open[d->id] = level.init_open.count(d->id) > 0;
  cfg.tick = 0;
  return cfg;
}

bool walkable(const Level& level, const GameConfiguration& cfg, Cell c) {
  if (!level.grid.in_bounds(c) || level.grid.at(c) != CellKind::Floor) return false;
  const GameObject* o = level.object_at(c);
  if (o && o->kind == ObjectKind::Door) return cfg.door_open.at(o->id);
  return true;
}

bool opaque(const Level& level, const GameConfiguration& cfg, Cell c) {
  if (!level.grid.in_bounds(c) || level.grid.at(c) == CellKind::Wall) return true;
  const GameObject* o = level.object_at(c);
  return o && o->kind == ObjectKind::Door && !cfg.door_open.at(o->id);
}

GameConfiguration move_agent(const GameConfiguration& cfg, const Level& level, Direction dir) {
  GameConfiguration next = cfg;
  const Cell target = step(cfg.agent_cell, dir);
  if (walkable(level, cfg, target)) next.agent_cell = target;
  ++next.tick;
  return next;
}

GameConfiguration interact(const GameConfiguration& cfg, const Level& level, std::string_view button) {
  const GameObject* obj = level.find(button);
  if (!obj) throw UnknownObject(std::string(button));
  if (obj->kind != ObjectKind::Button) throw NotInteractable(std::string(button));
  GameConfiguration next = cfg;
  if (chebyshev(cfg.agent_cell, obj->cell) <= kInteractionRange)
    for (const auto& d : level.doors_of(button)) next.door_open[d] = !next.door_open[d];
  ++next.tick;
  return next;
}

Observation observe(const GameConfiguration& cfg, const Level& level, int radius) {
  Observation obs;
  obs.agent_cell = cfg.agent_cell;
  obs.tick = cfg.tick;
  const Cell a = cfg.agent_cell;
  const long long r2 = static_cast<long long>(radius) * radius;
  const auto is_opaque = [&](Cell c) { return opaque(level, cfg, c); };
  const int r0 = std::max(0, a.row - radius);
  const int r1 = std::min(level.grid.rows() - 1, a.row + radius);
  const int c0 = std::max(0, a.col - radius);
  const int c1 = std::min(level.grid.cols() - 1, a.col + radius);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const Cell cell{r, c};
      if (distance_squared(a, cell) > r2) continue;
      if (!line_clear(a, cell, is_opaque)) continue;
      obs.visible_cells.emplace_back(cell, level.grid.at(cell));
    }
  }
  for (const auto& o : level.objects) {
    const bool seen = std::binary_search(
        obs.visible_cells.begin(), obs.visible_cells.end(), std::pair{o.cell, CellKind::Wall},
        [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!seen) continue;
    VisibleObject v{o, std::nullopt};
    if (o.kind == ObjectKind::Door) v.door_open = cfg.door_open.at(o.id);
    obs.visible_objects.push_back(std::move(v));
  }
  return obs;
}

}  // namespace gamesearch
