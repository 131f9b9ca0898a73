#include "gamesearch/model.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace gamesearch {

std::string_view to_string(StateTag t) { return t == StateTag::Interactable ? "Interactable" : "Blocker"; }

std::string_view to_string(TransitionLabel l) {
  return l == TransitionLabel::NavigateTo ? "navigateTo" : "interact";
}

std::vector<Zone> Model::zones() const {
  std::vector<Zone> out;
  out.reserve(zones_.size());
  for (const auto& z : zones_) out.push_back(z.zone);
  return out;
}

const ModelState* Model::state(const std::string& id) const {
  const auto it = states_.find(id);
  return it == states_.end() ? nullptr : &it->second;
}

std::vector<std::string> Model::zones_of(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& z : zones_)
    if (z.zone.members.count(id)) out.push_back(z.zone.id);
  return out;
}

bool Model::has_zone(const std::string& zone_id) const {
  return std::any_of(zones_.begin(), zones_.end(), [&](const ZoneData& z) { return z.zone.id == zone_id; });
}

Model::ZoneData& Model::zone_data(const std::string& id) {
  for (auto& z : zones_)
    if (z.zone.id == id) return z;
  throw UnknownZone(id);
}

const Model::ZoneData& Model::zone_data(const std::string& id) const {
  for (const auto& z : zones_)
    if (z.zone.id == id) return z;
  throw UnknownZone(id);
}

const std::vector<Cell>& Model::zone_anchors(const std::string& zone_id) const { return zone_data(zone_id).anchors; }

std::optional<std::uint64_t> Model::transition_tick(const Transition& t) const {
  const auto it = transition_ticks_.find(t);
  if (it == transition_ticks_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Model::preferred_zones(const std::optional<std::string>& current) const {
  if (!current) return {};
  return zones_of(*current);
}

// Equivalent to asking path_with_blockers_as_walls(anchor, c) for the zone's
// anchors nearest-first, done with a single flood from c.
std::optional<std::string> Model::zone_of_cell(const NavGraph& nav, Cell c,
                                               const std::vector<std::string>& preferred) const {
  if (!nav.known(c) || nav.door_at(c)) return std::nullopt;
  const std::vector<int> region = distance_field(nav, c, DoorPolicy::AllClosed, {});
  const auto inside = [&](Cell a) {
    return nav.in_bounds(a) && region[static_cast<std::size_t>(a.row) * nav.cols() + a.col] >= 0;
  };
  const auto touches = [&](const ZoneData& z) { return std::any_of(z.anchors.begin(), z.anchors.end(), inside); };
  for (const auto& id : preferred)
    if (has_zone(id) && touches(zone_data(id))) return id;
  for (const auto& z : zones_)
    if (touches(z)) return z.zone.id;
  return std::nullopt;
}

std::string Model::locate_or_create_zone(const NavGraph& nav, Cell c, const std::vector<std::string>& preferred) {
  if (auto found = zone_of_cell(nav, c, preferred)) return *found;
  ZoneData z;
  z.zone.id = "R" + std::to_string(zones_.size() + 1);
  if (start_anchor_ && nav.known(*start_anchor_) && path_with_blockers_as_walls(nav, c, *start_anchor_)) {
    z.anchors.push_back(*start_anchor_);
    start_anchor_.reset();
  }
  zones_.push_back(std::move(z));
  return zones_.back().zone.id;
}

UpdateResult Model::update_state_graph(const Observation& obs, const std::optional<std::string>& current,
                                       const NavGraph& nav) {
  UpdateResult res;
  bool current_visible = false;
  for (const auto& v : obs.visible_objects) {
    const auto& o = v.object;
    if (current && o.id == *current) current_visible = true;
    if (!states_.count(o.id)) {
      ModelState st;
      st.object_id = o.id;
      st.tag = o.kind == ObjectKind::Door ? StateTag::Blocker : StateTag::Interactable;
      st.cell = o.cell;
      st.last_seen = obs.tick;
      states_.emplace(o.id, std::move(st));
      res.new_states.push_back(o.id);
    }
    auto& st = states_.at(o.id);
    if (st.tag == StateTag::Blocker && v.door_open) {
      if (st.last_known_open && *st.last_known_open != *v.door_open)
        res.changed_blockers.push_back({o.id, st.last_known_open, *v.door_open, st.last_seen});
      st.last_known_open = *v.door_open;
    }
    st.last_seen = obs.tick;
  }

  // A new state is connected to the current one only when the two can see
  // each other over known, unblocked cells.
  if (current && current_visible && states_.count(*current)) {
    const Cell from = states_.at(*current).cell;
    const auto blocks = [&](Cell c) {
      const auto k = nav.kind_at(c);
      if (!k || *k == CellKind::Wall) return true;
      if (const auto d = nav.door_at(c)) return !nav.doors().at(*d).open;
      return false;
    };
    for (const auto& t : res.new_states) {
      if (t == *current) continue;
      if (!line_clear(from, states_.at(t).cell, blocks)) continue;
      for (Transition tr : {Transition{*current, TransitionLabel::NavigateTo, t},
                            Transition{t, TransitionLabel::NavigateTo, *current}}) {
        if (transitions_.insert(tr).second) transition_ticks_.emplace(tr, obs.tick);
      }
    }
  }

  for (const auto& t : res.new_states) {
    if (states_.at(t).tag != StateTag::Interactable) continue;
    const Transition loop{t, TransitionLabel::Interact, t};
    if (transitions_.insert(loop).second) transition_ticks_.emplace(loop, obs.tick);
  }

  std::vector<std::string> to_place = res.new_states;
  for (const auto& v : obs.visible_objects)
    if (v.object.kind == ObjectKind::Door && zones_of(v.object.id).size() < 2 &&
        std::find(to_place.begin(), to_place.end(), v.object.id) == to_place.end())
      to_place.push_back(v.object.id);
  assign_zone(to_place, current, nav);
  return res;
}

void Model::assign_zone(const std::vector<std::string>& new_states, const std::optional<std::string>& current,
                        const NavGraph& nav) {
  const std::vector<std::string> preferred = preferred_zones(current);
  for (const auto& id : new_states) {
    const auto it = states_.find(id);
    if (it == states_.end()) continue;
    const ModelState& st = it->second;
    if (st.tag == StateTag::Interactable) {
      if (!zones_of(id).empty() || !nav.known(st.cell)) continue;
      auto& z = zone_data(locate_or_create_zone(nav, st.cell, preferred));
      z.zone.members.insert(id);
      z.anchors.push_back(st.cell);
      continue;
    }
    auto& attached = attached_sides_[id];
    for (Direction d : kAllDirections) {
      if (zones_of(id).size() >= 2) break;
      const Cell side = step(st.cell, d);
      if (attached.count(side)) continue;
      if (nav.kind_at(side) != CellKind::Floor || nav.door_at(side)) continue;
      auto& z = zone_data(locate_or_create_zone(nav, side, preferred));
      attached.insert(side);
      z.zone.members.insert(id);
      z.anchors.push_back(side);
    }
  }
}

void Model::record_connection(const std::string& interactable, const std::vector<std::string>& affected) {
  const ModelState* i = state(interactable);
  if (!i || i->tag != StateTag::Interactable)
    throw std::invalid_argument("'" + interactable + "' is not a known interactable");
  for (const auto& o : affected) {
    if (!has_state(o)) throw std::invalid_argument("'" + o + "' is not a known state");
    connections_.insert({interactable, o});
  }
}

bool Model::neighbor(const std::string& r1, const std::string& r2) const {
  const auto& a = zone_data(r1);
  const auto& b = zone_data(r2);
  if (r1 == r2) return false;
  for (const auto& m : a.zone.members) {
    const ModelState* st = state(m);
    if (st && st->tag == StateTag::Blocker && b.zone.members.count(m)) return true;
  }
  return false;
}

std::optional<int> Model::room_distance(const std::string& r1, const std::string& r2) const {
  zone_data(r1);
  zone_data(r2);
  if (r1 == r2) return 0;
  std::map<std::string, int> depth{{r1, 0}};
  std::deque<std::string> queue{r1};
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    for (const auto& z : zones_) {
      const std::string& next = z.zone.id;
      if (depth.count(next) || !neighbor(cur, next)) continue;
      depth[next] = depth[cur] + 1;
      if (next == r2) return depth[next];
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

bool Model::room_reachability(int k, const std::string& r1, const std::string& r2) const {
  if (k < 1) throw std::invalid_argument("room_reachability needs k >= 1");
  const auto d = room_distance(r1, r2);
  return d && *d <= k;
}

std::vector<std::string> Model::connected_enablers(const std::string& o, Cell agent) const {
  std::vector<std::pair<long long, std::string>> found;
  for (const auto& [i, target] : connections_) {
    if (target != o) continue;
    const ModelState* st = state(i);
    if (!st || st->tag != StateTag::Interactable) continue;
    found.emplace_back(distance_squared(agent, st->cell), i);
  }
  std::sort(found.begin(), found.end());
  std::vector<std::string> out;
  for (auto& [d, i] : found) out.push_back(std::move(i));
  return out;
}

std::set<std::string> Model::predicted_toggles(const std::string& i) const {
  std::set<std::string> out;
  for (const auto& [src, o] : connections_) {
    if (src != i) continue;
    const ModelState* st = state(o);
    if (st && st->tag == StateTag::Blocker) out.insert(o);
  }
  return out;
}

std::string Model::dump() const {
  std::vector<std::string> lines;
  for (const auto& [id, st] : states_) lines.push_back("STATE " + id + " " + std::string(to_string(st.tag)));
  for (const auto& t : transitions_)
    lines.push_back("TRANS " + t.src + " " + std::string(to_string(t.label)) + " " + t.dst);
  for (const auto& z : zones_) {
    std::string line = "ZONE " + z.zone.id + ":";
    bool first = true;
    for (const auto& m : z.zone.members) {
      line += (first ? " " : ",") + m;
      first = false;
    }
    lines.push_back(std::move(line));
  }
  for (const auto& [i, o] : connections_) lines.push_back("CONN " + i + " -> " + o);
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::pair<std::vector<int>, int> true_rooms(const Level& level) {
  const Grid& g = level.grid;
  std::vector<int> room(g.size(), -1);
  const auto open_floor = [&](Cell c) {
    if (!g.in_bounds(c) || g.at(c) != CellKind::Floor) return false;
    const GameObject* o = level.object_at(c);
    return !(o && o->kind == ObjectKind::Door);
  };
  int count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Cell start = g.cell_at(i);
    if (room[i] >= 0 || !open_floor(start)) continue;
    std::deque<Cell> queue{start};
    room[i] = count;
    while (!queue.empty()) {
      const Cell cur = queue.front();
      queue.pop_front();
      for (Direction d : kAllDirections) {
        const Cell nb = step(cur, d);
        if (!open_floor(nb) || room[g.index(nb)] >= 0) continue;
        room[g.index(nb)] = count;
        queue.push_back(nb);
      }
    }
    ++count;
  }
  return {std::move(room), count};
}

AccuracyReport compare_to_ground_truth(const Model& model, const Level& level) {
  AccuracyReport rep;
  const auto [room, room_count] = true_rooms(level);
  const Grid& g = level.grid;

  rep.zones_found = static_cast<int>(model.zones().size());
  rep.zones_true = room_count;
  rep.buttons_true = static_cast<int>(level.objects_of_kind(ObjectKind::Button).size());
  rep.doors_true = static_cast<int>(level.objects_of_kind(ObjectKind::Door).size());
  for (const auto& [id, st] : model.states()) {
    if (st.tag == StateTag::Interactable) ++rep.buttons_found;
    else ++rep.doors_found;
  }
  rep.connections_found = static_cast<int>(model.connections().size());
  rep.connections_true = static_cast<int>(level.wiring.size());
  for (const auto& c : model.connections())
    if (!level.wiring.count(c)) ++rep.wrong_connections;

  // Each zone stands for the true room holding most of its anchors.
  std::map<std::string, int> label;
  for (const auto& z : model.zones()) {
    std::map<int, int> votes;
    for (Cell a : model.zone_anchors(z.id))
      if (g.in_bounds(a) && room[g.index(a)] >= 0) ++votes[room[g.index(a)]];
    int best = -1;
    int best_votes = 0;
    for (const auto& [r, v] : votes)
      if (v > best_votes) {
        best = r;
        best_votes = v;
      }
    label[z.id] = best;
  }

  for (const auto& [id, st] : model.states()) {
    const GameObject* obj = level.find(id);
    if (!obj) continue;
    const auto zs = model.zones_of(id);
    if (st.tag == StateTag::Interactable) {
      if (zs.size() == 1 && label[zs.front()] != room[g.index(obj->cell)]) ++rep.wrong_room_buttons;
      continue;
    }
    std::set<int> adjacent;
    for (Direction d : kAllDirections) {
      const Cell nb = step(obj->cell, d);
      if (g.in_bounds(nb) && room[g.index(nb)] >= 0) adjacent.insert(room[g.index(nb)]);
    }
    const bool wrong = std::any_of(zs.begin(), zs.end(), [&](const std::string& z) { return !adjacent.count(label[z]); });
    if (wrong) ++rep.wrong_room_doors;
  }
  return rep;
}

}  // namespace gamesearch
