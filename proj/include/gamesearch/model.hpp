#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gamesearch/geometry.hpp"
#include "gamesearch/nav.hpp"
#include "gamesearch/world.hpp"

namespace gamesearch {

class UnknownZone : public std::runtime_error {
 public:
  explicit UnknownZone(const std::string& id) : std::runtime_error("unknown zone '" + id + "'") {}
};

enum class StateTag { Interactable, Blocker };
enum class TransitionLabel { NavigateTo, Interact };

std::string_view to_string(StateTag t);
std::string_view to_string(TransitionLabel l);

// A game object known to the model. Being "in" a state means standing at the
// object's location.
struct ModelState {
  std::string object_id;
  StateTag tag = StateTag::Interactable;
  Cell cell;
  std::optional<bool> last_known_open;  // blockers only
  std::uint64_t last_seen = 0;
};

struct Transition {
  std::string src;
  TransitionLabel label = TransitionLabel::NavigateTo;
  std::string dst;

  auto operator<=>(const Transition&) const = default;
};

struct Zone {
  std::string id;
  std::set<std::string> members;
};

using Connection = std::pair<std::string, std::string>;  // (interactable, affected object)

// A blocker whose believed state changed during one model update.
struct BlockerChange {
  std::string id;
  std::optional<bool> before;
  bool after = false;
  std::uint64_t before_seen = 0;
};

struct UpdateResult {
  std::vector<std::string> new_states;
  std::vector<BlockerChange> changed_blockers;
};

// Hybrid EFSM built on the fly: states S, transitions T, zones and the
// learned connection table P.
class Model {
 public:
  Model() = default;
  // `start` is the agent's initial cell; it anchors the first zone that
  // turns out to contain it.
  explicit Model(Cell start) : start_anchor_(start) {}

  const std::map<std::string, ModelState>& states() const noexcept { return states_; }
  const std::set<Transition>& transitions() const noexcept { return transitions_; }
  const std::set<Connection>& connections() const noexcept { return connections_; }
  std::vector<Zone> zones() const;

  bool has_state(const std::string& id) const { return states_.count(id) > 0; }
  const ModelState* state(const std::string& id) const;
  std::vector<std::string> zones_of(const std::string& id) const;
  bool has_zone(const std::string& zone_id) const;

  // Cells known to lie inside a zone: member locations for interactables and
  // the side cells through which blockers were attached.
  const std::vector<Cell>& zone_anchors(const std::string& zone_id) const;

  // Tick at which a transition was first recorded.
  std::optional<std::uint64_t> transition_tick(const Transition& t) const;

  // Zone whose territory contains `c`, with every known door treated as a
  // wall. Zones listed in `preferred` are tried first. The zone of a door
  // cell is not defined.
  std::optional<std::string> zone_of_cell(const NavGraph& nav, Cell c,
                                          const std::vector<std::string>& preferred = {}) const;

  // Integrates one observation. `current` is the object the agent last
  // reached (nullopt at the start). `nav` must already contain `obs`.
  UpdateResult update_state_graph(const Observation& obs, const std::optional<std::string>& current,
                                  const NavGraph& nav);

  // Places each listed state into a zone. Interactables get exactly one
  // zone; a blocker is attached through each of its known side cells, up to
  // two zones.
  void assign_zone(const std::vector<std::string>& new_states, const std::optional<std::string>& current,
                   const NavGraph& nav);

  void record_connection(const std::string& interactable, const std::vector<std::string>& affected);

  bool neighbor(const std::string& r1, const std::string& r2) const;
  bool room_reachability(int k, const std::string& r1, const std::string& r2) const;

  // Smallest k >= 0 with room_reachability(k, r1, r2) (0 when equal).
  std::optional<int> room_distance(const std::string& r1, const std::string& r2) const;

  // Interactables i with (i, o) in P, nearest to `agent` first.
  std::vector<std::string> connected_enablers(const std::string& o, Cell agent) const;

  // Effect predictor: blockers that interacting with `i` is expected to toggle.
  std::set<std::string> predicted_toggles(const std::string& i) const;

  // One record per line, sorted: STATE, TRANS, ZONE, CONN.
  std::string dump() const;

 private:
  struct ZoneData {
    Zone zone;
    std::vector<Cell> anchors;
  };

  ZoneData& zone_data(const std::string& id);
  const ZoneData& zone_data(const std::string& id) const;
  std::string locate_or_create_zone(const NavGraph& nav, Cell c, const std::vector<std::string>& preferred);
  std::vector<std::string> preferred_zones(const std::optional<std::string>& current) const;

  std::map<std::string, ModelState> states_;
  std::set<Transition> transitions_;
  std::map<Transition, std::uint64_t> transition_ticks_;
  std::vector<ZoneData> zones_;
  std::set<Connection> connections_;
  std::map<std::string, std::set<Cell>> attached_sides_;
  std::optional<Cell> start_anchor_;
};

struct AccuracyReport {
  int zones_found = 0;
  int zones_true = 0;
  int buttons_found = 0;
  int buttons_true = 0;
  int doors_found = 0;
  int doors_true = 0;
  int connections_found = 0;
  int connections_true = 0;
  int wrong_connections = 0;
  int wrong_room_buttons = 0;
  int wrong_room_doors = 0;

  bool operator==(const AccuracyReport&) const = default;
};

// Connected floor regions of the level with every door treated as a wall.
// Returns the region index per grid cell (-1 for walls and doors) and the
// region count.
std::pair<std::vector<int>, int> true_rooms(const Level& level);

AccuracyReport compare_to_ground_truth(const Model& model, const Level& level);

}  // namespace gamesearch
