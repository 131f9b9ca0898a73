#include <gtest/gtest.h>

#include <random>

#include "gamesearch/model.hpp"
#include "support.hpp"

using namespace gamesearch;

namespace {

using Matrix = std::vector<std::vector<bool>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) out[i][j] = true;
  return out;
}

struct Built {
  Level level;
  NavGraph nav;
  Model model;
};

Built build(const std::string& text) {
  Built b{parse_level(text), {}, Model{}};
  b.model = Model(b.level.agent_start);
  b.nav = NavGraph(b.level.grid.rows(), b.level.grid.cols());
  const Observation obs = fixtures::full_observation(b.level, init(b.level));
  b.nav.integrate(obs);
  b.model.update_state_graph(obs, std::nullopt, b.nav);
  return b;
}

}  // namespace

// neighbor and room_reachability against a transitive closure computed from
// the true room adjacency, on every zone pair and every k.
TEST(Model, ReachabilityMatchesBruteForceClosure) {
  std::mt19937_64 rng(99);
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 2}, {1, 5}, {2, 3}, {3, 2}, {2, 4}, {1, 8}};
  int models = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const auto [gr, gc] = shapes[trial % std::size(shapes)];
    const auto grid = fixtures::room_grid(rng, gr, gc, 0.65, 0.3);
    const Built b = build(grid.text);
    const auto [room_of, room_count] = true_rooms(b.level);
    ASSERT_EQ(room_count, grid.rooms);

    const auto zones = b.model.zones();
    ASSERT_EQ(static_cast<int>(zones.size()), grid.rooms) << grid.text;
    std::vector<int> room(zones.size());
    for (std::size_t z = 0; z < zones.size(); ++z)
      room[z] = room_of[b.level.grid.index(b.model.zone_anchors(zones[z].id).front())];

    const std::size_t n = zones.size();
    Matrix adj(n, std::vector<bool>(n));
    for (const auto& [a, c] : grid.doors)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if ((room[i] == a && room[j] == c) || (room[i] == c && room[j] == a)) adj[i][j] = true;

    Matrix within(n, std::vector<bool>(n));  // reachable in <= k steps
    for (std::size_t i = 0; i < n; ++i) within[i][i] = true;
    for (int k = 1; k <= 8; ++k) {
      Matrix next = multiply(within, adj);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || within[i][j];
      within = std::move(next);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (k == 1 && i != j) ASSERT_EQ(b.model.neighbor(zones[i].id, zones[j].id), bool(adj[i][j]));
          ASSERT_EQ(b.model.room_reachability(k, zones[i].id, zones[j].id), bool(within[i][j]))
              << "k=" << k << " " << zones[i].id << " " << zones[j].id << "\n" << grid.text;
        }
    }
    ++models;
  }
  EXPECT_EQ(models, 240);
}

TEST(Model, DoorsSitInTwoZones) {
  std::mt19937_64 rng(3);
  const auto grid = fixtures::room_grid(rng, 2, 3, 1.0, 0.0);
  const Built b = build(grid.text);
  for (const auto& [id, st] : b.model.states()) {
    if (st.tag == StateTag::Blocker)
      EXPECT_EQ(b.model.zones_of(id).size(), 2u) << id;
    else
      EXPECT_EQ(b.model.zones_of(id).size(), 1u) << id;
  }
  EXPECT_THROW(b.model.room_reachability(0, "R1", "R1"), std::invalid_argument);
  EXPECT_THROW(b.model.neighbor("R1", "nope"), UnknownZone);
}

TEST(Model, DumpIsSortedAndComplete) {
  const Level l = parse_level(
      "[grid]\n#########\n#@1.#...#\n#...D...#\n#########\n[objects]\n1 = button b1\nD = door d1\n[wiring]\nb1 -> d1\n");
  Model m(l.agent_start);
  NavGraph nav(l.grid.rows(), l.grid.cols());
  const Observation obs = fixtures::full_observation(l, init(l));
  nav.integrate(obs);
  m.update_state_graph(obs, std::nullopt, nav);
  m.record_connection("b1", {"d1"});
  EXPECT_THROW(m.record_connection("d1", {"b1"}), std::invalid_argument);
  const std::string dump = m.dump();
  EXPECT_NE(dump.find("STATE b1 Interactable\n"), std::string::npos);
  EXPECT_NE(dump.find("STATE d1 Blocker\n"), std::string::npos);
  EXPECT_NE(dump.find("CONN b1 -> d1\n"), std::string::npos);
  EXPECT_NE(dump.find("ZONE "), std::string::npos);
  std::vector<std::string> lines;
  std::string line;
  for (char c : dump) {
    if (c == '\n') {
      lines.push_back(line);
      line.clear();
    } else {
      line += c;
    }
  }
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
  EXPECT_EQ(m.predicted_toggles("b1"), std::set<std::string>{"d1"});
  EXPECT_EQ(m.connected_enablers("d1", l.agent_start), std::vector<std::string>{"b1"});
}

TEST(Model, AccuracyAgainstGroundTruth) {
  std::mt19937_64 rng(11);
  const auto grid = fixtures::room_grid(rng, 2, 2, 1.0, 0.0);
  const Built b = build(grid.text);
  const AccuracyReport acc = compare_to_ground_truth(b.model, b.level);
  EXPECT_EQ(acc.zones_found, 4);
  EXPECT_EQ(acc.zones_true, 4);
  EXPECT_EQ(acc.wrong_room_buttons, 0);
  EXPECT_EQ(acc.wrong_room_doors, 0);
  EXPECT_EQ(acc.wrong_connections, 0);
}
