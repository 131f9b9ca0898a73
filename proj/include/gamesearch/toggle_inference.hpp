#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gamesearch {

// Learns which interactables toggle which blockers from what was actually
// seen. Blockers change only through interactions, so two consecutive
// sightings of a blocker give one equation over GF(2): the wiring bits of the
// interactables used an odd number of times in between sum to "it changed".
// A pair is reported only once the equations force its bit to 1.
class ToggleInference {
 public:
  void interaction(const std::string& interactable);

  // Returns the (interactable, blocker) pairs newly proven by this sighting.
  std::vector<std::pair<std::string, std::string>> sighting(const std::string& blocker, bool open);

  // Determined wiring bit, if the evidence fixes it.
  std::optional<bool> wired(const std::string& interactable, const std::string& blocker) const;

  std::size_t interactions() const noexcept { return interactions_; }

 private:
  using Bits = std::vector<std::uint64_t>;
  struct Row {
    Bits bits;
    bool rhs = false;
  };
  struct BlockerData {
    Bits parity_at_sighting;
    bool open = false;
    std::map<std::size_t, Row> rows;  // reduced row echelon form, keyed by pivot
    std::map<std::size_t, bool> determined;
  };

  std::size_t index_of(const std::string& interactable);
  static bool test(const Bits& b, std::size_t k);
  static void flip(Bits& b, std::size_t k);
  static void xor_into(Bits& dst, const Bits& src);
  static std::optional<std::size_t> lowest(const Bits& b);
  static std::size_t popcount(const Bits& b);
  void add_equation(BlockerData& d, Bits bits, bool rhs);

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  Bits parity_;
  std::size_t interactions_ = 0;
  std::map<std::string, BlockerData> blockers_;
};

}  // namespace gamesearch
