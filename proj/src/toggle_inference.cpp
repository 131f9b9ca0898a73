#include "gamesearch/toggle_inference.hpp"

#include <bit>

namespace gamesearch {

std::size_t ToggleInference::index_of(const std::string& interactable) {
  const auto [it, inserted] = index_.emplace(interactable, names_.size());
  if (inserted) names_.push_back(interactable);
  return it->second;
}

bool ToggleInference::test(const Bits& b, std::size_t k) { return k / 64 < b.size() && (b[k / 64] >> (k % 64) & 1u); }

void ToggleInference::flip(Bits& b, std::size_t k) {
  if (b.size() <= k / 64) b.resize(k / 64 + 1, 0);
  b[k / 64] ^= std::uint64_t{1} << (k % 64);
}

void ToggleInference::xor_into(Bits& dst, const Bits& src) {
  if (dst.size() < src.size()) dst.resize(src.size(), 0);
  for (std::size_t w = 0; w < src.size(); ++w) dst[w] ^= src[w];
}

std::optional<std::size_t> ToggleInference::lowest(const Bits& b) {
  for (std::size_t w = 0; w < b.size(); ++w)
    if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
  return std::nullopt;
}

std::size_t ToggleInference::popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void ToggleInference::interaction(const std::string& interactable) {
  flip(parity_, index_of(interactable));
  ++interactions_;
}

void ToggleInference::add_equation(BlockerData& d, Bits bits, bool rhs) {
  for (const auto& [pivot, row] : d.rows) {
    if (test(bits, pivot)) {
      xor_into(bits, row.bits);
      rhs ^= row.rhs;
    }
  }
  const auto pivot = lowest(bits);
  if (!pivot) return;  // implied by what is already known
  for (auto& [p, row] : d.rows) {
    if (test(row.bits, *pivot)) {
      xor_into(row.bits, bits);
      row.rhs ^= rhs;
    }
  }
  d.rows[*pivot] = Row{std::move(bits), rhs};
  for (const auto& [p, row] : d.rows)
    if (popcount(row.bits) == 1) d.determined[p] = row.rhs;
}

std::vector<std::pair<std::string, std::string>> ToggleInference::sighting(const std::string& blocker, bool open) {
  std::vector<std::pair<std::string, std::string>> proven;
  const auto it = blockers_.find(blocker);
  if (it == blockers_.end()) {
    blockers_[blocker] = BlockerData{parity_, open, {}, {}};
    return proven;
  }
  BlockerData& d = it->second;
  Bits window = parity_;
  xor_into(window, d.parity_at_sighting);
  const bool changed = d.open != open;
  d.parity_at_sighting = parity_;
  d.open = open;
  if (!lowest(window)) return proven;

  const auto before = d.determined;
  add_equation(d, std::move(window), changed);
  for (const auto& [k, value] : d.determined) {
    if (!value) continue;
    const auto b = before.find(k);
    if (b == before.end() || !b->second) proven.emplace_back(names_[k], blocker);
  }
  return proven;
}

std::optional<bool> ToggleInference::wired(const std::string& interactable, const std::string& blocker) const {
  const auto b = blockers_.find(blocker);
  const auto i = index_.find(interactable);
  if (b == blockers_.end() || i == index_.end()) return std::nullopt;
  const auto it = b->second.determined.find(i->second);
  if (it == b->second.determined.end()) return std::nullopt;
  return it->second;
}

}  // namespace gamesearch
