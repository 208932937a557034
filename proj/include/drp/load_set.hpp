#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace drp {

inline constexpr int kMaxRequests = 192;

// Fixed-width bitmask over request ids 1..kMaxRequests (bit r-1).
class LoadSet {
 public:
  static constexpr int kWords = kMaxRequests / 64;

  LoadSet() = default;
  static LoadSet of(std::initializer_list<int> ids) {
    LoadSet s;
    for (int r : ids) s.insert(r);
    return s;
  }

  void insert(int r) { w_[(r - 1) >> 6] |= bit(r); }
  void erase(int r) { w_[(r - 1) >> 6] &= ~bit(r); }
  bool contains(int r) const { return (w_[(r - 1) >> 6] & bit(r)) != 0; }
  LoadSet with(int r) const {
    LoadSet s = *this;
    s.insert(r);
    return s;
  }
  LoadSet without(int r) const {
    LoadSet s = *this;
    s.erase(r);
    return s;
  }

  int size() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  // Largest member, 0 when empty.
  int max_element() const {
    for (int k = kWords - 1; k >= 0; --k)
      if (w_[k]) return k * 64 + 64 - std::countl_zero(w_[k]);
    return 0;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (int k = 0; k < kWords; ++k)
      for (auto w = w_[k]; w; w &= w - 1) out.push_back(k * 64 + std::countr_zero(w) + 1);
    return out;
  }
  bool subset_of(const LoadSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  std::string hex() const;
  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : w_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }

  bool operator==(const LoadSet&) const = default;
  // Numeric order of the bitmask.
  std::strong_ordering operator<=>(const LoadSet& o) const {
    for (int k = kWords - 1; k >= 0; --k)
      if (w_[k] != o.w_[k]) return w_[k] <=> o.w_[k];
    return std::strong_ordering::equal;
  }

 private:
  static std::uint64_t bit(int r) { return std::uint64_t{1} << ((r - 1) & 63); }
  std::array<std::uint64_t, kWords> w_{};
};

struct LoadSetHash {
  std::size_t operator()(const LoadSet& s) const { return s.hash(); }
};

}  // namespace drp
