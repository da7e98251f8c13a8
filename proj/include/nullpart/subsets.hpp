#pragma once

// Subsets of [n] = {1..n} as bit masks, graded reverse lexicographic order,
// and the even/odd pairing S <-> S xor {n} used to label the partition matrix.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "nullpart/errors.hpp"

namespace nullpart {

using Mask = std::uint64_t;

inline constexpr int kMaxAmbient = 63;
inline constexpr int kDefaultIndexMaxN = 20;

/// Grevlex on raw masks: larger cardinality wins; at equal cardinality the
/// set missing the highest differing element is the greater one.
constexpr std::strong_ordering grevlex_compare_masks(Mask a, Mask b) noexcept {
  if (a == b) return std::strong_ordering::equal;
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca <=> cb;
  const int top = std::bit_width(a ^ b) - 1;
  return ((a >> top) & 1U) ? std::strong_ordering::less : std::strong_ordering::greater;
}

class Subset {
 public:
  Subset() = default;

  Subset(int n, Mask mask) : n_(n), mask_(mask) {
    if (n < 0 || n > kMaxAmbient) throw LimitExceeded("subset ambient size out of range: " + std::to_string(n));
    if (n < kMaxAmbient && (mask >> n) != 0) throw std::invalid_argument("subset member outside 1..n");
  }

  static Subset empty(int n) { return Subset(n, 0); }

  static Subset of(int n, std::initializer_list<int> members) {
    return from_members(n, std::vector<int>(members));
  }

  static Subset from_members(int n, const std::vector<int>& members) {
    Mask m = 0;
    for (int e : members) {
      if (e < 1 || e > n) throw std::invalid_argument("subset member " + std::to_string(e) + " outside 1.." + std::to_string(n));
      m |= Mask{1} << (e - 1);
    }
    return Subset(n, m);
  }

  static Subset singleton(int n, int k) { return of(n, {k}); }

  int ambient() const noexcept { return n_; }
  Mask mask() const noexcept { return mask_; }
  int cardinality() const noexcept { return std::popcount(mask_); }
  bool is_even() const noexcept { return (cardinality() & 1) == 0; }
  bool empty() const noexcept { return mask_ == 0; }
  bool contains(int e) const noexcept { return e >= 1 && e <= n_ && ((mask_ >> (e - 1)) & 1U); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  /// Sorted brace list, e.g. "{1,2,5}"; the empty set renders as "{}".
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : members()) {
      if (!first) s += ',';
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  int n_ = 0;
  Mask mask_ = 0;
};

inline void require_same_ambient(const Subset& a, const Subset& b) {
  if (a.ambient() != b.ambient())
    throw AmbientMismatch("subsets over [" + std::to_string(a.ambient()) + "] and [" + std::to_string(b.ambient()) + "]");
}

inline std::strong_ordering grevlex_compare(const Subset& a, const Subset& b) {
  require_same_ambient(a, b);
  return grevlex_compare_masks(a.mask(), b.mask());
}

inline Subset symmetric_difference(const Subset& a, const Subset& b) {
  require_same_ambient(a, b);
  return Subset(a.ambient(), a.mask() ^ b.mask());
}

/// S xor {n}: flips parity and maps row labels onto their diagonal column labels.
inline Subset pair_of(const Subset& s) {
  if (s.ambient() < 1) throw LimitExceeded("pair_of needs n >= 1");
  return Subset(s.ambient(), s.mask() ^ (Mask{1} << (s.ambient() - 1)));
}

/// Even subsets (rows) and odd subsets (columns) of [n], each in descending
/// grevlex order. Index 0 is the grevlex-greatest set; rows end with the empty set.
class GrevlexIndex {
 public:
  explicit GrevlexIndex(int n, int max_n = kDefaultIndexMaxN) : n_(n) {
    if (n < 1 || n > max_n || n > 30)
      throw LimitExceeded("n = " + std::to_string(n) + " outside 1.." + std::to_string(std::min(max_n, 30)));
    const Mask total = Mask{1} << n;
    rows_.reserve(total / 2);
    cols_.reserve(total / 2);
    for (Mask m = 0; m < total; ++m) (std::popcount(m) % 2 == 0 ? rows_ : cols_).push_back(m);
    auto descending = [](Mask a, Mask b) { return grevlex_compare_masks(a, b) > 0; };
    std::sort(rows_.begin(), rows_.end(), descending);
    std::sort(cols_.begin(), cols_.end(), descending);
    position_.assign(total, 0);
    for (std::uint32_t i = 0; i < rows_.size(); ++i) position_[rows_[i]] = i;
    for (std::uint32_t i = 0; i < cols_.size(); ++i) position_[cols_[i]] = i;
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return rows_.size(); }

  Subset row(std::size_t i) const { return Subset(n_, rows_.at(i)); }
  Subset col(std::size_t i) const { return Subset(n_, cols_.at(i)); }
  Mask row_mask(std::size_t i) const noexcept { return rows_[i]; }
  Mask col_mask(std::size_t i) const noexcept { return cols_[i]; }

  const std::vector<Mask>& row_masks() const noexcept { return rows_; }
  const std::vector<Mask>& col_masks() const noexcept { return cols_; }

  std::vector<Subset> row_order() const { return to_subsets(rows_); }
  std::vector<Subset> col_order() const { return to_subsets(cols_); }

  /// Position of S in row_order (S even) or col_order (S odd).
  std::size_t rank(const Subset& s) const {
    if (s.ambient() != n_) throw AmbientMismatch("subset ambient does not match index");
    return position_[s.mask()];
  }
  std::size_t rank_of_mask(Mask m) const noexcept { return position_[m]; }

 private:
  std::vector<Subset> to_subsets(const std::vector<Mask>& masks) const {
    std::vector<Subset> out;
    out.reserve(masks.size());
    for (Mask m : masks) out.emplace_back(n_, m);
    return out;
  }

  int n_;
  std::vector<Mask> rows_;
  std::vector<Mask> cols_;
  std::vector<std::uint32_t> position_;
};

inline GrevlexIndex build_index(int n, int max_n = kDefaultIndexMaxN) { return GrevlexIndex(n, max_n); }

}  // namespace nullpart
