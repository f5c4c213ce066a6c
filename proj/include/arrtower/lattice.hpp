#ifndef ARRTOWER_LATTICE_HPP
#define ARRTOWER_LATTICE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/guard.hpp"
#include "arrtower/partition.hpp"

namespace arrtower {

/// The intersection lattice of the r-equal arrangement in (R^n)^k, realised
/// as the poset of r-equal partitions of {1..k} ordered by refinement.
///
/// Elements are kept in canonical order, which is a linear extension of the
/// refinement order: index 0 is the discrete partition and, when k >= r, the
/// last index is the one-block partition. The strict-order table is
/// materialised for k <= kTableMaxK and evaluated on demand above that.
class RLattice {
 public:
  static constexpr int kTableMaxK = 8;

  RLattice(int k, int r, const SizeGuard& guard = default_guard())
      : k_(k), r_(r), guard_(guard), elements_(enumerate_r_equal_partitions(k, r, guard)) {
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    if (k <= kTableMaxK) build_table();
  }

  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  const SizeGuard& guard() const noexcept { return guard_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Partition>& elements() const noexcept { return elements_; }
  const Partition& operator[](std::size_t i) const { return elements_[i]; }

  const Partition& bottom() const { return elements_.front(); }
  const Partition& top() const { return elements_.back(); }

  std::optional<std::size_t> index_of(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Partition& p) const { return index_.contains(p); }

  /// Strict order by index.
  bool less(std::size_t i, std::size_t j) const {
    if (!table_.empty()) {
      std::size_t bit = i * size() + j;
      return (table_[bit >> 6] >> (bit & 63)) & 1u;
    }
    return i != j && elements_[i].block_count() > elements_[j].block_count() &&
           refines(elements_[i], elements_[j]);
  }

  bool leq(std::size_t i, std::size_t j) const { return i == j || less(i, j); }

  /// Indices of all z with x < z < y, ascending.
  std::vector<std::size_t> open_interval_indices(std::size_t x, std::size_t y) const {
    if (!less(x, y))
      throw UsageError("open interval: " + elements_[x].to_string() +
                       " does not strictly refine " + elements_[y].to_string());
    std::vector<std::size_t> out;
    for (std::size_t z = x + 1; z < y; ++z)
      if (less(x, z) && less(z, y)) out.push_back(z);
    return out;
  }

  /// Pairs (i, j) with j covering i, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const {
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < size(); ++i) {
      std::vector<std::size_t> above;
      for (std::size_t j = i + 1; j < size(); ++j)
        if (less(i, j)) above.push_back(j);
      // above is sorted along a linear extension, so a minimal element can
      // only be preceded by elements it is not comparable to.
      for (std::size_t a = 0; a < above.size(); ++a) {
        bool minimal = true;
        for (std::size_t b = 0; b < a && minimal; ++b)
          if (less(above[b], above[a])) minimal = false;
        if (minimal) covers.emplace_back(i, above[a]);
      }
    }
    return covers;
  }

 private:
  void build_table() {
    std::size_t n = size();
    table_.assign((n * n + 63) / 64, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (elements_[i].block_count() > elements_[j].block_count() &&
            refines(elements_[i], elements_[j])) {
          std::size_t bit = i * n + j;
          table_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
  }

  int k_;
  int r_;
  SizeGuard guard_;
  std::vector<Partition> elements_;
  std::unordered_map<Partition, std::size_t> index_;
  std::vector<std::uint64_t> table_;
};

/// All z in the lattice with x < z < y, in canonical order.
inline std::vector<Partition> open_interval(const RLattice& lat, const Partition& x,
                                            const Partition& y) {
  auto ix = lat.index_of(x);
  auto iy = lat.index_of(y);
  if (!ix || !iy)
    throw UsageError("open interval: endpoints must be elements of the lattice Pi_{" +
                     std::to_string(lat.k()) + "," + std::to_string(lat.r()) + "}");
  std::vector<Partition> out;
  for (std::size_t z : lat.open_interval_indices(*ix, *iy)) out.push_back(lat[z]);
  return out;
}

/// Lattice elements whose non-singleton blocks all lie inside `subset`
/// (a mask over {1..k}). These are the images of Pi_{T,r} under adding
/// singletons.
inline std::vector<Partition> restriction_image_summands(const RLattice& lat,
                                                         Partition::Mask subset) {
  std::vector<Partition> out;
  for (const Partition& p : lat.elements()) {
    bool inside = true;
    for (int b = 0; b < p.block_count() && inside; ++b)
      if (p.block_size(b) > 1 && (p.masks()[b] & ~subset) != 0) inside = false;
    if (inside) out.push_back(p);
  }
  return out;
}

/// Overload taking 1-based elements of T.
inline std::vector<Partition> restriction_image_summands(int k, int r, const std::vector<int>& subset,
                                                         const SizeGuard& guard = default_guard()) {
  Partition::Mask mask = 0;
  for (int e : subset) {
    if (e < 1 || e > k)
      throw UsageError("restriction subset element " + std::to_string(e) + " outside 1.." +
                       std::to_string(k));
    mask = static_cast<Partition::Mask>(mask | (1u << (e - 1)));
  }
  return restriction_image_summands(RLattice(k, r, guard), mask);
}

/// Inserts the elements of `x` (a partition of a smaller ground set) into
/// {1..k} at the positions listed in `positions` (0-based, ascending) and adds
/// every other element of {1..k} as a singleton.
inline Partition embed_with_singletons(const Partition& x, int k,
                                       const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != x.ground_size())
    throw UsageError("embed_with_singletons: position count differs from ground size");
  std::vector<Partition::Mask> masks;
  Partition::Mask used = 0;
  for (Partition::Mask m : x.masks()) {
    Partition::Mask out = 0;
    for (int e = 0; e < x.ground_size(); ++e)
      if (m & (1u << e)) out = static_cast<Partition::Mask>(out | (1u << positions[e]));
    used = static_cast<Partition::Mask>(used | out);
    masks.push_back(out);
  }
  for (int e = 0; e < k; ++e)
    if (!(used & (1u << e))) masks.push_back(static_cast<Partition::Mask>(1u << e));
  return Partition::from_masks(k, masks);
}

}  // namespace arrtower

#endif  // ARRTOWER_LATTICE_HPP
