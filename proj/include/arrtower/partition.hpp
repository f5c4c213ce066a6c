#ifndef ARRTOWER_PARTITION_HPP
#define ARRTOWER_PARTITION_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/guard.hpp"

namespace arrtower {

/// Set partition of {1..k} in canonical form.
///
/// Blocks are stored as bit masks (bit i-1 stands for element i) ordered by
/// their least element. The total order `operator<=>` sorts by rank first
/// (more blocks come first) and then lexicographically by the sorted block
/// contents, so it is a linear extension of the refinement order.
class Partition {
 public:
  using Mask = std::uint16_t;
  static_assert(sizeof(Mask) * 8 >= kMaxGroundSize);

  Partition() = default;

  static Partition discrete(int k) {
    check_ground(k);
    Partition p;
    p.k_ = static_cast<std::uint8_t>(k);
    p.count_ = static_cast<std::uint8_t>(k);
    for (int i = 0; i < k && i < kMaxGroundSize; ++i) p.masks_[i] = static_cast<Mask>(1u << i);
    return p;
  }

  static Partition single_block(int k) {
    check_ground(k);
    Partition p;
    p.k_ = static_cast<std::uint8_t>(k);
    if (k > 0) {
      p.count_ = 1;
      p.masks_[0] = full_mask(k);
    }
    return p;
  }

  /// Builds a partition from block masks in any order. Validates that the
  /// masks are nonempty, disjoint and cover {1..k}.
  static Partition from_masks(int k, std::span<const Mask> masks) {
    check_ground(k);
    Mask seen = 0;
    for (Mask m : masks) {
      if (m == 0) throw UsageError("partition block is empty");
      if ((m & seen) != 0) throw UsageError("partition blocks overlap");
      if ((m & ~full_mask(k)) != 0)
        throw UsageError("partition block contains an element outside 1.." +
                         std::to_string(k));
      seen = static_cast<Mask>(seen | m);
    }
    if (seen != full_mask(k))
      throw UsageError("partition blocks do not cover 1.." + std::to_string(k));
    Partition p;
    p.k_ = static_cast<std::uint8_t>(k);
    p.count_ = static_cast<std::uint8_t>(masks.size());
    std::copy(masks.begin(), masks.end(), p.masks_.begin());
    p.canonicalize();
    return p;
  }

  /// Builds a partition from 1-based element lists.
  static Partition from_blocks(int k, const std::vector<std::vector<int>>& blocks) {
    std::vector<Mask> masks;
    masks.reserve(blocks.size());
    for (const auto& block : blocks) {
      Mask m = 0;
      for (int e : block) {
        if (e < 1 || e > k)
          throw UsageError("element " + std::to_string(e) + " outside 1.." +
                           std::to_string(k));
        Mask bit = static_cast<Mask>(1u << (e - 1));
        if (m & bit)
          throw UsageError("element " + std::to_string(e) + " repeated in a block");
        m = static_cast<Mask>(m | bit);
      }
      masks.push_back(m);
    }
    return from_masks(k, masks);
  }

  /// Parses the text form "(1,2,3)(4)". The ground size is the largest
  /// element, unless `k` is given explicitly.
  static Partition parse(std::string_view text, int k = -1) {
    std::vector<std::vector<int>> blocks;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    int largest = 0;
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw UsageError("expected '(' in partition text");
      ++i;
      std::vector<int> block;
      for (;;) {
        skip_ws();
        int value = 0;
        std::size_t digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          value = value * 10 + (text[i] - '0');
          if (value > 1000) throw UsageError("partition element too large");
          ++i;
          ++digits;
        }
        if (digits == 0) throw UsageError("expected an element in partition text");
        block.push_back(value);
        largest = std::max(largest, value);
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        throw UsageError("expected ',' or ')' in partition text");
      }
      blocks.push_back(std::move(block));
      skip_ws();
    }
    if (blocks.empty() && k < 0) return Partition{};
    return from_blocks(k < 0 ? largest : k, blocks);
  }

  int ground_size() const noexcept { return k_; }
  int block_count() const noexcept { return count_; }
  std::span<const Mask> masks() const noexcept { return {masks_.data(), count_}; }

  int block_size(int i) const { return std::popcount(static_cast<unsigned>(masks_[i])); }

  /// 1-based sorted element lists, in canonical block order.
  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(count_);
    for (int b = 0; b < count_; ++b)
      for (int e = 0; e < k_; ++e)
        if (masks_[b] & (1u << e)) out[b].push_back(e + 1);
    return out;
  }

  /// Every block is a singleton or has at least r elements.
  bool is_r_equal(int r) const noexcept {
    for (int b = 0; b < count_; ++b) {
      int s = block_size(b);
      if (s != 1 && s < r) return false;
    }
    return true;
  }

  bool has_singleton() const noexcept {
    for (int b = 0; b < count_; ++b)
      if (block_size(b) == 1) return true;
    return false;
  }

  std::string to_string() const {
    std::string out;
    for (int b = 0; b < count_; ++b) {
      out += '(';
      bool first = true;
      for (int e = 0; e < k_; ++e) {
        if (!(masks_[b] & (1u << e))) continue;
        if (!first) out += ',';
        out += std::to_string(e + 1);
        first = false;
      }
      out += ')';
    }
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) noexcept {
    return a.k_ == b.k_ && a.count_ == b.count_ &&
           std::equal(a.masks_.begin(), a.masks_.begin() + a.count_, b.masks_.begin());
  }

  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) noexcept {
    if (a.k_ != b.k_) return a.k_ <=> b.k_;
    if (a.count_ != b.count_) return b.count_ <=> a.count_;
    for (int i = 0; i < a.count_; ++i) {
      auto c = compare_blocks(a.masks_[i], b.masks_[i]);
      if (c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = k_;
    for (int i = 0; i < count_; ++i) h = h * 0x9E3779B97F4A7C15ull + masks_[i] + 1;
    return h;
  }

  static constexpr Mask full_mask(int k) noexcept {
    return static_cast<Mask>(k >= 16 ? 0xFFFFu : ((1u << k) - 1u));
  }

 private:
  static void check_ground(int k) {
    if (k < 0 || k > kMaxGroundSize)
      throw UsageError("ground size must lie in 0.." + std::to_string(kMaxGroundSize) +
                       ", got " + std::to_string(k));
  }

  // Lexicographic comparison of blocks read as ascending element sequences.
  static std::strong_ordering compare_blocks(Mask a, Mask b) noexcept {
    if (a == b) return std::strong_ordering::equal;
    unsigned diff = static_cast<unsigned>(a ^ b);
    unsigned low = diff & (~diff + 1u);
    unsigned above = ~((low << 1) - 1u);
    if (a & low) {
      // a has the element, b either continues with something larger or ends.
      return (b & above) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return (a & above) ? std::strong_ordering::greater : std::strong_ordering::less;
  }

  void canonicalize() noexcept {
    std::sort(masks_.begin(), masks_.begin() + count_, [](Mask x, Mask y) {
      return std::countr_zero(static_cast<unsigned>(x)) <
             std::countr_zero(static_cast<unsigned>(y));
    });
  }

  std::uint8_t k_ = 0;
  std::uint8_t count_ = 0;
  std::array<Mask, kMaxGroundSize> masks_{};
};

/// True iff every block of p lies inside some block of q.
inline bool refines(const Partition& p, const Partition& q) {
  if (p.ground_size() != q.ground_size())
    throw UsageError("refines: ground sizes differ (" + std::to_string(p.ground_size()) +
                     " vs " + std::to_string(q.ground_size()) + ")");
  for (Partition::Mask a : p.masks()) {
    bool contained = false;
    for (Partition::Mask b : q.masks()) {
      if ((a & ~b) == 0) {
        contained = true;
        break;
      }
    }
    if (!contained) return false;
  }
  return true;
}

/// Strict refinement: p refines q and p != q.
inline bool strictly_refines(const Partition& p, const Partition& q) {
  return refines(p, q) && p.block_count() > q.block_count();
}

inline int block_count(const Partition& p) noexcept { return p.block_count(); }

/// n (k - c(x)): real codimension of the diagonal subspace for x in (R^n)^k.
inline long long codimension(const Partition& p, int n) {
  if (n < 1) throw UsageError("codimension: n must be positive");
  return static_cast<long long>(n) * (p.ground_size() - p.block_count());
}

/// Block sizes in descending order (singletons included).
inline std::vector<int> interval_block_sizes(const Partition& x) {
  std::vector<int> sizes;
  sizes.reserve(x.block_count());
  for (int b = 0; b < x.block_count(); ++b) sizes.push_back(x.block_size(b));
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

namespace detail {

// Restricted-growth generation: element e either joins an existing block or
// opens a new one. Blocks of size 2..r-1 are "deficient" and must still be
// filled from the remaining elements; branches that cannot do so are cut.
class REqualGenerator {
 public:
  REqualGenerator(int k, int r, bool singleton_free) : k_(k), r_(r), singleton_free_(singleton_free) {}

  std::vector<Partition> run() {
    if (k_ == 0) {
      out_.push_back(Partition{});
      return std::move(out_);
    }
    recurse(0);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  // Elements still needed to make every block valid.
  int deficit() const {
    int need = 0;
    for (int b = 0; b < count_; ++b) {
      int s = sizes_[b];
      if (singleton_free_) {
        if (s < r_) need += r_ - s;
      } else if (s > 1 && s < r_) {
        need += r_ - s;
      }
    }
    return need;
  }

  void recurse(int e) {
    if (deficit() > k_ - e) return;
    if (e == k_) {
      out_.push_back(Partition::from_masks(k_, std::span<const Partition::Mask>(masks_.data(), count_)));
      return;
    }
    auto bit = static_cast<Partition::Mask>(1u << e);
    for (int b = 0; b < count_; ++b) {
      masks_[b] = static_cast<Partition::Mask>(masks_[b] | bit);
      ++sizes_[b];
      recurse(e + 1);
      --sizes_[b];
      masks_[b] = static_cast<Partition::Mask>(masks_[b] & ~bit);
    }
    masks_[count_] = bit;
    sizes_[count_] = 1;
    ++count_;
    recurse(e + 1);
    --count_;
    masks_[count_] = 0;
    sizes_[count_] = 0;
  }

  int k_;
  int r_;
  bool singleton_free_;
  int count_ = 0;
  std::array<Partition::Mask, kMaxGroundSize> masks_{};
  std::array<int, kMaxGroundSize> sizes_{};
  std::vector<Partition> out_;
};

inline void check_kr(int k, int r, const SizeGuard& guard) {
  if (k < 0) throw UsageError("k must be nonnegative, got " + std::to_string(k));
  if (r < 2) throw UsageError("r must be at least 2, got " + std::to_string(r));
  guard.check_k(k);
}

}  // namespace detail

/// All r-equal partitions of {1..k} in canonical order.
inline std::vector<Partition> enumerate_r_equal_partitions(int k, int r,
                                                           const SizeGuard& guard = default_guard()) {
  detail::check_kr(k, r, guard);
  return detail::REqualGenerator(k, r, false).run();
}

/// Partitions of {1..k} all of whose blocks have at least r elements.
inline std::vector<Partition> singleton_free_elements(int k, int r,
                                                      const SizeGuard& guard = default_guard()) {
  detail::check_kr(k, r, guard);
  if (k < r) return {};
  return detail::REqualGenerator(k, r, true).run();
}

}  // namespace arrtower

template <>
struct std::hash<arrtower::Partition> {
  std::size_t operator()(const arrtower::Partition& p) const noexcept { return p.hash(); }
};

#endif  // ARRTOWER_PARTITION_HPP
