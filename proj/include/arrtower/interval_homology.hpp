#ifndef ARRTOWER_INTERVAL_HOMOLOGY_HPP
#define ARRTOWER_INTERVAL_HOMOLOGY_HPP

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/graded_group.hpp"
#include "arrtower/guard.hpp"
#include "arrtower/homology.hpp"
#include "arrtower/lattice.hpp"
#include "arrtower/partition.hpp"
#include "arrtower/simplicial_complex.hpp"

namespace arrtower {

enum class VerificationMode {
  fast,     ///< join formula over memoised base groups
  checked,  ///< join formula and direct Smith reduction, compared
};

/// Sizes of the non-singleton blocks of x, descending. Two partitions with
/// the same profile have isomorphic lower intervals.
inline std::vector<int> block_profile(const Partition& x) {
  std::vector<int> sizes;
  for (int s : interval_block_sizes(x))
    if (s > 1) sizes.push_back(s);
  return sizes;
}

/// Order complex of (0, x) in Pi_{k,r}, built by filtering the full
/// enumeration of r-equal partitions of the ground set of x.
inline SimplicialComplex lower_interval_complex(const Partition& x, int r,
                                                const SizeGuard& guard = default_guard()) {
  if (!x.is_r_equal(r))
    throw UsageError(x.to_string() + " is not an r-equal partition for r=" + std::to_string(r));
  int k = x.ground_size();
  std::vector<Partition> inside;
  for (const Partition& z : enumerate_r_equal_partitions(k, r, guard))
    if (z.block_count() < k && z.block_count() > x.block_count() && refines(z, x)) inside.push_back(z);
  return order_complex(inside, guard.max_faces);
}

/// Reduced homology of (0, x) by direct Smith reduction of its order complex.
inline GradedGroup direct_interval_homology(const Partition& x, int r,
                                            const SizeGuard& guard = default_guard()) {
  if (x.block_count() == x.ground_size())
    throw UsageError("the interval (0, 0) is not defined");
  return reduced_homology(lower_interval_complex(x, r, guard));
}

/// Memoised reduced homology of lower intervals (0, x) in r-equal lattices.
///
/// Results are cached per (r, block profile). Proper parts of whole lattices
/// Pi_{s,r} are always computed by Smith reduction; multi-block profiles use
/// the join formula, and in checked mode are also reduced directly and
/// compared. Safe for concurrent use.
class IntervalHomology {
 public:
  explicit IntervalHomology(VerificationMode mode = VerificationMode::fast,
                            SizeGuard guard = default_guard())
      : mode_(mode), guard_(guard) {}

  VerificationMode mode() const noexcept { return mode_; }
  const SizeGuard& guard() const noexcept { return guard_; }

  /// Reduced homology of the proper part of Pi_{s,r} (requires s >= r).
  GradedGroup proper_part(int s, int r) {
    if (s < r)
      throw UsageError("Pi_{" + std::to_string(s) + "," + std::to_string(r) +
                       "} has no proper part (one element)");
    return lookup({s}, r);
  }

  /// Reduced homology of (0, x).
  GradedGroup of(const Partition& x, int r) {
    if (!x.is_r_equal(r))
      throw UsageError(x.to_string() + " is not an r-equal partition for r=" + std::to_string(r));
    auto profile = block_profile(x);
    if (profile.empty()) throw UsageError("the interval (0, 0) is not defined");
    return lookup(profile, r);
  }

  std::size_t cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
  }

 private:
  using Key = std::pair<int, std::vector<int>>;

  static Partition representative(const std::vector<int>& profile) {
    int k = std::accumulate(profile.begin(), profile.end(), 0);
    std::vector<Partition::Mask> masks;
    int next = 0;
    for (int s : profile) {
      Partition::Mask m = 0;
      for (int i = 0; i < s; ++i) m = static_cast<Partition::Mask>(m | (1u << next++));
      masks.push_back(m);
    }
    return Partition::from_masks(k, masks);
  }

  // Each key is computed once; concurrent callers wait on the same result.
  GradedGroup lookup(const std::vector<int>& profile, int r) {
    Key key{r, profile};
    std::promise<GradedGroup> promise;
    std::shared_future<GradedGroup> result;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        result = it->second;
      } else {
        result = promise.get_future().share();
        cache_.emplace(key, result);
        owner = true;
      }
    }
    if (!owner) return result.get();
    try {
      promise.set_value(compute(profile, r));
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard lock(mutex_);
      cache_.erase(key);
    }
    return result.get();
  }

  GradedGroup compute(const std::vector<int>& profile, int r) {
    Partition x = representative(profile);
    guard_.check_k(x.ground_size());
    if (profile.size() == 1) return direct_interval_homology(x, r, guard_);
    std::map<int, GradedGroup> base;
    for (int s : profile)
      if (!base.contains(s)) base.emplace(s, lookup({s}, r));
    GradedGroup joined;
    try {
      joined = homology_of_interval_via_join(profile, base);
    } catch (const TorsionError&) {
      return direct_interval_homology(x, r, guard_);
    }
    if (mode_ == VerificationMode::checked) {
      GradedGroup direct = direct_interval_homology(x, r, guard_);
      if (!(direct == joined))
        throw IntegrityError("interval homology mismatch for " + x.to_string() + ": join " +
                             joined.to_string() + ", direct " + direct.to_string());
    }
    return joined;
  }

  VerificationMode mode_;
  SizeGuard guard_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_future<GradedGroup>> cache_;
};

}  // namespace arrtower

#endif  // ARRTOWER_INTERVAL_HOMOLOGY_HPP
