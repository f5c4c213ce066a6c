#ifndef ARRTOWER_ARRANGEMENT_HPP
#define ARRTOWER_ARRANGEMENT_HPP

#include <limits>
#include <string>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/graded_group.hpp"
#include "arrtower/guard.hpp"
#include "arrtower/interval_homology.hpp"
#include "arrtower/lattice.hpp"
#include "arrtower/partition.hpp"

namespace arrtower {

/// Contribution of one lattice element x > 0 to the cohomology of the
/// arrangement complement: H~_d(0, x) lands in cohomological degree
/// codim(x) - 2 - d.
struct LedgerRecord {
  Partition x;
  GradedGroup interval_homology;
  long long codim = 0;
  GradedGroup contributions;
};

using ContributionLedger = std::vector<LedgerRecord>;

namespace detail {

inline void check_krn(int k, int r, int n, const SizeGuard& guard) {
  if (k < 0) throw UsageError("k must be nonnegative, got " + std::to_string(k));
  if (r < 2) throw UsageError("r must be at least 2, got " + std::to_string(r));
  if (n < 1) throw UsageError("n must be positive, got " + std::to_string(n));
  guard.check_k(k);
}

inline int cohomological_degree(long long codim, int homological_degree) {
  long long i = codim - 2 - homological_degree;
  if (i > std::numeric_limits<int>::max() || i < std::numeric_limits<int>::min())
    throw ResourceError("cohomological degree out of range", std::numeric_limits<int>::max());
  return static_cast<int>(i);
}

inline LedgerRecord make_record(const Partition& x, int r, int n, IntervalHomology& intervals) {
  LedgerRecord rec;
  rec.x = x;
  rec.interval_homology = intervals.of(x, r);
  rec.codim = codimension(x, n);
  for (const auto& [d, c] : rec.interval_homology.components())
    rec.contributions.add(cohomological_degree(rec.codim, d), c);
  return rec;
}

}  // namespace detail

/// Per-element breakdown of the Goresky-MacPherson sum for rConf(k, R^n),
/// one record for every x != 0 of Pi_{k,r}, in canonical order.
inline ContributionLedger contribution_ledger(int k, int r, int n, IntervalHomology& intervals) {
  detail::check_krn(k, r, n, intervals.guard());
  ContributionLedger ledger;
  RLattice lat(k, r, intervals.guard());
  for (std::size_t i = 1; i < lat.size(); ++i)
    ledger.push_back(detail::make_record(lat[i], r, n, intervals));
  return ledger;
}

/// Reduced integral cohomology of the no-r-equal configuration space
/// rConf(k, R^n):  H~^i = sum over x > 0 of H~_{codim(x)-2-i}(0, x).
/// Contributions of different x in the same degree add.
inline GradedGroup gm_cohomology(int k, int r, int n, IntervalHomology& intervals) {
  GradedGroup total;
  for (const auto& rec : contribution_ledger(k, r, n, intervals)) total += rec.contributions;
  return total;
}

/// Cohomology of the total fiber of the restriction cube
/// S -> rConf({1..k} \ S, R^n): the same sum restricted to partitions
/// without singletons.
inline GradedGroup tfiber_cohomology(int k, int r, int n, IntervalHomology& intervals) {
  detail::check_krn(k, r, n, intervals.guard());
  if (k < 1) throw UsageError("k must be positive, got " + std::to_string(k));
  GradedGroup total;
  for (const Partition& x : singleton_free_elements(k, r, intervals.guard()))
    total += detail::make_record(x, r, n, intervals).contributions;
  return total;
}

}  // namespace arrtower

#endif  // ARRTOWER_ARRANGEMENT_HPP
