#ifndef ARRTOWER_CONNECTIVITY_HPP
#define ARRTOWER_CONNECTIVITY_HPP

#include <algorithm>
#include <optional>
#include <string>

#include <boost/rational.hpp>

#include "arrtower/arrangement.hpp"
#include "arrtower/error.hpp"
#include "arrtower/graded_group.hpp"
#include "arrtower/guard.hpp"
#include "arrtower/interval_homology.hpp"
#include "arrtower/partition.hpp"

namespace arrtower {

using Rational = boost::rational<long long>;

/// A connectivity or cartesian-ness number, possibly infinite.
class Connectivity {
 public:
  Connectivity() = default;
  explicit Connectivity(long long v) : value_(v) {}
  static Connectivity infinite() { return Connectivity{}; }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  long long value() const {
    if (!value_) throw UsageError("connectivity is infinite");
    return *value_;
  }
  std::string to_string() const { return value_ ? std::to_string(*value_) : "infinite"; }

  friend bool operator==(const Connectivity&, const Connectivity&) = default;

 private:
  std::optional<long long> value_;
};

/// Sign of r - n - 1.
enum class Regime { below, borderline, above };

inline Regime regime(int r, int n) {
  if (r < n + 1) return Regime::below;
  if (r == n + 1) return Regime::borderline;
  return Regime::above;
}

inline std::string to_string(Regime g) {
  switch (g) {
    case Regime::below: return "r<n+1";
    case Regime::borderline: return "r=n+1";
    case Regime::above: return "r>n+1";
  }
  return "?";
}

namespace detail {

inline void check_query(int k, int r, int n) {
  if (k < 1) throw UsageError("k must be at least 1, got " + std::to_string(k));
  if (r < 2) throw UsageError("r must be at least 2, got " + std::to_string(r));
  if (n < 1) throw UsageError("n must be at least 1, got " + std::to_string(n));
}

inline long long cartesian_small_r(long long k, long long r, long long n) {
  return k * (n - 1) + (k / r) * (r - n - 1);
}

inline long long cartesian_large_r(long long k, long long r, long long n) {
  return k * (n - 1) + r - n - 1;
}

}  // namespace detail

/// How cartesian the restriction cube S -> H Z ^ rConf({1..k} \ S, R^n) is:
///   r <= n+1:  k(n-1) + floor(k/r)(r-n-1)
///   r >= n+1:  k(n-1) + r-n-1
/// Infinite for k < r (every vertex is contractible).
inline Connectivity cartesianness_closed_form(int k, int r, int n) {
  detail::check_query(k, r, n);
  if (k < r) return Connectivity::infinite();
  long long small = detail::cartesian_small_r(k, r, n);
  long long large = detail::cartesian_large_r(k, r, n);
  switch (regime(r, n)) {
    case Regime::below: return Connectivity(small);
    case Regime::above: return Connectivity(large);
    case Regime::borderline:
      if (small != large)
        throw IntegrityError("cartesian-ness formulas disagree at r = n + 1");
      return Connectivity(small);
  }
  return Connectivity(small);
}

/// Minimum of k(n-1) + c(x)(r-n-1) over partitions x of {1..k} with all
/// blocks of size >= r; infinite when there are none.
inline Connectivity cartesianness_bruteforce(int k, int r, int n,
                                             const SizeGuard& guard = default_guard()) {
  detail::check_query(k, r, n);
  std::optional<long long> best;
  for (const Partition& x : singleton_free_elements(k, r, guard)) {
    long long i = static_cast<long long>(k) * (n - 1) +
                  static_cast<long long>(x.block_count()) * (r - n - 1);
    if (!best || i < *best) best = i;
  }
  return best ? Connectivity(*best) : Connectivity::infinite();
}

/// Lowest degree carrying a nonzero group; infinite for the zero group.
inline Connectivity minimal_nonzero_degree(const GradedGroup& g) {
  auto d = g.min_degree();
  return d ? Connectivity(*d) : Connectivity::infinite();
}

/// Connectivity of the layer map p_k in the regime r <= n+1, evaluated as
///   k (n(r-1)/r - m - 1/r) - ((k mod r)/r)(r-n-1)
/// in exact rational arithmetic.
inline Rational layer_connectivity_rational(int k, int r, int n, int m) {
  Rational kk(k), rr(r), nn(n), mm(m);
  Rational k_mod_r(k - r * (k / r));
  return kk * (nn * (rr - 1) / rr - mm - Rational(1) / rr) - (k_mod_r / rr) * (rr - nn - 1);
}

/// Connectivity of p_k: T_k -> T_{k-1} for the homological r-immersion
/// tower of an m-manifold in R^n. Evaluated by the regime formula and
/// checked against cartesian-ness minus mk; infinite for k < r.
inline Connectivity layer_connectivity(int k, int r, int n, int m) {
  if (k < 2) throw UsageError("layer connectivity needs k >= 2, got " + std::to_string(k));
  if (n < 2) throw UsageError("layer connectivity needs n >= 2, got " + std::to_string(n));
  if (m < 0) throw UsageError("m must be nonnegative, got " + std::to_string(m));
  detail::check_query(k, r, n);
  if (k < r) return Connectivity::infinite();

  std::optional<long long> small, large;
  if (r <= n + 1) {
    Rational q = layer_connectivity_rational(k, r, n, m);
    if (q.denominator() != 1)
      throw IntegrityError("layer connectivity is not integral: " + std::to_string(q.numerator()) +
                           "/" + std::to_string(q.denominator()));
    small = q.numerator();
  }
  if (r >= n + 1) large = static_cast<long long>(k) * (n - m - 1) + r - n - 1;
  if (small && large && *small != *large)
    throw IntegrityError("layer connectivity formulas disagree at r = n + 1");
  long long value = small ? *small : *large;

  long long via_cube = cartesianness_closed_form(k, r, n).value() - static_cast<long long>(m) * k;
  if (via_cube != value)
    throw IntegrityError("layer connectivity " + std::to_string(value) +
                         " differs from cartesian-ness - mk = " + std::to_string(via_cube));
  return Connectivity(value);
}

struct ConvergenceVerdict {
  bool converges = false;
  Regime regime = Regime::below;
  /// Threshold t in the criterion n > t.
  Rational threshold;
  std::string criterion;
};

/// Intrinsic convergence of the tower: for r <= n+1 it converges when
/// n > (rm+1)/(r-1); for r >= n+1 when n > m+1. Both criteria are evaluated
/// at r = n+1 and must agree.
inline ConvergenceVerdict intrinsic_convergence(int r, int n, int m) {
  if (r < 2) throw UsageError("r must be at least 2, got " + std::to_string(r));
  if (n < 2) throw UsageError("intrinsic convergence needs n >= 2, got " + std::to_string(n));
  if (m < 0) throw UsageError("m must be nonnegative, got " + std::to_string(m));
  ConvergenceVerdict v;
  v.regime = regime(r, n);
  Rational small_threshold(static_cast<long long>(r) * m + 1, r - 1);
  Rational large_threshold(m + 1);
  bool small = Rational(n) > small_threshold;
  bool large = Rational(n) > large_threshold;
  auto describe = [&](const Rational& t) {
    std::string s = "n > " + std::to_string(t.numerator());
    if (t.denominator() != 1) s += "/" + std::to_string(t.denominator());
    return s;
  };
  if (r < n + 1) {
    v.converges = small;
    v.threshold = small_threshold;
  } else if (r > n + 1) {
    v.converges = large;
    v.threshold = large_threshold;
  } else {
    if (small != large) throw IntegrityError("convergence criteria disagree at r = n + 1");
    v.converges = small;
    v.threshold = large_threshold;
  }
  v.criterion = describe(v.threshold) + (v.converges ? " holds" : " fails");
  return v;
}

enum class ComparisonClass {
  towers_constant,
  isomorphism,
  epimorphism,
  no_conclusion,
  classical_case,
};

inline std::string to_string(ComparisonClass c) {
  switch (c) {
    case ComparisonClass::towers_constant: return "towers constant";
    case ComparisonClass::isomorphism: return "isomorphism";
    case ComparisonClass::epimorphism: return "epimorphism";
    case ComparisonClass::no_conclusion: return "no conclusion";
    case ComparisonClass::classical_case: return "classical case";
  }
  return "?";
}

struct ComparisonRecord {
  int r = 0, n = 0, k = 0;
  ComparisonClass classification = ComparisonClass::no_conclusion;
  /// Cartesian-ness of the stable cube (closed form).
  Connectivity cartesian;
  /// rConf spaces are (r-1)n-2 connected.
  long long space_connectivity = 0;
  /// Connectivity 2(r-1)n-3 of the stabilisation map of cubes.
  long long stabilization_connectivity = 0;
  std::string note;
};

/// Compares the k-th layer of the unstable r-immersion tower with the
/// homological one on the first nontrivial homotopy group.
inline ComparisonRecord comparison_report(int r, int n, int k) {
  if (k < 1) throw UsageError("k must be positive, got " + std::to_string(k));
  if (n < 2) throw UsageError("comparison needs n >= 2, got " + std::to_string(n));
  if (r < 2) throw UsageError("r must be at least 2, got " + std::to_string(r));
  ComparisonRecord rec;
  rec.r = r;
  rec.n = n;
  rec.k = k;
  rec.space_connectivity = static_cast<long long>(r - 1) * n - 2;
  rec.stabilization_connectivity = 2LL * (r - 1) * n - 3;
  rec.cartesian = cartesianness_closed_form(k, r, n);
  if (r == 2) {
    rec.classification = ComparisonClass::classical_case;
    rec.note = "r = 2 is the embedding case: the layers agree only for k = 2";
    return rec;
  }
  if (k == 1) {
    rec.note = "k = 1 is the linear stage";
    return rec;
  }
  if (k < r) {
    rec.classification = ComparisonClass::towers_constant;
    rec.note = "both towers are constant below stage r";
    return rec;
  }
  if (k > 2 * r - 1) {
    rec.note = "k lies beyond 2r - 1";
    return rec;
  }
  long long c = rec.cartesian.value();
  if (c < rec.stabilization_connectivity) {
    rec.classification = ComparisonClass::isomorphism;
  } else if (c == rec.stabilization_connectivity) {
    rec.classification = ComparisonClass::epimorphism;
  } else {
    rec.classification = ComparisonClass::no_conclusion;
  }
  rec.note = "cartesian-ness " + std::to_string(c) + " vs 2(r-1)n-3 = " +
             std::to_string(rec.stabilization_connectivity);
  return rec;
}

struct ConnectivityQuery {
  int k = 1;
  int r = 2;
  int n = 2;
  int m = 0;
};

struct ConnectivityReport {
  ConnectivityQuery query;
  Regime regime = Regime::below;
  Connectivity cartesian_closed_form;
  Connectivity cartesian_bruteforce;
  /// Lowest nonzero degree of the total-fiber cohomology, when computed.
  std::optional<Connectivity> homological_minimal_degree;
  std::optional<Connectivity> layer;
  std::optional<ConvergenceVerdict> convergence;
  std::optional<ComparisonRecord> comparison;
  bool consistent = true;
  std::vector<std::string> notes;
};

/// Evaluates every formula for one query. The homological witness needs
/// interval homology and is only computed when `intervals` is given.
inline ConnectivityReport connectivity_report(const ConnectivityQuery& q,
                                              IntervalHomology* intervals = nullptr,
                                              const SizeGuard& guard = default_guard()) {
  ConnectivityReport rep;
  rep.query = q;
  rep.regime = regime(q.r, q.n);
  rep.cartesian_closed_form = cartesianness_closed_form(q.k, q.r, q.n);
  rep.cartesian_bruteforce = cartesianness_bruteforce(q.k, q.r, q.n, guard);
  if (!(rep.cartesian_closed_form == rep.cartesian_bruteforce)) {
    rep.consistent = false;
    rep.notes.push_back("closed form and brute force disagree");
  }
  if (intervals) {
    rep.homological_minimal_degree = minimal_nonzero_degree(tfiber_cohomology(q.k, q.r, q.n, *intervals));
    if (!(*rep.homological_minimal_degree == rep.cartesian_bruteforce)) {
      rep.consistent = false;
      rep.notes.push_back("lowest total-fiber degree differs from cartesian-ness");
    }
  }
  if (q.n >= 2) {
    if (q.k >= 2) rep.layer = layer_connectivity(q.k, q.r, q.n, q.m);
    rep.convergence = intrinsic_convergence(q.r, q.n, q.m);
    rep.comparison = comparison_report(q.r, q.n, q.k);
    if (!(q.m > 0 && q.m < q.n))
      rep.notes.push_back("comparison assumes 0 < m < n");
  } else {
    rep.notes.push_back("layer and convergence statements need n >= 2");
  }
  return rep;
}

}  // namespace arrtower

#endif  // ARRTOWER_CONNECTIVITY_HPP
