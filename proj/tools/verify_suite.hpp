#ifndef ARRTOWER_TOOLS_VERIFY_SUITE_HPP
#define ARRTOWER_TOOLS_VERIFY_SUITE_HPP

// Self-checks run by `arrtower verify`. Each check compares two independent
// computation paths inside the library, or a library value against an
// embedded expected value.

#include <functional>
#include <string>
#include <vector>

#include "arrtower/arrtower.hpp"

namespace arrtower::tools {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteContext {
  IntervalHomology& intervals;
  SizeGuard guard;
};

using Check = std::function<CheckResult(SuiteContext&)>;

struct NamedCheck {
  std::string suite;
  std::string name;
  Check run;
};

inline GradedGroup expected_group(std::initializer_list<std::pair<int, std::uint64_t>> parts) {
  GradedGroup g;
  for (auto [d, r] : parts) g.add(d, r);
  return g;
}

inline CheckResult make_result(const NamedCheck& c, bool pass, std::string detail) {
  return {c.suite, c.name, pass, std::move(detail)};
}

// ---- worked examples -------------------------------------------------------

inline std::vector<NamedCheck> worked_example_checks() {
  std::vector<NamedCheck> out;
  out.push_back({"worked", "four points, r=3: Z^4 in 2n-1 and Z^3 in 3n-2 (n=2..5), Z^7 in 1 (n=1)",
                 [](SuiteContext& ctx) {
                   std::string detail;
                   bool ok = true;
                   for (int n = 1; n <= 5; ++n) {
                     GradedGroup want = n == 1 ? expected_group({{1, 7}})
                                               : expected_group({{2 * n - 1, 4}, {3 * n - 2, 3}});
                     GradedGroup got = gm_cohomology(4, 3, n, ctx.intervals);
                     if (!(got == want)) {
                       ok = false;
                       detail += "n=" + std::to_string(n) + ": got " + got.to_string() + "; ";
                     }
                   }
                   return CheckResult{"worked", "", ok, ok ? "5 values match" : detail};
                 }});
  out.push_back({"worked", "lattice (k=4, r=3): 6 elements, 8 cover relations", [](SuiteContext& ctx) {
                   RLattice lat(4, 3, ctx.guard);
                   auto covers = lat.cover_relations();
                   bool ok = lat.size() == 6 && covers.size() == 8;
                   return CheckResult{"worked", "", ok,
                                      std::to_string(lat.size()) + " elements, " +
                                          std::to_string(covers.size()) + " covers"};
                 }});
  out.push_back({"worked", "r <= k < 2r: only the thin diagonal, interval of dimension k-r-1",
                 [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   for (int r = 2; r <= 5; ++r)
                     for (int k = r; k < 2 * r && k <= 8; ++k) {
                       auto sf = singleton_free_elements(k, r, ctx.guard);
                       bool single = sf.size() == 1 && sf[0] == Partition::single_block(k);
                       int dim = -1;
                       if (single) dim = lower_interval_complex(sf[0], r, ctx.guard).dimension();
                       if (!single || dim != k - r - 1) {
                         ok = false;
                         detail += "(k=" + std::to_string(k) + ",r=" + std::to_string(r) + ") ";
                       }
                     }
                   return CheckResult{"worked", "", ok, ok ? "all (k,r) with k<=8" : "failed: " + detail};
                 }});
  out.push_back({"worked", "r=3, k=5: both sides equal 4n-3, epimorphism", [](SuiteContext&) {
                   bool ok = true;
                   for (int n = 2; n <= 7; ++n) {
                     auto rec = comparison_report(3, n, 5);
                     ok = ok && rec.cartesian.value() == 4 * n - 3 &&
                          rec.stabilization_connectivity == 4 * n - 3 &&
                          rec.classification == ComparisonClass::epimorphism;
                   }
                   return CheckResult{"worked", "", ok, "n=2..7"};
                 }});
  return out;
}

// ---- acceptance-style checks ------------------------------------------------

inline std::vector<NamedCheck> gm_checks() {
  std::vector<NamedCheck> out;
  out.push_back({"gm", "sphere case: gm(r,r,n) = Z in (r-1)n-1", [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   for (int r = 2; r <= 5; ++r)
                     for (int n = 1; n <= 4; ++n) {
                       auto got = gm_cohomology(r, r, n, ctx.intervals);
                       if (!(got == expected_group({{(r - 1) * n - 1, 1}}))) {
                         ok = false;
                         detail += "(r=" + std::to_string(r) + ",n=" + std::to_string(n) + ") ";
                       }
                     }
                   return CheckResult{"gm", "", ok, ok ? "16 cases" : "failed: " + detail};
                 }});
  out.push_back({"gm", "five points, r=3, n=2: Z^10, Z^15, Z^6 in degrees 3, 4, 5", [](SuiteContext& ctx) {
                   auto got = gm_cohomology(5, 3, 2, ctx.intervals);
                   bool ok = got == expected_group({{3, 10}, {4, 15}, {5, 6}});
                   return CheckResult{"gm", "", ok, got.to_string()};
                 }});
  out.push_back({"gm", "r=2: Poincare polynomial prod_{j<k} (1 + j t^(n-1)) (k <= 7, n = 1..3)",
                 [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   for (int n = 1; n <= 3; ++n)
                     for (int k = 1; k <= 7; ++k) {
                       std::vector<std::uint64_t> poly{1};
                       for (int j = 1; j < k; ++j) {
                         poly.push_back(0);
                         for (std::size_t i = poly.size() - 1; i > 0; --i) poly[i] += j * poly[i - 1];
                       }
                       GradedGroup want;
                       for (std::size_t i = 1; i < poly.size(); ++i)
                         want.add(static_cast<int>(i) * (n - 1), poly[i]);
                       auto got = gm_cohomology(k, 2, n, ctx.intervals);
                       if (!(got == want)) {
                         ok = false;
                         detail += "(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ") ";
                       }
                     }
                   return CheckResult{"gm", "", ok, ok ? "21 cases" : "failed: " + detail};
                 }});
  return out;
}

inline std::vector<NamedCheck> lattice_checks() {
  std::vector<NamedCheck> out;
  out.push_back({"lattice", "element counts: Pi_{5,3} has 17, Pi_{2,3} has 1", [](SuiteContext& ctx) {
                   bool ok = RLattice(5, 3, ctx.guard).size() == 17 && RLattice(2, 3, ctx.guard).size() == 1;
                   return CheckResult{"lattice", "", ok, ""};
                 }});
  out.push_back({"lattice", "top-degree law for singleton-free x (k <= 7, r in {2,3})", [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   for (int r = 2; r <= 3; ++r)
                     for (int k = 1; k <= 7; ++k)
                       for (const auto& x : singleton_free_elements(k, r, ctx.guard)) {
                         auto h = ctx.intervals.of(x, r);
                         int want = k - x.block_count() * (r - 1) - 2;
                         if (h.max_degree() != want || h.component(want).is_zero()) {
                           ok = false;
                           detail += x.to_string() + " ";
                         }
                       }
                   return CheckResult{"lattice", "", ok, ok ? "all elements" : "failed: " + detail};
                 }});
  return out;
}

inline std::vector<NamedCheck> oracle_checks() {
  std::vector<NamedCheck> out;
  out.push_back({"oracle", "join formula = direct Smith reduction (k <= 7, r in {2,3})", [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   std::size_t count = 0;
                   for (int r = 2; r <= 3; ++r)
                     for (int k = 1; k <= 7; ++k)
                       for (const auto& x : enumerate_r_equal_partitions(k, r, ctx.guard)) {
                         if (x.block_count() == k) continue;
                         auto fast = ctx.intervals.of(x, r);
                         auto direct = direct_interval_homology(x, r, ctx.guard);
                         ++count;
                         if (!(fast == direct)) {
                           ok = false;
                           detail += x.to_string() + " ";
                         }
                       }
                   return CheckResult{"oracle", "", ok,
                                      ok ? std::to_string(count) + " intervals" : "failed: " + detail};
                 }});
  return out;
}

inline std::vector<NamedCheck> cube_checks() {
  std::vector<NamedCheck> out;
  out.push_back({"cube", "total cokernel = singleton-free sum (k <= 6; r=3, n=1..3; r=2, n=2..3)",
                 [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   std::vector<std::pair<int, int>> rn = {{3, 1}, {3, 2}, {3, 3}, {2, 2}, {2, 3}};
                   for (auto [r, n] : rn)
                     for (int k = 1; k <= 6; ++k) {
                       auto v = verify_totalcokernel_theorem(k, r, n, ctx.intervals);
                       if (!v.pass) {
                         ok = false;
                         detail += "(" + std::to_string(k) + "," + std::to_string(r) + "," +
                                   std::to_string(n) + ") ";
                       }
                     }
                   return CheckResult{"cube", "", ok, ok ? "30 cubes" : "failed: " + detail};
                 }});
  return out;
}

inline std::vector<NamedCheck> connectivity_checks() {
  std::vector<NamedCheck> out;
  out.push_back({"connectivity", "cartesian-ness: closed form = brute force (k=r..9, r=2..5, n=1..5)",
                 [](SuiteContext& ctx) {
                   bool ok = true;
                   for (int r = 2; r <= 5; ++r)
                     for (int k = r; k <= 9; ++k)
                       for (int n = 1; n <= 5; ++n)
                         ok = ok && cartesianness_closed_form(k, r, n) ==
                                        cartesianness_bruteforce(k, r, n, ctx.guard);
                   return CheckResult{"connectivity", "", ok, ""};
                 }});
  out.push_back({"connectivity", "cartesian-ness = lowest total-fiber degree (k <= 8)", [](SuiteContext& ctx) {
                   bool ok = true;
                   std::string detail;
                   for (int r = 2; r <= 5; ++r)
                     for (int k = r; k <= 8; ++k)
                       for (int n = 1; n <= 5; ++n) {
                         auto low = minimal_nonzero_degree(tfiber_cohomology(k, r, n, ctx.intervals));
                         if (!(low == cartesianness_closed_form(k, r, n))) {
                           ok = false;
                           detail += "(" + std::to_string(k) + "," + std::to_string(r) + "," +
                                     std::to_string(n) + ") ";
                         }
                       }
                   return CheckResult{"connectivity", "", ok, ok ? "" : "failed: " + detail};
                 }});
  out.push_back({"connectivity", "borderline r=n+1: formulas agree (k <= 12, n <= 6)", [](SuiteContext&) {
                   bool ok = true;
                   for (int n = 1; n <= 6; ++n)
                     for (int k = 1; k <= 12; ++k) {
                       int r = n + 1;
                       if (k >= r) {
                         ok = ok && detail::cartesian_small_r(k, r, n) == 1LL * k * (n - 1) &&
                              detail::cartesian_large_r(k, r, n) == 1LL * k * (n - 1);
                       }
                       if (n >= 2)
                         for (int m = 0; m < n; ++m) (void)intrinsic_convergence(r, n, m);
                     }
                   return CheckResult{"connectivity", "", ok, ""};
                 }});
  out.push_back({"connectivity", "layer connectivity two-path equality; r=2 threshold n > 2m+1",
                 [](SuiteContext&) {
                   bool ok = true;
                   for (int r = 2; r <= 5; ++r)
                     for (int k = 2; k <= 12; ++k)
                       for (int n = 2; n <= 7; ++n)
                         for (int m = 0; m < n; ++m) (void)layer_connectivity(k, r, n, m);
                   for (int m = 0; m <= 5; ++m)
                     for (int n = 2; n <= 14; ++n)
                       ok = ok && intrinsic_convergence(2, n, m).converges == (n > 2 * m + 1);
                   return CheckResult{"connectivity", "", ok, ""};
                 }});
  out.push_back({"connectivity", "comparison: constant below r, isomorphism except (3,5) epimorphism",
                 [](SuiteContext&) {
                   bool ok = true;
                   for (int r = 3; r <= 6; ++r)
                     for (int n = 2; n <= 7; ++n)
                       for (int k = 2; k <= 2 * r - 1; ++k) {
                         auto c = comparison_report(r, n, k).classification;
                         ComparisonClass want = k < r ? ComparisonClass::towers_constant
                                                : (r == 3 && k == 5) ? ComparisonClass::epimorphism
                                                                     : ComparisonClass::isomorphism;
                         ok = ok && c == want;
                       }
                   return CheckResult{"connectivity", "", ok, ""};
                 }});
  return out;
}

inline std::vector<std::string> suite_names() {
  return {"all", "worked", "gm", "lattice", "oracle", "cube", "connectivity"};
}

inline std::vector<NamedCheck> checks_for(const std::string& suite) {
  std::vector<NamedCheck> out;
  auto add = [&](std::vector<NamedCheck> more) {
    for (auto& c : more) out.push_back(std::move(c));
  };
  if (suite == "all" || suite == "worked") add(worked_example_checks());
  if (suite == "all" || suite == "gm") add(gm_checks());
  if (suite == "all" || suite == "lattice") add(lattice_checks());
  if (suite == "all" || suite == "oracle") add(oracle_checks());
  if (suite == "all" || suite == "cube") add(cube_checks());
  if (suite == "all" || suite == "connectivity") add(connectivity_checks());
  if (out.empty()) throw UsageError("unknown suite '" + suite + "'");
  return out;
}

/// Runs one check; integrity failures count as FAIL, other errors propagate.
inline CheckResult run_check(const NamedCheck& c, SuiteContext& ctx) {
  try {
    CheckResult r = c.run(ctx);
    r.suite = c.suite;
    r.name = c.name;
    return r;
  } catch (const IntegrityError& e) {
    return make_result(c, false, std::string("integrity error: ") + e.what());
  }
}

}  // namespace arrtower::tools

#endif  // ARRTOWER_TOOLS_VERIFY_SUITE_HPP
