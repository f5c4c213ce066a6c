// Acceptance suite: one PASS/FAIL line per criterion. Expected values are
// either fixed constants or computed by the brute-force oracles in
// oracles.hpp; the CLI path (argv[1]) is used for the determinism check.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arrtower/arrtower.hpp"
#include "oracles.hpp"

using namespace arrtower;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void time_limit(Outcome& out, Clock::time_point t0, double limit) {
  double s = seconds_since(t0);
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  if (s >= limit) out.fail("took " + os.str() + ", limit " + std::to_string(limit) + " s");
  if (out.pass) out.detail = os.str();
}

GradedGroup free_group(std::initializer_list<std::pair<int, std::uint64_t>> parts) {
  GradedGroup g;
  for (auto [d, r] : parts) g.add(d, r);
  return g;
}

oracle::Labels labels_of(const Partition& p) {
  oracle::Labels a(p.ground_size());
  int l = 0;
  for (const auto& b : p.blocks()) {
    for (int e : b) a[e - 1] = l;
    ++l;
  }
  return a;
}

Connectivity oracle_cartesian(int k, int r, int n) {
  std::optional<long long> best;
  for (const auto& a : oracle::all_set_partitions(k)) {
    if (!oracle::singleton_free(a, r)) continue;
    long long v = 1LL * k * (n - 1) + 1LL * oracle::blocks(a) * (r - n - 1);
    if (!best || v < *best) best = v;
  }
  return best ? Connectivity(*best) : Connectivity::infinite();
}

// Same minimum over block counts: a singleton-free partition of k points
// with c blocks exists exactly when 1 <= c <= k / r. Usable far beyond the
// range where partitions can be listed.
Connectivity oracle_cartesian_by_blocks(int k, int r, int n) {
  std::optional<long long> best;
  for (int c = 1; c * r <= k; ++c) {
    long long v = 1LL * k * (n - 1) + 1LL * c * (r - n - 1);
    if (!best || v < *best) best = v;
  }
  return best ? Connectivity(*best) : Connectivity::infinite();
}

// 1. The 4-point example.
Outcome worked_example() {
  Outcome out;
  auto t0 = Clock::now();
  IntervalHomology h;
  for (int n = 2; n <= 5; ++n) {
    GradedGroup want = free_group({{2 * n - 1, 4}, {3 * n - 2, 3}});
    if (gm_cohomology(4, 3, n, h) != want) out.fail("n=" + std::to_string(n) + ": " + gm_cohomology(4, 3, n, h).to_string());
  }
  if (gm_cohomology(4, 3, 1, h) != free_group({{1, 7}}))
    out.fail("n=1: " + gm_cohomology(4, 3, 1, h).to_string());
  time_limit(out, t0, 1.0);
  return out;
}

// 2. k = r: a single sphere.
Outcome sphere_case() {
  Outcome out;
  auto t0 = Clock::now();
  IntervalHomology h;
  for (int r = 2; r <= 5; ++r)
    for (int n = 1; n <= 4; ++n)
      if (gm_cohomology(r, r, n, h) != free_group({{(r - 1) * n - 1, 1}}))
        out.fail("r=" + std::to_string(r) + " n=" + std::to_string(n));
  time_limit(out, t0, 1.0);
  return out;
}

// 3. The lattice of 4 points with r = 3.
Outcome small_lattice() {
  Outcome out;
  RLattice lat(4, 3);
  std::set<std::string> elements;
  for (const auto& p : lat.elements()) elements.insert(p.to_string());
  const char* bottom = "(1)(2)(3)(4)";
  const char* top = "(1,2,3,4)";
  const std::vector<const char*> middle = {"(1,2,3)(4)", "(1,2,4)(3)", "(1,3,4)(2)", "(1)(2,3,4)"};
  std::set<std::string> want_elements = {bottom, top};
  for (const char* m : middle) want_elements.insert(Partition::parse(m).to_string());
  std::set<std::pair<std::string, std::string>> covers;
  for (auto [i, j] : lat.cover_relations()) covers.emplace(lat[i].to_string(), lat[j].to_string());
  std::set<std::pair<std::string, std::string>> want_covers;
  for (const char* m : middle) {
    want_covers.emplace(bottom, Partition::parse(m).to_string());
    want_covers.emplace(Partition::parse(m).to_string(), top);
  }
  if (elements != want_elements) {
    std::string got;
    for (const auto& e : elements) got += e + " ";
    out.fail("elements: " + got);
  }
  if (covers != want_covers) out.fail(std::to_string(covers.size()) + " cover relations");
  if (out.pass) out.detail = "6 elements, 8 covers";
  return out;
}

struct IntervalRow {
  Partition x;
  int r;
  GradedGroup direct;
};

// 4. Join formula versus direct reduction, plus the Euler characteristic
// against the Moebius function of a brute-force poset.
Outcome oracle_equivalence(std::vector<IntervalRow>& rows) {
  Outcome out;
  auto t0 = Clock::now();
  std::size_t count = 0;
  for (int r = 2; r <= 3; ++r) {
    IntervalHomology h;
    for (int k = 1; k <= 7; ++k) {
      auto parts = oracle::r_equal_partitions(k, r);
      std::vector<std::vector<bool>> less(parts.size(), std::vector<bool>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) less[i][j] = oracle::strictly_refines(parts[i], parts[j]);
      auto mu = oracle::moebius_from_bottom(less);
      for (const Partition& x : enumerate_r_equal_partitions(k, r)) {
        if (x.block_count() == k) continue;
        GradedGroup joined = h.of(x, r);
        GradedGroup direct = direct_interval_homology(x, r);
        ++count;
        if (joined != direct) out.fail(x.to_string() + " r=" + std::to_string(r));
        long long chi = 0;
        for (const auto& [d, c] : direct.components()) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c.rank);
        auto lx = labels_of(x);
        std::size_t ix = 0;
        while (parts[ix] != lx) ++ix;
        if (oracle::Big(chi) != mu[ix]) out.fail("Euler characteristic at " + x.to_string());
        rows.push_back({x, r, direct});
      }
    }
  }
  time_limit(out, t0, 60.0);
  if (out.pass) out.detail = std::to_string(count) + " intervals, " + out.detail;
  return out;
}

// 5. Top homology degree of singleton-free lower intervals.
Outcome top_degree(const std::vector<IntervalRow>& rows) {
  Outcome out;
  std::size_t count = 0;
  for (const auto& row : rows) {
    if (row.x.has_singleton()) continue;
    ++count;
    int want = row.x.ground_size() - row.x.block_count() * (row.r - 1) - 2;
    auto top = row.direct.max_degree();
    if (!top || *top != want || row.direct.component(want).is_zero())
      out.fail(row.x.to_string() + " r=" + std::to_string(row.r));
  }
  if (count == 0) out.fail("no singleton-free elements checked");
  if (out.pass) out.detail = std::to_string(count) + " elements";
  return out;
}

// 6. Total cokernel of the restriction cube.
Outcome total_cokernel_grid() {
  Outcome out;
  auto t0 = Clock::now();
  IntervalHomology h;
  auto run = [&](int k, int r, int n) {
    auto v = verify_totalcokernel_theorem(k, r, n, h);
    if (!v.pass) out.fail("k=" + std::to_string(k) + " r=" + std::to_string(r) + " n=" + std::to_string(n));
    // The sum over singleton-free partitions, assembled from the oracle.
    GradedGroup want;
    for (const auto& a : oracle::all_set_partitions(k)) {
      if (!oracle::singleton_free(a, r)) continue;
      int c = oracle::blocks(a);
      std::vector<std::vector<int>> blocks = oracle::to_blocks(a);
      Partition x = Partition::from_blocks(k, blocks);
      GradedGroup interval = h.of(x, r);
      for (const auto& [d, comp] : interval.components())
        want.add(static_cast<int>(1LL * n * (k - c)) - d - 2, comp);
    }
    if (v.total_cokernel != want)
      out.fail("independent sum differs at k=" + std::to_string(k) + " r=" + std::to_string(r) +
               " n=" + std::to_string(n));
  };
  for (int k = 1; k <= 6; ++k) {
    for (int n = 1; n <= 3; ++n) run(k, 3, n);
    for (int n = 2; n <= 3; ++n) run(k, 2, n);
  }
  time_limit(out, t0, 120.0);
  return out;
}

// 7. Closed form against the brute-force minimum and the total fiber.
Outcome cartesianness() {
  Outcome out;
  IntervalHomology h;
  for (int r = 2; r <= 5; ++r)
    for (int n = 1; n <= 5; ++n) {
      for (int k = r; k <= 9; ++k)
        if (cartesianness_closed_form(k, r, n) != oracle_cartesian(k, r, n) ||
            oracle_cartesian_by_blocks(k, r, n) != oracle_cartesian(k, r, n))
          out.fail("closed form at k=" + std::to_string(k) + " r=" + std::to_string(r) + " n=" + std::to_string(n));
      for (int k = 1; k <= 8; ++k)
        if (minimal_nonzero_degree(tfiber_cohomology(k, r, n, h)) != cartesianness_closed_form(k, r, n))
          out.fail("total fiber at k=" + std::to_string(k) + " r=" + std::to_string(r) + " n=" + std::to_string(n));
    }
  return out;
}

// 8. r = n + 1.
Outcome borderline() {
  Outcome out;
  for (int n = 1; n <= 6; ++n) {
    int r = n + 1;
    for (int k = 1; k <= 12; ++k) {
      long long want = 1LL * k * (n - 1);
      if (detail::cartesian_small_r(k, r, n) != want || detail::cartesian_large_r(k, r, n) != want)
        out.fail("formulas at k=" + std::to_string(k) + " n=" + std::to_string(n));
      if (k >= r && cartesianness_closed_form(k, r, n).value() != want) out.fail("closed form");
    }
    if (n < 2) continue;
    for (int m = 0; m <= 12; ++m) {
      // n > (rm+1)/(r-1) with r = n+1 is n^2 > (n+1)m + 1; the other is n > m+1.
      bool small = 1LL * n * n > 1LL * (n + 1) * m + 1;
      bool large = n > m + 1;
      if (small != large) out.fail("oracle criteria disagree at n=" + std::to_string(n) + " m=" + std::to_string(m));
      try {
        if (intrinsic_convergence(r, n, m).converges != large) out.fail("verdict at n=" + std::to_string(n));
      } catch (const IntegrityError& e) {
        out.fail(e.what());
      }
    }
  }
  return out;
}

// 9. Layer connectivity and the r = 2 threshold.
Outcome layers() {
  Outcome out;
  std::size_t count = 0;
  for (int r = 2; r <= 6; ++r)
    for (int n = 2; n <= 8; ++n)
      for (int m = 0; m < n; ++m)
        for (int k = r; k <= 14; ++k) {
          long long want = oracle_cartesian_by_blocks(k, r, n).value() - 1LL * m * k;
          if (r <= n + 1 && layer_connectivity_rational(k, r, n, m) != Rational(want))
            out.fail("rational path at k=" + std::to_string(k) + " r=" + std::to_string(r));
          try {
            if (layer_connectivity(k, r, n, m).value() != want) out.fail("layer value");
          } catch (const std::exception& e) {
            out.fail(e.what());
          }
          ++count;
        }
  for (int m = 0; m <= 5; ++m)
    for (int n = 2; n <= 20; ++n)
      if (intrinsic_convergence(2, n, m).converges != (n > 2 * m + 1))
        out.fail("r=2 threshold at n=" + std::to_string(n) + " m=" + std::to_string(m));
  if (out.pass) out.detail = std::to_string(count) + " grid points";
  return out;
}

// 10. Comparison classification.
Outcome comparison() {
  Outcome out;
  for (int r = 3; r <= 6; ++r)
    for (int n = 2; n <= 7; ++n)
      for (int k = 2; k <= 2 * r - 1; ++k) {
        auto rec = comparison_report(r, n, k);
        ComparisonClass want = k < r                ? ComparisonClass::towers_constant
                               : (r == 3 && k == 5) ? ComparisonClass::epimorphism
                                                    : ComparisonClass::isomorphism;
        std::string at = " at r=" + std::to_string(r) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
        if (rec.classification != want) out.fail(to_string(rec.classification) + at);
        if (r == 3 && k == 5 &&
            (oracle_cartesian(5, 3, n).value() != 4LL * n - 3 || rec.stabilization_connectivity != 4LL * n - 3))
          out.fail("4n-3 equality" + at);
      }
  return out;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  status = pclose(p);
  return out;
}

// 11. Byte-identical CLI output across runs and worker counts.
Outcome determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.fail("no CLI path given");
    return out;
  }
  const std::vector<std::string> commands = {
      "cohomology --k 1..7 --r 2..4 --n 1..3",
      "cohomology --k 1..7 --r 2..4 --n 1..3 --format json --ledger",
      "cohomology --k 4..6 --r 3 --n 2 --format csv",
      "lattice --k 5 --r 3 --complex --format json",
      "lattice --k 4 --r 3",
      "cube --k 1..5 --r 2..3 --n 1..3 --format json",
      "cube --k 4 --r 3 --n 2",
      "connectivity --k 1..7 --r 2..5 --n 1..5 --m 0..3 --witness --format csv",
      "connectivity --k 1..12 --r 2..6 --n 2..6 --m 0..4",
      "connectivity --k 3 --r 3 --n 5 --m 2 --format json",
      "verify --suite gm",
      "verify --worked-examples --format json",
  };
  std::size_t compared = 0;
  for (const auto& c : commands) {
    std::string reference;
    bool first = true;
    for (const char* workers : {"1", "1", "4", "8"}) {
      int status = 0;
      std::string text = run_capture(cli + " " + c + " --workers " + workers + " 2>/dev/null", status);
      if (status != 0) out.fail("'" + c + "' exited with status " + std::to_string(status));
      if (text.empty()) out.fail("'" + c + "' printed nothing");
      if (first) {
        reference = text;
        first = false;
      } else if (text != reference) {
        out.fail("'" + c + "' differs with --workers " + workers);
      }
      ++compared;
    }
  }
  if (out.pass) out.detail = std::to_string(compared) + " runs of " + std::to_string(commands.size()) + " commands";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::vector<IntervalRow> rows;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"4-point example", worked_example},
      {"sphere case", sphere_case},
      {"lattice of 4 points, r=3", small_lattice},
      {"interval homology: join vs direct", [&] { return oracle_equivalence(rows); }},
      {"top-degree law", [&] { return top_degree(rows); }},
      {"total-cokernel decomposition", total_cokernel_grid},
      {"cartesian-ness", cartesianness},
      {"borderline identities", borderline},
      {"layer connectivity and thresholds", layers},
      {"comparison classification", comparison},
      {"CLI determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  int index = 0;
  for (auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
