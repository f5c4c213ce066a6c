// arrtower: cohomology tables, lattice dumps, cube verification and
// connectivity grids for no-r-equal configuration spaces.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arrtower/arrtower.hpp"
#include "arrtower/json_io.hpp"
#include "verify_suite.hpp"

namespace {

using namespace arrtower;

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2, kGuard = 3 };

/// Lattice dumps list every cover relation; the search is quadratic.
constexpr std::size_t kMaxDumpElements = 5000;

struct Options {
  std::string format = "table";
  std::string out;
  bool checked = false;
  int max_k = 0;
  unsigned workers = 1;
  bool error_json = false;

  std::string k = "4", r = "3", n = "2", m = "1";
  bool unreduced = false;
  bool ledger = false;
  bool complex = false;
  bool witness = false;
  std::string suite = "all";
  bool worked_examples = false;
};

std::vector<int> parse_range(const std::string& name, const std::string& text) {
  std::vector<int> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size() || s.empty()) throw UsageError("--" + name + ": '" + s + "' is not an integer");
    return v;
  };
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
      continue;
    }
    int lo = number(part.substr(0, dots));
    int hi = number(part.substr(dots + 2));
    if (lo > hi) throw UsageError("--" + name + ": empty range '" + part + "'");
    if (hi - lo > 10000) throw UsageError("--" + name + ": range '" + part + "' is too long");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("--" + name + " needs at least one value");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SizeGuard make_guard(const Options& o) {
  SizeGuard g = SizeGuard::from_environment();
  if (o.max_k > 0) {
    g.max_k = o.max_k;
    g.max_cube_k = o.max_k;
  }
  return g;
}

/// One rendered grid item in every output format.
struct Rendered {
  std::string table;
  Json json;
  std::vector<std::string> csv;
  bool ok = true;
};

/// Evaluates `jobs` on a worker pool; results keep the job order.
std::vector<Rendered> run_jobs(const std::vector<std::function<Rendered()>>& jobs, unsigned workers) {
  std::vector<Rendered> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        results[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  // Report the first failure in job order so errors are deterministic too.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string torsion_field(const GroupComponent& c) {
  std::string out;
  for (const auto& t : c.torsion) out += (out.empty() ? "" : ";") + t.str();
  return out;
}

std::string group_cell(const GroupComponent& c) { return GradedGroup::component_to_string(c, true); }

std::string pad(const std::string& s, std::size_t width) {
  // Column widths count code points so that ℤ lines up.
  std::size_t len = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++len;
  return s + std::string(width > len ? width - len : 1, ' ');
}

/// Emits the assembled output for a grid command.
int emit(const Options& o, const std::string& csv_header, const std::vector<Rendered>& items, bool grid) {
  std::string text;
  if (o.format == "json") {
    Json doc;
    if (grid) {
      doc = Json::array();
      for (const auto& it : items) doc.push_back(it.json);
    } else {
      doc = items.front().json;
    }
    text = doc.dump(2) + "\n";
  } else if (o.format == "csv") {
    text = csv_header + "\n";
    for (const auto& it : items)
      for (const auto& row : it.csv) text += row + "\n";
  } else {
    for (std::size_t i = 0; i < items.size(); ++i) text += (i ? "\n" : "") + items[i].table;
  }
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + o.out + "'");
    f << text;
  }
  bool ok = std::all_of(items.begin(), items.end(), [](const Rendered& r) { return r.ok; });
  return ok ? kOk : kVerificationFailed;
}

// ---- cohomology --------------------------------------------------------------

Rendered render_cohomology(int k, int r, int n, const Options& o, IntervalHomology& intervals) {
  auto ledger = contribution_ledger(k, r, n, intervals);
  GradedGroup reduced;
  for (const auto& rec : ledger) reduced += rec.contributions;
  GradedGroup shown = reduced;
  if (o.unreduced) shown.add(0, 1);

  Rendered out;
  out.json = {{"k", k}, {"r", r}, {"n", n}, {"reduced", to_json(reduced)}};
  if (o.unreduced) out.json["unreduced"] = to_json(shown);
  out.json["ledger"] = to_json(ledger);

  std::string title = "rConf(k=" + std::to_string(k) + ", r=" + std::to_string(r) +
                      ", R^" + std::to_string(n) + ")";
  std::string& t = out.table;
  t += title + ": " + (o.unreduced ? "cohomology" : "reduced cohomology") + "\n";
  if (shown.is_zero()) {
    t += "  (all groups vanish)\n";
  } else {
    t += "  " + pad("degree", 8) + "group\n";
    for (const auto& [d, c] : shown.components()) t += "  " + pad(std::to_string(d), 8) + group_cell(c) + "\n";
  }
  if (o.ledger) {
    t += "  contributions:\n";
    for (const auto& rec : ledger) {
      if (rec.contributions.is_zero()) continue;
      t += "    " + pad(rec.x.to_string(), 22) + "codim " + pad(std::to_string(rec.codim), 5);
      std::string parts;
      for (const auto& [d, c] : rec.contributions.components())
        parts += (parts.empty() ? "" : ", ") + std::to_string(d) + ":" + group_cell(c);
      t += parts + "\n";
    }
  }
  for (const auto& [d, c] : shown.components())
    out.csv.push_back(std::to_string(k) + "," + std::to_string(r) + "," + std::to_string(n) + "," +
                      std::to_string(d) + "," + std::to_string(c.rank) + "," + torsion_field(c));
  return out;
}

int cmd_cohomology(const Options& o) {
  auto ks = parse_range("k", o.k), rs = parse_range("r", o.r), ns = parse_range("n", o.n);
  SizeGuard guard = make_guard(o);
  IntervalHomology intervals(o.checked ? VerificationMode::checked : VerificationMode::fast, guard);
  std::vector<std::function<Rendered()>> jobs;
  for (int k : ks)
    for (int r : rs)
      for (int n : ns) jobs.push_back([=, &o, &intervals] { return render_cohomology(k, r, n, o, intervals); });
  auto items = run_jobs(jobs, o.workers);
  return emit(o, "k,r,n,degree,rank,torsion", items, jobs.size() > 1);
}

// ---- lattice -------------------------------------------------------------------

Rendered render_lattice(int k, int r, const Options& o, IntervalHomology& intervals) {
  const SizeGuard& guard = intervals.guard();
  RLattice lat(k, r, guard);
  if (lat.size() > kMaxDumpElements)
    throw ResourceError("lattice has " + std::to_string(lat.size()) + " elements; dumps are limited to " +
                            std::to_string(kMaxDumpElements),
                        static_cast<int>(kMaxDumpElements));
  auto covers = lat.cover_relations();

  Rendered out;
  Json elements = Json::array();
  std::vector<GradedGroup> homology(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Partition& x = lat[i];
    Json e = {{"index", i}, {"partition", to_json(x)}, {"label", x.to_string()}, {"blocks", x.block_count()}};
    if (i > 0) {
      homology[i] = intervals.of(x, r);
      e["interval_homology"] = to_json(homology[i]);
    } else {
      e["interval_homology"] = nullptr;
    }
    elements.push_back(std::move(e));
  }
  Json cover_json = Json::array();
  for (auto [a, b] : covers) cover_json.push_back({a, b});
  out.json = {{"k", k}, {"r", r}, {"elements", std::move(elements)}, {"covers", std::move(cover_json)}};

  std::string& t = out.table;
  t += "Pi_{" + std::to_string(k) + "," + std::to_string(r) + "}: " + std::to_string(lat.size()) +
       " elements, " + std::to_string(covers.size()) + " cover relations\n";
  t += "  elements (index, partition, blocks, reduced homology of (0,x)):\n";
  for (std::size_t i = 0; i < lat.size(); ++i) {
    std::string h = i == 0 ? "-" : homology[i].is_zero() ? "0" : "";
    if (i > 0)
      for (const auto& [d, c] : homology[i].components())
        h += (h.empty() ? "" : ", ") + std::to_string(d) + ":" + group_cell(c);
    t += "    " + pad(std::to_string(i), 6) + pad(lat[i].to_string(), 24) +
         pad(std::to_string(lat[i].block_count()), 4) + h + "\n";
    out.csv.push_back("element," + std::to_string(i) + "," + csv_quote(lat[i].to_string()) + ",,");
  }
  t += "  cover relations:\n";
  for (auto [a, b] : covers) {
    t += "    " + lat[a].to_string() + " < " + lat[b].to_string() + "\n";
    out.csv.push_back("cover," + std::to_string(a) + "," + csv_quote(lat[a].to_string()) + "," +
                      std::to_string(b) + "," + csv_quote(lat[b].to_string()));
  }

  if (lat.size() > 1) {
    SimplicialComplex c = interval_order_complex(lat, 0, lat.size() - 1);
    auto f = face_vector(c);
    Json proper = {{"face_vector", f}, {"reduced_homology", to_json(homology.back())}};
    if (o.complex) proper["complex"] = to_json(c);
    out.json["proper_part"] = std::move(proper);
    std::string fv;
    for (auto v : f) fv += (fv.empty() ? "" : ", ") + std::to_string(v);
    t += "  order complex of (0,1): face vector (" + fv + ")\n";
    if (o.complex) {
      for (int d = 0; d <= c.dimension(); ++d)
        for (std::size_t i = 0; i < c.face_count(d); ++i) {
          std::string face;
          for (auto v : c.face(d, i)) face += (face.empty() ? "" : " < ") + c.vertices()[v];
          t += "    " + std::to_string(d) + ": " + face + "\n";
        }
    }
  } else {
    out.json["proper_part"] = nullptr;
    t += "  (0 = 1: no proper part)\n";
  }
  return out;
}

int cmd_lattice(const Options& o) {
  auto ks = parse_range("k", o.k), rs = parse_range("r", o.r);
  SizeGuard guard = make_guard(o);
  IntervalHomology intervals(o.checked ? VerificationMode::checked : VerificationMode::fast, guard);
  std::vector<std::function<Rendered()>> jobs;
  for (int k : ks)
    for (int r : rs) jobs.push_back([=, &o, &intervals] { return render_lattice(k, r, o, intervals); });
  auto items = run_jobs(jobs, o.workers);
  return emit(o, "kind,index,label,upper_index,upper_label", items, jobs.size() > 1);
}

// ---- cube ----------------------------------------------------------------------

Rendered render_cube(int k, int r, int n, IntervalHomology& intervals) {
  auto v = verify_totalcokernel_theorem(k, r, n, intervals);
  Rendered out;
  out.ok = v.pass;
  out.json = to_json(v);
  auto groups = [](const GradedGroup& g) {
    std::string s;
    for (const auto& [d, c] : g.components()) s += (s.empty() ? "" : ", ") + std::to_string(d) + ":" + group_cell(c);
    return s.empty() ? std::string("0") : s;
  };
  std::string& t = out.table;
  t += "cube k=" + std::to_string(k) + " r=" + std::to_string(r) + " n=" + std::to_string(n) + ": " +
       (v.pass ? "PASS" : "FAIL") + (v.within_guarantee ? "" : " (n = 1: outside the retraction argument)") + "\n";
  t += "  total cokernel    " + groups(v.total_cokernel) + "\n";
  t += "  singleton-free    " + groups(v.tfiber) + "\n";
  t += "  dual total kernel " + groups(v.dual_total_kernel) + "\n";
  t += std::string("  functorial ") + (v.functorial ? "yes" : "no") + ", split injective " +
       (v.split_injective ? "yes" : "no") + ", images are singleton summands " +
       (v.image_is_singleton_summands ? "yes" : "no") + "\n";
  for (const auto& d : v.diff) t += "  diff: " + d + "\n";
  out.csv.push_back(std::to_string(k) + "," + std::to_string(r) + "," + std::to_string(n) + "," +
                    (v.pass ? "PASS" : "FAIL") + "," + csv_quote(v.total_cokernel.to_string()) + "," +
                    csv_quote(v.tfiber.to_string()));
  return out;
}

int cmd_cube(const Options& o) {
  auto ks = parse_range("k", o.k), rs = parse_range("r", o.r), ns = parse_range("n", o.n);
  SizeGuard guard = make_guard(o);
  IntervalHomology intervals(o.checked ? VerificationMode::checked : VerificationMode::fast, guard);
  for (int k : ks) guard.check_cube_k(k);
  std::vector<std::function<Rendered()>> jobs;
  for (int k : ks)
    for (int r : rs)
      for (int n : ns) jobs.push_back([=, &intervals] { return render_cube(k, r, n, intervals); });
  auto items = run_jobs(jobs, o.workers);
  return emit(o, "k,r,n,verdict,total_cokernel,singleton_free_sum", items, jobs.size() > 1);
}

// ---- connectivity --------------------------------------------------------------

Rendered render_connectivity(const ConnectivityQuery& q, const Options& o, IntervalHomology& intervals) {
  auto rep = connectivity_report(q, o.witness ? &intervals : nullptr, intervals.guard());
  Rendered out;
  out.ok = rep.consistent;
  out.json = to_json(rep);
  auto opt = [](const std::optional<Connectivity>& c) { return c ? c->to_string() : std::string("-"); };
  std::string conv = rep.convergence ? (rep.convergence->converges ? "yes" : "no") : "-";
  std::string cmp = rep.comparison ? to_string(rep.comparison->classification) : "-";
  out.table = pad(std::to_string(q.k), 4) + pad(std::to_string(q.r), 4) + pad(std::to_string(q.n), 4) +
              pad(std::to_string(q.m), 4) + pad(to_string(rep.regime), 8) +
              pad(rep.cartesian_closed_form.to_string(), 10) + pad(rep.cartesian_bruteforce.to_string(), 10) +
              pad(opt(rep.homological_minimal_degree), 10) + pad(opt(rep.layer), 10) + pad(conv, 6) +
              pad(cmp, 17) + (rep.consistent ? "ok" : "MISMATCH") + "\n";
  out.csv.push_back(std::to_string(q.k) + "," + std::to_string(q.r) + "," + std::to_string(q.n) + "," +
                    std::to_string(q.m) + "," + to_string(rep.regime) + "," +
                    rep.cartesian_closed_form.to_string() + "," + rep.cartesian_bruteforce.to_string() + "," +
                    (rep.homological_minimal_degree ? rep.homological_minimal_degree->to_string() : "") + "," +
                    (rep.layer ? rep.layer->to_string() : "") + "," +
                    (rep.convergence ? (rep.convergence->converges ? "true" : "false") : "") + "," +
                    (rep.comparison ? to_string(rep.comparison->classification) : "") + "," +
                    (rep.consistent ? "true" : "false"));
  return out;
}

int cmd_connectivity(const Options& o) {
  auto ks = parse_range("k", o.k), rs = parse_range("r", o.r), ns = parse_range("n", o.n),
       ms = parse_range("m", o.m);
  SizeGuard guard = make_guard(o);
  IntervalHomology intervals(o.checked ? VerificationMode::checked : VerificationMode::fast, guard);
  std::vector<std::function<Rendered()>> jobs;
  for (int r : rs)
    for (int n : ns)
      for (int m : ms)
        for (int k : ks) {
          ConnectivityQuery q{k, r, n, m};
          jobs.push_back([=, &o, &intervals] { return render_connectivity(q, o, intervals); });
        }
  auto items = run_jobs(jobs, o.workers);
  bool grid = jobs.size() > 1;
  if (o.format == "table") {
    Rendered header;
    header.table = pad("k", 4) + pad("r", 4) + pad("n", 4) + pad("m", 4) + pad("regime", 8) +
                   pad("cart", 10) + pad("brute", 10) + pad("lowdeg", 10) + pad("layer", 10) +
                   pad("conv", 6) + pad("comparison", 17) + "check\n";
    std::string body = header.table;
    for (const auto& it : items) body += it.table;
    Rendered all;
    all.table = body;
    all.ok = std::all_of(items.begin(), items.end(), [](const Rendered& r) { return r.ok; });
    return emit(o, "", {all}, false);
  }
  return emit(o,
              "k,r,n,m,regime,cartesian_closed_form,cartesian_bruteforce,lowest_tfiber_degree,"
              "layer_connectivity,converges,comparison,consistent",
              items, grid);
}

// ---- verify --------------------------------------------------------------------

int cmd_verify(const Options& o) {
  SizeGuard guard = make_guard(o);
  IntervalHomology intervals(o.checked ? VerificationMode::checked : VerificationMode::fast, guard);
  tools::SuiteContext ctx{intervals, guard};
  auto checks = tools::checks_for(o.worked_examples ? "worked" : o.suite);
  std::vector<std::function<Rendered()>> jobs;
  for (const auto& c : checks)
    jobs.push_back([&c, &ctx] {
      auto res = tools::run_check(c, ctx);
      Rendered out;
      out.ok = res.pass;
      out.table = std::string(res.pass ? "PASS" : "FAIL") + "  [" + res.suite + "] " + res.name +
                  (res.detail.empty() ? "" : " -- " + res.detail) + "\n";
      out.json = {{"suite", res.suite}, {"name", res.name}, {"pass", res.pass}, {"detail", res.detail}};
      out.csv.push_back(res.suite + "," + csv_quote(res.name) + "," + (res.pass ? "PASS" : "FAIL") + "," +
                        csv_quote(res.detail));
      return out;
    });
  auto items = run_jobs(jobs, o.workers);
  std::size_t passed = std::count_if(items.begin(), items.end(), [](const Rendered& r) { return r.ok; });
  if (o.format == "table") {
    Rendered all;
    for (const auto& it : items) all.table += it.table;
    all.table += std::to_string(passed) + "/" + std::to_string(items.size()) + " checks passed\n";
    all.ok = passed == items.size();
    return emit(o, "", {all}, false);
  }
  if (o.format == "json") {
    Rendered all;
    Json list = Json::array();
    for (const auto& it : items) list.push_back(it.json);
    all.json = {{"suite", o.worked_examples ? "worked" : o.suite},
                {"passed", passed},
                {"total", items.size()},
                {"checks", std::move(list)}};
    all.ok = passed == items.size();
    return emit(o, "", {all}, false);
  }
  return emit(o, "suite,check,verdict,detail", items, true);
}

void report_error(const Options& o, const std::string& kind, const std::string& message, int code) {
  if (o.error_json) {
    Json e = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
    std::cout << e.dump() << "\n";
  }
  std::cerr << "arrtower: " << kind << " error: " << message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Cohomology, lattices, cubes and connectivity for no-r-equal configuration spaces"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", o.out, "Write output to this file instead of standard output");
    sub->add_flag("--checked", o.checked, "Cross-check join-formula interval homology by direct Smith reduction");
    sub->add_option("--max-k", o.max_k, "Override the ground-size guard (also ARRTOWER_MAX_K)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", o.workers, "Worker threads for grids")->check(CLI::Range(1u, 256u));
    sub->add_flag("--error-json", o.error_json, "Print errors as JSON on standard output");
  };

  auto* coh = app.add_subcommand("cohomology", "Reduced cohomology of rConf(k, R^n)");
  common(coh);
  coh->add_option("--k", o.k, "Number of points (value, list or a..b range)")->capture_default_str();
  coh->add_option("--r", o.r, "Multiplicity r")->capture_default_str();
  coh->add_option("--n", o.n, "Dimension n")->capture_default_str();
  coh->add_flag("--unreduced", o.unreduced, "Add Z in degree 0");
  coh->add_flag("--ledger", o.ledger, "List per-element contributions in the table");

  auto* lat = app.add_subcommand("lattice", "Dump the r-equal partition lattice");
  common(lat);
  lat->add_option("--k", o.k, "Ground-set size")->capture_default_str();
  lat->add_option("--r", o.r, "Multiplicity r")->capture_default_str();
  lat->add_flag("--complex", o.complex, "Include the order complex of the proper part");

  auto* cube = app.add_subcommand("cube", "Verify the total-cokernel decomposition of the restriction cube");
  common(cube);
  cube->add_option("--k", o.k, "Cube dimension k")->capture_default_str();
  cube->add_option("--r", o.r, "Multiplicity r")->capture_default_str();
  cube->add_option("--n", o.n, "Dimension n")->capture_default_str();

  auto* conn = app.add_subcommand("connectivity", "Cartesian-ness, layer connectivity and convergence");
  common(conn);
  conn->add_option("--k", o.k, "Stage k")->capture_default_str();
  conn->add_option("--r", o.r, "Multiplicity r")->capture_default_str();
  conn->add_option("--n", o.n, "Target dimension n")->capture_default_str();
  conn->add_option("--m", o.m, "Source manifold dimension m")->capture_default_str();
  conn->add_flag("--witness", o.witness, "Also compute the lowest total-fiber cohomology degree");

  auto* ver = app.add_subcommand("verify", "Run the self-verification suite");
  common(ver);
  ver->add_option("--suite", o.suite, "Suite to run")
      ->check(CLI::IsMember(tools::suite_names()))
      ->capture_default_str();
  ver->add_flag("--worked-examples", o.worked_examples, "Run only the embedded worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*coh) return cmd_cohomology(o);
    if (*lat) return cmd_lattice(o);
    if (*cube) return cmd_cube(o);
    if (*conn) return cmd_connectivity(o);
    if (*ver) return cmd_verify(o);
  } catch (const ResourceError& e) {
    report_error(o, "guard", e.what(), kGuard);
    return kGuard;
  } catch (const UsageError& e) {
    report_error(o, "usage", e.what(), kUsage);
    return kUsage;
  } catch (const IntegrityError& e) {
    report_error(o, "integrity", e.what(), kVerificationFailed);
    return kVerificationFailed;
  } catch (const TorsionError& e) {
    report_error(o, "integrity", e.what(), kVerificationFailed);
    return kVerificationFailed;
  } catch (const std::bad_alloc&) {
    report_error(o, "guard", "out of memory", kGuard);
    return kGuard;
  } catch (const std::exception& e) {
    report_error(o, "internal", e.what(), kVerificationFailed);
    return kVerificationFailed;
  }
  return kUsage;
}
