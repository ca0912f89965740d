#include "fda/tasks.hpp"

#include <chrono>
#include <ctime>
#include <functional>
#include <sstream>

#include "fda/conventions.hpp"
#include "fda/expression.hpp"
#include "fda/rathtpy.hpp"

namespace fda {
namespace {

using Runner = std::function<Report(const TaskConfig&, Catalog&)>;

int int_param(const TaskConfig& c, const std::string& key, int fallback) {
  auto it = c.params.find(key);
  if (it == c.params.end())
    return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size())
      throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::parse, "parameter --" + key + " must be an integer, got '" + it->second + "'");
  }
}

Rational rational_param(const TaskConfig& c, const std::string& key) {
  auto it = c.params.find(key);
  return it == c.params.end() ? Rational(0) : Rational::parse(it->second);
}

std::string dims_text(const std::vector<std::int64_t>& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i)
    out += (i ? "," : "") + std::to_string(dims[i]);
  return out + "]";
}

Report named(Report r, std::string name) {
  r.name = std::move(name);
  return r;
}

Report long_only(const std::string& id, const std::string& what) {
  return Report::make_capped(id, what + " is long-running; rerun with --long");
}

// Symbolic closure of mu_{p+2} next to the tensor-contraction verdict.
Report closure_check(Catalog& cat, int d, int p, std::optional<bool> expect_closed) {
  const std::string name = "mu" + std::to_string(p + 2) + ".d" + std::to_string(d);
  const Element& mu = cat.mu(d, p);
  Element dmu = apply_d(*cat.mink(d).algebra, mu);
  const bool closed = dmu.is_zero();
  const Report fierz = quartic_fierz_check(cat.rep(d), FierzFamily::mu_closure, p);
  Report r = Report::make_pass(name);
  r.pinned["closed"] = closed ? "true" : "false";
  r.pinned["terms"] = std::to_string(mu.size());
  r.counts["dmu_terms"] = static_cast<std::int64_t>(dmu.size());
  if (fierz.passed() != closed) {
    r = Report::make_fail(name, "symbolic and tensor-contraction closure verdicts disagree", std::move(dmu));
    return r;
  }
  if (expect_closed && *expect_closed != closed) {
    r = Report::make_fail(name, std::string("expected ") + (*expect_closed ? "closed" : "not closed") +
                                    ", found " + (closed ? "closed" : "not closed"),
                          closed ? std::nullopt : std::optional<Element>(std::move(dmu)), Errc::not_closed);
    r.pinned["closed"] = closed ? "true" : "false";
    return r;
  }
  r.message = std::string(closed ? "closed" : "not closed") + " (symbolic and tensor paths agree)";
  return r;
}

Report task_d2(Catalog& cat, const std::string& which, const TaskConfig& config) {
  if (which == "mink3")
    return check_d_squared(*cat.mink(3).algebra);
  if (which == "mink11")
    return check_d_squared(*cat.mink(11).algebra);
  if (which == "m2brane")
    return check_d_squared(*cat.m2().algebra);
  if (which == "resolved")
    return check_d_squared(*cat.resolution().algebra.algebra);
  if (which == "poincare")
    return check_d_squared(*cat.poincare().algebra);
  if (which == "resolved-poincare")
    return check_d_squared(*cat.resolved_poincare().algebra.algebra);
  if (which == "s4")
    return check_d_squared(*cat.s4().algebra);
  if (which == "derham") {
    Report r = Report::make_pass("derham", "d^2 = 0 on polynomial de Rham complexes");
    const int only = int_param(config, "n", 0);
    for (int n = only ? only : 1; n <= (only ? only : 8); ++n)
      r.add(named(check_d_squared(*poly_de_rham(n).algebra), "n" + std::to_string(n)));
    return r;
  }
  throw Error(Errc::unknown_task, "unknown algebra '" + which + "'");
}

const std::vector<std::string>& d2_algebras() {
  static const std::vector<std::string> names{"mink3",    "mink11",           "m2brane", "resolved",
                                              "poincare", "resolved-poincare", "s4",      "derham"};
  return names;
}

Report task_flat_forms() {
  const PolyDeRham r8 = poly_de_rham(8);
  const DGCAPtr s4 = sphere_model(4).algebra;
  const SignaturePtr& sig = r8.algebra->signature();
  Report r = Report::make_pass("flat.forms", "flat-form examples give their expected verdicts");

  const auto expect = [&](const std::string& name, const std::map<std::string, std::string>& images, bool pass) {
    FlatFormResult res = flat_form_check(s4, r8, images);
    Report c = res.report;
    c.name = name;
    if (res.report.passed() != pass)
      c = Report::make_fail(name, std::string("expected ") + (pass ? "pass" : "fail") + ": " + res.report.message,
                            res.report.witness);
    else
      c.verdict = Verdict::pass;
    c.pinned["flat"] = res.report.passed() ? "true" : "false";
    return std::pair{c, res};
  };

  auto [c1, r1] = expect("decomposable", {{"g4", "dx1*dx2*dx3*dx4"}, {"g7", "0"}}, true);
  r.add(std::move(c1));
  auto [c2, r2] = expect("split", {{"g4", "dx1*dx2*dx3*dx4 + dx5*dx6*dx7*dx8"},
                                   {"g7", "2*x1*dx2*dx3*dx4*dx5*dx6*dx7*dx8"}},
                         true);
  r.add(std::move(c2));
  auto [c3, r3] = expect("split_without_w7", {{"g4", "dx1*dx2*dx3*dx4 + dx5*dx6*dx7*dx8"}, {"g7", "0"}}, false);
  const Element w4 = parse_element(sig, "dx1*dx2*dx3*dx4 + dx5*dx6*dx7*dx8");
  const Element sq = mul(w4, w4);
  if (c3.passed() && !(r3.report.witness && (*r3.report.witness == sq || *r3.report.witness == -sq)))
    c3 = Report::make_fail("split_without_w7", "residual is not +-w4^2", r3.report.witness);
  r.add(std::move(c3));

  Report lemma = poincare_lemma_check(r8, parse_element(sig, "dx1*dx2*dx3*dx4"));
  lemma.name = "poincare_lemma";
  const Element simple = parse_element(sig, "x1*dx2*dx3*dx4");
  if (lemma.passed() && !(apply_d(*r8.algebra, simple) == parse_element(sig, "dx1*dx2*dx3*dx4")))
    lemma = Report::make_fail("poincare_lemma", "x1 dx2 dx3 dx4 is not a primitive");
  r.add(std::move(lemma));
  return r;
}

Report task_brane_scan(const TaskConfig& config) {
  std::vector<std::tuple<int, int, int>> entries{{3, 2, 1}, {11, 32, 2}, {3, 2, 2}};
  if (config.params.count("d") || config.params.count("p"))
    entries = {{int_param(config, "d", 11), int_param(config, "n", int_param(config, "d", 11) == 3 ? 2 : 32),
                int_param(config, "p", 2)}};
  Report r = Report::make_pass("brane.scan", "brane-scan entries decided");
  for (const auto& [d, n, p] : entries)
    r.add(verify_brane_scan_entry(d, n, p, config.cap).report);
  return r;
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = [] {
    std::map<std::string, Runner> t;
    t["clifford.d3"] = [](const TaskConfig&, Catalog& cat) { return check_clifford(cat.rep(3)); };
    t["clifford.d11"] = [](const TaskConfig&, Catalog& cat) { return check_clifford(cat.rep(11)); };
    for (const std::string& a : d2_algebras())
      t["d2." + a] = [a](const TaskConfig& c, Catalog& cat) { return task_d2(cat, a, c); };
    t["d2.all"] = [](const TaskConfig& c, Catalog& cat) {
      Report r = Report::make_pass("d2.all", "d^2 = 0 on every catalog algebra");
      for (const std::string& a : d2_algebras())
        r.add(named(task_d2(cat, a, c), a));
      return r;
    };
    t["poincare.d2"] = [](const TaskConfig& c, Catalog& cat) { return task_d2(cat, "poincare", c); };
    t["mu.closure"] = [](const TaskConfig&, Catalog& cat) {
      Report r = Report::make_pass("mu.closure", "brane cocycle closure, symbolic and by tensor contraction");
      r.add(closure_check(cat, 11, 2, true));
      r.add(closure_check(cat, 3, 1, true));
      r.add(named(closure_check(cat, 11, 1, false), "control.mu3.d11"));
      r.add(named(closure_check(cat, 11, 5, false), "control.mu7.d11"));
      r.add(named(closure_check(cat, 3, 2, std::nullopt), "finding.mu4.d3"));
      Report zero = quartic_fierz_check(cat.rep(11), FierzFamily::mu_closure, 3);
      r.add(zero.passed() ? Report::make_fail("control.p3.d11", "antisymmetric pairing accepted")
                          : Report::make_pass("control.p3.d11", "antisymmetric pairing rejected: " + zero.message));
      return r;
    };
    t["m5.relation"] = [](const TaskConfig&, Catalog& cat) {
      Report r = cat.m5_relation();
      const Element dmu3 = apply_d(*cat.mink(3).algebra, cat.mu(3, 1));
      r.add(named(verify_proportional(dmu3, Element(dmu3.signature()), "d3.analogue"), "d3.analogue"));
      return r;
    };
    t["m5.cocycle"] = [](const TaskConfig&, Catalog& cat) { return cat.m5().report; };
    t["resolution"] = [](const TaskConfig&, Catalog& cat) { return cat.resolution().report; };
    t["lift"] = [](const TaskConfig&, Catalog& cat) { return cat.lift().report; };
    t["hopf"] = [](const TaskConfig&, Catalog&) { return hopf_sequence_check(); };
    t["s4.cohomology"] = [](const TaskConfig& c, Catalog& cat) {
      const int max = int_param(c, "max-degree", 12);
      const auto dims = cohomology_dims(cat.s4().algebra, max, c.cap);
      const bool ok = dims == sphere_cohomology(4, max);
      Report r = ok ? Report::make_pass("s4.cohomology", "H(s4) = H(S^4; Q) up to degree " + std::to_string(max))
                    : Report::make_fail("s4.cohomology", "cohomology differs from H(S^4; Q)");
      r.pinned["dims"] = dims_text(dims);
      return r;
    };
    t["sphere"] = [](const TaskConfig& c, Catalog&) {
      const int n = int_param(c, "n", 4);
      const int max = int_param(c, "max-degree", 3 * n);
      const auto dims = cohomology_dims(sphere_model(n).algebra, max, c.cap);
      const bool ok = dims == sphere_cohomology(n, max);
      Report r = ok ? Report::make_pass("sphere", "sphere model of S^" + std::to_string(n) + " has the cohomology of S^" +
                                                      std::to_string(n))
                    : Report::make_fail("sphere", "cohomology mismatch");
      r.pinned["dims"] = dims_text(dims);
      return r;
    };
    t["brane.scan"] = [](const TaskConfig& c, Catalog&) { return task_brane_scan(c); };
    t["trace"] = [](const TaskConfig& c, Catalog& cat) {
      const int k = int_param(c, "k", 3);
      if (k == 7 && !c.long_run)
        return long_only("trace", "tr(omega^7)");
      return cat.trace(k).report;
    };
    const auto family = [](const std::string& id, Rational alpha, Rational beta) {
      return [id, alpha, beta](const TaskConfig& c, Catalog& cat) {
        Rational a = alpha, b = beta;
        if (id == "family") {
          a = rational_param(c, "alpha");
          b = rational_param(c, "beta");
        }
        if (!b.is_zero() && !c.long_run)
          return long_only(id, "beta != 0 (needs tr(omega^7))");
        const Element* t7 = b.is_zero() ? nullptr : &cat.trace(7).element;
        Report r = family_seven_cocycle(cat.resolved_poincare(), cat.s4(), cat.poincare_mu(2), cat.poincare_mu(5),
                                        cat.c(), a, b, cat.trace(3).element, t7, &cat.lift())
                       .report;
        if (t7)
          r.add(named(cat.trace(7).report, "trace.k7"));
        return r;
      };
    };
    t["family"] = family("family", 0, 0);
    t["family.zero"] = family("family.zero", 0, 0);
    t["family.alpha1"] = family("family.alpha1", 1, 0);
    t["family.beta1"] = family("family.beta1", 0, 1);
    t["family.alpha1beta1"] = family("family.alpha1beta1", 1, 1);
    t["flat.forms"] = [](const TaskConfig&, Catalog&) { return task_flat_forms(); };
    t["forms.fiber"] = [](const TaskConfig& c, Catalog&) {
      return forms_fiber_check(poly_de_rham(int_param(c, "n", 8)), int_param(c, "samples", 64));
    };
    t["flat.check"] = [](const TaskConfig& c, Catalog&) {
      auto it = c.params.find("input");
      if (it == c.params.end())
        throw Error(Errc::parse, "flat.check needs --input FILE");
      return flat_form_check_json(read_json_file(it->second)).report;
    };
    return t;
  }();
  return table;
}

void flatten(const Report& r, const std::string& prefix, std::map<std::string, std::string>& out) {
  for (const auto& [k, v] : r.pinned)
    out[prefix + k] = v;
  std::map<std::string, int> seen;
  for (const Report& c : r.checks) {
    const int n = seen[c.name]++;
    flatten(c, prefix + c.name + (n ? "#" + std::to_string(n) : "") + "/", out);
  }
}

} // namespace

const std::vector<TaskInfo>& task_list() {
  static const std::vector<TaskInfo> list = [] {
    const std::map<std::string, std::string> summaries{
        {"clifford.d3", "gamma matrices and pairings in d = 3"},
        {"clifford.d11", "gamma matrices and pairings in d = 11"},
        {"d2.all", "d^2 = 0 on every catalog algebra"},
        {"poincare.d2", "d^2 = 0 on the super-Poincare algebra"},
        {"mu.closure", "closure of mu4 (d = 11) and mu3 (d = 3) with controls"},
        {"m5.relation", "d mu7 = c mu4 mu4, pins c"},
        {"m5.cocycle", "closure of h3 mu4 + (1/c) mu7 in the m2brane algebra"},
        {"resolution", "p o iota = id and the chain homotopy g4 -> h3"},
        {"lift", "chain map s4 -> resolved Minkowski algebra"},
        {"hopf", "g4 -> 0 in s4 gives R[g7]"},
        {"s4.cohomology", "cohomology of s4 (--max-degree)"},
        {"sphere", "cohomology of the sphere model (--n, --max-degree)"},
        {"brane.scan", "closure and nontriviality of brane cocycles (--d --n --p)"},
        {"trace", "Lorentz trace tr(omega^k) (--k 3|7; 7 needs --long)"},
        {"family", "7-cocycle family (--alpha --beta; beta != 0 needs --long)"},
        {"family.zero", "family at (0,0)"},
        {"family.alpha1", "family at (1,0)"},
        {"family.beta1", "family at (0,1), needs --long"},
        {"family.alpha1beta1", "family at (1,1), needs --long"},
        {"flat.forms", "flat s4-valued form examples on R^8"},
        {"forms.fiber", "fiber sequence of flat forms on sampled forms (--n --samples)"},
        {"flat.check", "validate a flat-form assignment (--input FILE)"},
    };
    std::vector<TaskInfo> out;
    for (const auto& [id, runner] : runners()) {
      auto it = summaries.find(id);
      std::string summary = it != summaries.end() ? it->second : "";
      if (summary.empty() && id.rfind("d2.", 0) == 0)
        summary = "d^2 = 0 on " + id.substr(3);
      out.push_back({id, summary});
    }
    return out;
  }();
  return list;
}

Report run_task(const TaskConfig& config) {
  Catalog cat(config.cap);
  return run_task(config, cat);
}

Report run_task(const TaskConfig& config, Catalog& catalog) {
  if (!config.ledger_hash.empty() && config.ledger_hash != ledger_hash())
    throw Error(Errc::ledger_mismatch, "configuration ledger hash " + config.ledger_hash +
                                           " does not match the built-in conventions " + ledger_hash());
  auto it = runners().find(config.task);
  if (it == runners().end())
    throw Error(Errc::unknown_task, "unknown task '" + config.task + "'");
  Stopwatch clock;
  Report r = it->second(config, catalog);
  r.name = config.task;
  r.seconds = clock.seconds();
  return r;
}

std::map<std::string, std::string> collect_pinned(const Report& r) {
  std::map<std::string, std::string> out;
  flatten(r, "", out);
  return out;
}

GoldenReport make_golden(const Report& r, const TaskConfig& config) {
  return GoldenReport{config.task, std::string(to_string(r.verdict)), collect_pinned(r), std::string(engine_version()),
                      config.ledger_hash.empty() ? ledger_hash() : config.ledger_hash};
}

json to_json(const GoldenReport& g) {
  return {{"schema", "fda.golden/1"},   {"task", g.task},
          {"verdict", g.verdict},       {"pinned", g.pinned},
          {"engine_version", g.engine_version}, {"ledger_hash", g.ledger_hash}};
}

GoldenReport golden_from_json(const json& j) {
  try {
    GoldenReport g;
    g.task = j.at("task").get<std::string>();
    g.verdict = j.at("verdict").get<std::string>();
    g.pinned = j.at("pinned").get<std::map<std::string, std::string>>();
    g.engine_version = j.value("engine_version", std::string{});
    g.ledger_hash = j.at("ledger_hash").get<std::string>();
    return g;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("malformed golden report: ") + e.what());
  }
}

Report compare_golden(const GoldenReport& current, const GoldenReport& golden) {
  if (current.ledger_hash != golden.ledger_hash)
    throw Error(Errc::ledger_mismatch, "golden report was produced under conventions " + golden.ledger_hash +
                                           ", current conventions are " + current.ledger_hash);
  if (current.task != golden.task)
    return Report::make_fail("golden", "task mismatch: " + current.task + " vs " + golden.task);
  std::vector<std::string> diffs;
  if (current.verdict != golden.verdict)
    diffs.push_back("verdict");
  for (const auto& [k, v] : golden.pinned) {
    auto it = current.pinned.find(k);
    if (it == current.pinned.end() || it->second != v)
      diffs.push_back(k);
  }
  for (const auto& [k, v] : current.pinned)
    if (!golden.pinned.count(k))
      diffs.push_back(k);
  if (diffs.empty()) {
    Report r = Report::make_pass("golden", "all pinned scalars agree with the golden report");
    r.counts["pinned"] = static_cast<std::int64_t>(golden.pinned.size());
    return r;
  }
  std::string list;
  for (const auto& d : diffs)
    list += (list.empty() ? "" : ", ") + d;
  Report r = Report::make_fail("golden", "differs from the golden report in: " + list);
  for (const auto& d : diffs) {
    auto g = golden.pinned.find(d);
    auto c = current.pinned.find(d);
    r.pinned["golden:" + d] = d == "verdict" ? golden.verdict : (g != golden.pinned.end() ? g->second : "<absent>");
    r.pinned["current:" + d] = d == "verdict" ? current.verdict : (c != current.pinned.end() ? c->second : "<absent>");
  }
  return r;
}

json report_document(const Report& r, const TaskConfig& config, const std::string& timestamp) {
  json params = json::object();
  for (const auto& [k, v] : config.params)
    params[k] = v;
  params["long"] = config.long_run;
  params["cap"] = config.cap;
  return {{"schema", "fda.report/1"},
          {"task", config.task},
          {"params", params},
          {"engine_version", std::string(engine_version())},
          {"ledger_hash", config.ledger_hash.empty() ? ledger_hash() : config.ledger_hash},
          {"timestamp", timestamp},
          {"report", to_json(r)}};
}

std::filesystem::path write_report(const Report& r, const TaskConfig& config, const std::filesystem::path& dir) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", &tm);
  char stamp[48];
  std::snprintf(stamp, sizeof stamp, "%s.%03dZ", buf, static_cast<int>(ms));
  const std::filesystem::path path = dir / (config.task + "-" + stamp + ".json");
  write_json_file(path, report_document(r, config, stamp));
  return path;
}

int exit_code(const Report& r) {
  switch (r.verdict) {
  case Verdict::pass: return 0;
  case Verdict::fail: return 1;
  case Verdict::capped: return 2;
  }
  return 1;
}

} // namespace fda
