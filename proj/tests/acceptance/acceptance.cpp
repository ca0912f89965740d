// Acceptance run: one [PASS]/[FAIL] line per criterion. Pass --quick to skip
// the tr(omega^7) and beta-family part of criterion 10.

#include <cstring>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "fda/conventions.hpp"
#include "fda/parallel.hpp"
#include "fda/rathtpy.hpp"
#include "fda/tasks.hpp"

using namespace fda;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty())
      detail += "; ";
    detail += what + (ok ? "" : " [failed]");
    pass = pass && ok;
  }
};

const Report* child(const Report& r, const std::string& name) {
  for (const Report& c : r.checks)
    if (c.name == name)
      return &c;
  return nullptr;
}

bool child_passed(const Report& r, const std::string& name) {
  const Report* c = child(r, name);
  return c && c->passed();
}

TaskConfig task(std::string id, std::map<std::string, std::string> params = {}) {
  TaskConfig c;
  c.task = std::move(id);
  c.params = std::move(params);
  c.long_run = true;
  return c;
}

std::optional<GoldenReport> golden(const std::string& id) {
  const std::filesystem::path p = std::filesystem::path(FDA_GOLDEN_DIR) / (id + ".json");
  if (!std::filesystem::exists(p))
    return std::nullopt;
  return golden_from_json(read_json_file(p));
}

Outcome ac1(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("d2.all"), cat);
  for (const Report& c : r.checks)
    o.require(c.passed(), c.name);
  o.require(r.checks.size() == 8, "8 algebra families");
  return o;
}

Outcome ac2(Catalog& cat) {
  Outcome o;
  o.require(apply_d(*cat.mink(11).algebra, cat.mu(11, 2)).is_zero(), "d mu4 = 0 (d=11)");
  o.require(apply_d(*cat.mink(3).algebra, cat.mu(3, 1)).is_zero(), "d mu3 = 0 (d=3)");
  o.require(quartic_fierz_check(cat.rep(11), FierzFamily::mu_closure).passed(), "tensor path d=11");
  o.require(quartic_fierz_check(cat.rep(3), FierzFamily::mu_closure).passed(), "tensor path d=3");
  const bool control_fails = !apply_d(*cat.mink(3).algebra, cat.mu(3, 2)).is_zero();
  o.require(control_fails, control_fails ? "control (d=3,p=2) fails closure"
                                         : "control (d=3,p=2) fails closure: it is closed (mu4 = const * d(e0 e1 e2))");
  return o;
}

Outcome ac3(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("m5.relation"), cat);
  o.require(child_passed(r, "symbolic"), "single rational c");
  o.require(child_passed(r, "paths_agree"), "symbolic and tensor c agree");
  const std::string c = r.pinned.count("c") ? r.pinned.at("c") : "?";
  o.require(c == "15", "c = " + c);
  const auto g = golden("m5.relation");
  o.require(g && g->pinned.count("c") && g->pinned.at("c") == c, "c pinned in golden report");
  o.require(convention_ledger().find("c = 15") != std::string_view::npos, "c recorded in convention ledger");
  return o;
}

Outcome ac4(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("m5.cocycle"), cat);
  o.require(child_passed(r, "closure"), "d(h3 mu4 + (1/c) mu7) = 0");
  return o;
}

Outcome ac5(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("resolution"), cat);
  o.require(child_passed(r, "p_after_iota"), "p o iota = id");
  o.require(child_passed(r, "homotopy"), "id - iota o p = ds + sd");
  o.require(child_passed(r, "p_chain_map") && child_passed(r, "iota_chain_map"), "p, iota chain maps");
  return o;
}

Outcome ac6(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("lift"), cat);
  o.require(child_passed(r, "chain_map"), "lift is a chain map");
  o.require(child_passed(r, "difference_of_squares"), "(g4 - mu4)(g4 + mu4) + mu4 mu4 = g4 g4");
  const DGCAMorphism& f = cat.lift().morphism;
  const Element g4 = f.image("g4");
  o.require((apply_d(*f.target(), f.image("g7")) - mul(g4, g4)).is_zero(), "residual on g7 is zero");
  return o;
}

Outcome ac7(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("hopf"), cat);
  o.require(child_passed(r, "pushout"), "s4 / (g4) = R[g7], d g7 = 0");
  o.require(r.passed(), "fiber maps");
  return o;
}

Outcome ac8(Catalog& cat) {
  Outcome o;
  const auto dims = cohomology_dims(cat.s4().algebra, 12);
  std::ostringstream s;
  for (std::size_t i = 0; i < dims.size(); ++i)
    s << (i ? "," : "[") << dims[i];
  s << ']';
  o.require(dims == std::vector<std::int64_t>{1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, "dims " + s.str());
  return o;
}

Outcome ac9() {
  Outcome o;
  const BraneScanEntry a = verify_brane_scan_entry(3, 2, 1);
  o.require(a.closed && a.nontrivial == Triviality::yes, "(3,2,1) " + a.note);
  const BraneScanEntry b = verify_brane_scan_entry(11, 32, 2);
  o.require(b.closed && b.nontrivial == Triviality::yes, "(11,32,2) " + b.note);
  const BraneScanEntry c = verify_brane_scan_entry(3, 2, 2);
  o.require(!c.closed, "(3,2,2) not closed: found " + c.note);
  return o;
}

Outcome ac10(Catalog& cat, bool quick) {
  Outcome o;
  o.require(check_d_squared(*cat.poincare().algebra).passed(), "d^2 on iso");
  const Report t3 = run_task(task("trace", {{"k", "3"}}), cat);
  o.require(child_passed(t3, "tr_omega2") && child_passed(t3, "tr_omega4"), "tr w^2 = tr w^4 = 0");
  o.require(child_passed(t3, "closure"), "d tr w^3 = 0");
  o.require(run_task(task("family.zero"), cat).passed(), "family(0,0)");
  o.require(run_task(task("family.alpha1"), cat).passed(), "family(1,0)");
  if (quick) {
    o.detail += "; long part skipped (--quick)";
    return o;
  }
  const Report t7 = run_task(task("trace", {{"k", "7"}}), cat);
  o.require(child_passed(t7, "closure"), "d tr w^7 = 0");
  o.require(run_task(task("family.beta1"), cat).passed(), "family(0,1)");
  o.require(run_task(task("family.alpha1beta1"), cat).passed(), "family(1,1)");
  return o;
}

Outcome ac11(Catalog& cat) {
  Outcome o;
  const Report r = run_task(task("flat.forms"), cat);
  for (const char* name : {"decomposable", "split", "split_without_w7"})
    o.require(child_passed(r, name), name);
  const Report fiber = forms_fiber_check(poly_de_rham(8), 64);
  o.require(fiber.passed() && fiber.counts.at("samples") >= 50,
            "fiber check on " + std::to_string(fiber.counts.at("samples")) + " samples");
  return o;
}

Outcome ac12() {
  Outcome o;
  const std::vector<std::string> ids{"clifford.d11", "mu.closure", "m5.relation", "m5.cocycle", "resolution",
                                     "lift",         "hopf",       "s4.cohomology", "brane.scan", "trace",
                                     "flat.forms",   "forms.fiber", "family.zero"};
  std::map<std::string, std::map<std::string, std::string>> first;
  {
    ThreadCountScope one(1);
    Catalog cat;
    for (const auto& id : ids)
      first[id] = collect_pinned(run_task(task(id), cat));
  }
  bool rerun = true, golden_ok = true;
  int goldens = 0;
  {
    ThreadCountScope many(std::max<std::size_t>(4, thread_count()));
    Catalog cat;
    for (const auto& id : ids) {
      const Report r = run_task(task(id), cat);
      rerun = rerun && collect_pinned(r) == first[id];
      if (const auto g = golden(id)) {
        ++goldens;
        golden_ok = golden_ok && compare_golden(make_golden(r, task(id)), *g).passed();
      }
    }
  }
  o.require(rerun, "sequential and parallel reruns of " + std::to_string(ids.size()) + " tasks agree");
  o.require(golden_ok && goldens > 0, std::to_string(goldens) + " golden reports match");
  return o;
}

} // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0)
      quick = true;

  Catalog cat;
  int failed = 0;
  auto line = [&](int n, const char* title, auto&& body) {
    Stopwatch clock;
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "AC" << n << ' ' << title << " -- " << o.detail << " ("
              << static_cast<int>(clock.seconds() * 1000) / 1000.0 << " s)" << std::endl;
  };

  line(1, "d^2 = 0 on catalog algebras", [&] { return ac1(cat); });
  line(2, "brane cocycle closure", [&] { return ac2(cat); });
  line(3, "d mu7 = c mu4 mu4", [&] { return ac3(cat); });
  line(4, "M5 cocycle closed", [&] { return ac4(cat); });
  line(5, "resolution equivalence", [&] { return ac5(cat); });
  line(6, "equivariant lift", [&] { return ac6(cat); });
  line(7, "Hopf pushout", [&] { return ac7(cat); });
  line(8, "cohomology of s4", [&] { return ac8(cat); });
  line(9, "brane scan mini-table", [&] { return ac9(); });
  line(10, "Lorentz traces and 7-cocycle family", [&] { return ac10(cat, quick); });
  line(11, "flat forms", [&] { return ac11(cat); });
  line(12, "determinism", [&] { return ac12(); });

  std::cout << "acceptance: " << 12 - failed << "/12 criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
