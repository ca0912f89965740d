#include <doctest.h>

#include <functional>

#include "fda/catalog.hpp"
#include "fda/expression.hpp"
#include "fda/parallel.hpp"
#include "support.hpp"

using namespace fda;

namespace {

/// Brute-force mu_{p+2}: every ordered tuple of distinct vector indices,
/// pairing matrix from explicit gamma products, e's lowered with eta.
Element mu_oracle(const CatalogAlgebra& mink, const CliffordRep& rep, int p) {
  const SignaturePtr& sig = mink.algebra->signature();
  const std::size_t n = rep.spinor_dim;
  ElementAccumulator acc(sig);
  std::vector<int> tuple;
  std::function<void()> rec = [&] {
    if (static_cast<int>(tuple.size()) == p) {
      IntMatrix m = rep.C;
      std::int64_t lower = 1;
      std::vector<std::pair<std::string, int>> es;
      for (int a : tuple) {
        m = m * rep.gammas[static_cast<std::size_t>(a)];
        lower *= rep.eta[static_cast<std::size_t>(a)];
        es.emplace_back("e" + std::to_string(a), 1);
      }
      for (std::size_t al = 0; al < n; ++al)
        for (std::size_t be = 0; be < n; ++be)
          if (m(al, be) != 0) {
            auto factors = es;
            factors.emplace_back("psi" + std::to_string(al), 1);
            factors.emplace_back("psi" + std::to_string(be), 1);
            acc.add(normalize(sig, factors, Rational(m(al, be) * lower)));
          }
      return;
    }
    for (int a = 0; a < rep.d; ++a)
      if (std::find(tuple.begin(), tuple.end(), a) == tuple.end()) {
        tuple.push_back(a);
        rec();
        tuple.pop_back();
      }
  };
  rec();
  return std::move(acc).finish();
}

/// tr(omega^k) as the trace of a power of the matrix Omega^a_b = eta^aa omega_ab.
Element trace_oracle(const CatalogAlgebra& poincare, const CliffordRep& rep, int k) {
  const SignaturePtr& sig = poincare.algebra->signature();
  const int d = rep.d;
  std::vector<std::vector<Element>> omega(static_cast<std::size_t>(d), std::vector<Element>(static_cast<std::size_t>(d), Element(sig)));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      const Element w = Element::generator(sig, "omega_" + std::to_string(a) + "_" + std::to_string(b));
      omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = Rational(rep.eta[static_cast<std::size_t>(a)]) * w;
      omega[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = Rational(-rep.eta[static_cast<std::size_t>(b)]) * w;
    }
  auto power = omega;
  for (int step = 1; step < k; ++step) {
    auto next = std::vector<std::vector<Element>>(static_cast<std::size_t>(d), std::vector<Element>(static_cast<std::size_t>(d), Element(sig)));
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
        ElementAccumulator acc(sig);
        for (std::size_t m = 0; m < static_cast<std::size_t>(d); ++m)
          if (!power[i][m].is_zero() && !omega[m][j].is_zero())
            acc.add(mul(power[i][m], omega[m][j]));
        next[i][j] = std::move(acc).finish();
      }
    power = std::move(next);
  }
  Element tr(sig);
  for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
    tr = tr + power[i][i];
  return tr;
}

} // namespace

TEST_SUITE("catalog") {

TEST_CASE("super-Minkowski algebras") {
  auto& cat = fdatest::catalog();
  CHECK(cat.mink(11).algebra->size() == 43);
  CHECK(cat.mink(3).algebra->size() == 5);
  CHECK(check_d_squared(*cat.mink(11).algebra).passed());
  CHECK(check_d_squared(*cat.mink(3).algebra).passed());
  try {
    (void)super_minkowski(11, cat.rep(3));
    FAIL("mismatched rep accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::rep_mismatch);
  }
}

TEST_CASE("brane cocycles match the ordered-tuple oracle") {
  auto& cat = fdatest::catalog();
  CHECK(cat.mu(3, 1) == mu_oracle(cat.mink(3), cat.rep(3), 1));
  CHECK(cat.mu(3, 2) == mu_oracle(cat.mink(3), cat.rep(3), 2));
  const Element& mu4 = cat.mu(11, 2);
  CHECK(mu4 == mu_oracle(cat.mink(11), cat.rep(11), 2));
  CHECK(mu4.size() == 912);
}

TEST_CASE("zero cocycles") {
  auto& cat = fdatest::catalog();
  for (int p : {0, 3, 4}) {
    try {
      (void)brane_cocycle(cat.mink(11), cat.rep(11), p);
      FAIL("antisymmetric pairing produced a cocycle");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::zero_cocycle);
    }
  }
}

TEST_CASE("closure of mu4 and mu3") {
  auto& cat = fdatest::catalog();
  CHECK(apply_d(*cat.mink(11).algebra, cat.mu(11, 2)).is_zero());
  CHECK(apply_d(*cat.mink(3).algebra, cat.mu(3, 1)).is_zero());
  CHECK_FALSE(apply_d(*cat.mink(11).algebra, cat.mu(11, 1)).is_zero());
  CHECK_FALSE(apply_d(*cat.mink(11).algebra, cat.mu(11, 5)).is_zero());
}

TEST_CASE("mu4 in d = 3 is exact: d(e0 e1 e2) is proportional to it") {
  auto& cat = fdatest::catalog();
  const DGCAPtr& m3 = cat.mink(3).algebra;
  const Element& mu = cat.mu(3, 2);
  CHECK_FALSE(mu.is_zero());
  CHECK(apply_d(*m3, mu).is_zero());
  const Element de = apply_d(*m3, parse_element(m3->signature(), "e0*e1*e2"));
  CHECK(verify_proportional(mu, de, "exact").passed());
}

TEST_CASE("M5 relation") {
  auto& cat = fdatest::catalog();
  const Report& rel = cat.m5_relation();
  CHECK(rel.passed());
  CHECK(rel.pinned.at("c") == "15");
  CHECK(cat.c() == Rational(15));
  const Element& mu4 = cat.mu(11, 2);
  const Element sq = mul(mu4, mu4);
  CHECK(sq.size() == 194992);
  CHECK(apply_d(*cat.mink(11).algebra, cat.mu(11, 5)) == Rational(15) * sq);
}

TEST_CASE("perturbed mu7 is not proportional") {
  auto& cat = fdatest::catalog();
  const Element& mu7 = cat.mu(11, 5);
  const Term& t = mu7.terms()[17];
  const Element bumped = mu7 + Element::monomial(mu7.signature(), t.monomial, t.coeff);
  const Element& mu4 = cat.mu(11, 2);
  const Report r = verify_proportional(apply_d(*cat.mink(11).algebra, bumped), mul(mu4, mu4), "perturbed");
  CHECK_FALSE(r.passed());
  CHECK(r.error == std::optional<std::string>("NotProportional"));
}

TEST_CASE("M5 cocycle") {
  auto& cat = fdatest::catalog();
  CHECK(cat.m5().report.passed());
  const DGCAPtr& m2 = cat.m2().algebra;
  const SignaturePtr& sig = m2->signature();
  const Element h3 = Element::generator(sig, "h3");
  const Element mu4 = transport(cat.mu(11, 2), sig);
  const Element mu7 = transport(cat.mu(11, 5), sig);
  const Element sq = mul(mu4, mu4);
  CHECK(apply_d(*m2, mul(h3, mu4)) == -sq);
  const Element wrong = mul(h3, mu4) + Rational(2, 15) * mu7;
  const Element residual = apply_d(*m2, wrong);
  CHECK(residual == sq);
}

TEST_CASE("resolution") {
  auto& cat = fdatest::catalog();
  const Resolution& res = cat.resolution();
  CHECK(res.report.passed());
  CHECK(res.algebra.algebra->size() == 45);
  const SignaturePtr& sig = res.algebra.algebra->signature();
  CHECK(res.p.image("h3").is_zero());
  CHECK(res.p.image("g4") == cat.mu(11, 2));
  const Element e3 = Element::generator(sig, "e3");
  CHECK(apply_homotopy(res.s, e3).is_zero());
  CHECK(res.iota.apply(Element::generator(res.iota.source()->signature(), "e3")) == e3);
}

TEST_CASE("equivariant lift") {
  auto& cat = fdatest::catalog();
  const Lift& lift = cat.lift();
  CHECK(lift.report.passed());
  const DGCAPtr& target = lift.morphism.target();
  const Element g4 = lift.morphism.image("g4");
  CHECK(g4 == Element::generator(target->signature(), "g4"));
  CHECK(apply_d(*target, lift.morphism.image("g7")) == mul(g4, g4));
  CHECK(apply_d(*target, g4).is_zero());
}

TEST_CASE("super-Poincare algebra") {
  auto& cat = fdatest::catalog();
  const DGCAPtr& a = cat.poincare().algebra;
  CHECK(a->size() == 98);
  CHECK(check_d_squared(*a).passed());
  const CatalogAlgebra p3 = super_poincare(cat.mink(3), cat.rep(3));
  CHECK(p3.algebra->size() == 8);
  CHECK(check_d_squared(*p3.algebra).passed());
  // omega -> 0 gives back super-Minkowski.
  std::set<std::string> omegas;
  for (const auto& g : a->signature()->generators())
    if (g.family == "omega")
      omegas.insert(g.name);
  CHECK(*set_generators_to_zero(a, omegas) == *cat.mink(11).algebra);
}

TEST_CASE("Lorentz traces match the matrix-power oracle") {
  auto& cat = fdatest::catalog();
  const CatalogAlgebra p3 = super_poincare(cat.mink(3), cat.rep(3));
  for (int k : {2, 3, 4, 5})
    CHECK(lorentz_trace_element(p3, cat.rep(3), k) == trace_oracle(p3, cat.rep(3), k));
  const CatalogAlgebra& p11 = cat.poincare();
  for (int k : {2, 3, 4})
    CHECK(lorentz_trace_element(p11, cat.rep(11), k) == trace_oracle(p11, cat.rep(11), k));
  const LorentzTrace& t3 = cat.trace(3);
  CHECK(t3.report.passed());
  CHECK(t3.element.size() == 165);
  CHECK(lorentz_trace_element(p11, cat.rep(11), 2).is_zero());
  CHECK(lorentz_trace_element(p11, cat.rep(11), 4).is_zero());
  CHECK_THROWS_AS(lorentz_trace(p11, cat.rep(11), 5), Error);
}

TEST_CASE("family of 7-cocycles at (0,0)") {
  auto& cat = fdatest::catalog();
  const FamilyCocycle f = family_seven_cocycle(cat.resolved_poincare(), cat.s4(), cat.poincare_mu(2),
                                               cat.poincare_mu(5), cat.c(), 0, 0, cat.trace(3).element, nullptr,
                                               &cat.lift());
  CHECK(f.report.passed());
  try {
    (void)family_seven_cocycle(cat.resolved_poincare(), cat.s4(), cat.poincare_mu(2), cat.poincare_mu(5), cat.c(), 0,
                               1, cat.trace(3).element, nullptr);
    FAIL("beta without tr(omega^7) accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::capped);
  }
}

TEST_CASE("brane scan") {
  const BraneScanEntry a = verify_brane_scan_entry(3, 2, 1);
  CHECK(a.closed);
  CHECK(a.nontrivial == Triviality::yes);
  const BraneScanEntry b = verify_brane_scan_entry(11, 32, 2);
  CHECK(b.closed);
  CHECK(b.nontrivial == Triviality::yes);
  CHECK(b.report.pinned.at("basis_degree_3") == "13717");
  const BraneScanEntry c = verify_brane_scan_entry(3, 2, 2);
  CHECK(c.closed);
  CHECK(c.nontrivial == Triviality::no);
  const BraneScanEntry z = verify_brane_scan_entry(11, 32, 3);
  CHECK(z.closed);
  CHECK(z.nontrivial == Triviality::no);
  CHECK_THROWS_AS(verify_brane_scan_entry(11, 16, 2), Error);
}

TEST_CASE("catalog objects do not depend on the thread count") {
  Element seq(fdatest::catalog().mu(11, 5).signature());
  {
    ThreadCountScope one(1);
    Catalog cat;
    seq = cat.mu(11, 5);
    CHECK(cat.m5_relation().pinned.at("c") == "15");
    CHECK(lorentz_trace_element(cat.poincare(), cat.rep(11), 3) == fdatest::catalog().trace(3).element);
  }
  CHECK(seq == fdatest::catalog().mu(11, 5));
}

}
