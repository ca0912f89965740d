#include <doctest.h>

#include <random>

#include "fda/catalog.hpp"
#include "fda/dgca.hpp"
#include "fda/expression.hpp"
#include "fda/parallel.hpp"
#include "fda/rathtpy.hpp"
#include "support.hpp"

using namespace fda;

namespace {

DGCAPtr s4_model() {
  auto sig = make_signature(
      {GeneratorDecl::make("g", {4}, {4, Parity::even}), GeneratorDecl::make("g", {7}, {7, Parity::even})});
  return make_dgca(sig, {{"g7", parse_element(sig, "g4^2")}}, "s4");
}

/// Free algebra on random generators with zero differential.
DGCAPtr free_algebra(std::mt19937_64& rng, const std::string& family, int n) {
  std::uniform_int_distribution<int> deg(1, 3), par(0, 1);
  std::vector<GeneratorDecl> decls;
  for (int i = 0; i < n; ++i)
    decls.push_back(GeneratorDecl::make(family, {i}, {deg(rng), static_cast<Parity>(par(rng))}));
  return make_dgca(make_signature(std::move(decls)), {});
}

std::map<std::string, Element> random_images(const DGCAPtr& from, const DGCAPtr& to, std::mt19937_64& rng) {
  std::map<std::string, Element> images;
  for (const auto& g : from->signature()->generators())
    images.emplace(g.name, fdatest::random_homogeneous(to->signature(), rng, g.bidegree, 3));
  return images;
}

} // namespace

TEST_SUITE("dgca") {

TEST_CASE("make_dgca examples") {
  const DGCAPtr s4 = s4_model();
  CHECK(check_d_squared(*s4).passed());
  CHECK(apply_d(*s4, s4->generator("g7")) == mul(s4->generator("g4"), s4->generator("g4")));

  auto line = make_signature({GeneratorDecl::make("g", {4}, {4, Parity::even})});
  CHECK(check_d_squared(*make_dgca(line, {})).passed());

  auto sig = s4->signature();
  try {
    (void)make_dgca(sig, {{"g7", s4->generator("g4")}});
    FAIL("wrong-degree image accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bidegree_mismatch);
  }
  try {
    (void)make_dgca(sig, {{"g7", parse_element(sig, "g4^2 + g4")}});
    FAIL("inhomogeneous image accepted");
  } catch (const Error& e) {
    CHECK((e.code() == Errc::inhomogeneous_image || e.code() == Errc::bidegree_mismatch));
  }
}

TEST_CASE("apply_d on the d = 11 super-Minkowski algebra") {
  auto& cat = fdatest::catalog();
  const CatalogAlgebra& mink = cat.mink(11);
  const CliffordRep& rep = cat.rep(11);
  const SignaturePtr& sig = mink.algebra->signature();
  for (int a : {0, 4, 10}) {
    // Oracle: expand psibar Gamma^a psi entry by entry.
    const IntMatrix cg = rep.C * rep.gammas[static_cast<std::size_t>(a)];
    Element expect(sig);
    for (std::size_t al = 0; al < 32; ++al)
      for (std::size_t be = 0; be < 32; ++be)
        if (cg(al, be) != 0)
          expect = expect + Rational(cg(al, be)) * mul(Element::generator(sig, "psi" + std::to_string(al)),
                                                       Element::generator(sig, "psi" + std::to_string(be)));
    CHECK(apply_d(*mink.algebra, Element::generator(sig, "e" + std::to_string(a))) == expect);
  }
  CHECK(apply_d(*mink.algebra, Element::generator(sig, "psi7")).is_zero());
  const Element h = Element::generator(cat.m2().algebra->signature(), "h3");
  CHECK(apply_d(*cat.m2().algebra, mul(h, h)).is_zero());
}

TEST_CASE("Leibniz rule on random products") {
  std::mt19937_64 rng(21);
  auto& cat = fdatest::catalog();
  const DGCAPtr& a = cat.resolution().algebra.algebra;
  const SignaturePtr& sig = a->signature();
  for (int i = 0; i < 50; ++i) {
    const Element x = fdatest::random_homogeneous(sig, rng, {2, Parity::even}, 3);
    const Element y = fdatest::random_element(sig, rng, 3, 3);
    CHECK(apply_d(*a, mul(x, y)) == mul(apply_d(*a, x), y) + mul(x, apply_d(*a, y)));
    const Element z = fdatest::random_homogeneous(sig, rng, {3, Parity::even}, 3);
    CHECK(apply_d(*a, mul(z, y)) == mul(apply_d(*a, z), y) - mul(z, apply_d(*a, y)));
  }
}

TEST_CASE("check_d_squared negative control: corrupted d omega") {
  auto& cat = fdatest::catalog();
  const DGCAPtr& good = cat.poincare().algebra;
  const SignaturePtr& sig = good->signature();
  std::map<std::string, Element> images;
  for (const auto& g : sig->generators())
    images.emplace(g.name, good->differential(g.name));
  images.at("omega_0_1") = images.at("omega_0_1") + parse_element(sig, "omega_0_2*omega_2_3");
  const Report r = check_d_squared(*make_dgca(sig, images));
  CHECK_FALSE(r.passed());
  REQUIRE(r.witness);
  CHECK_FALSE(r.witness->is_zero());
}

TEST_CASE("make_morphism examples") {
  auto& cat = fdatest::catalog();
  auto line = make_dgca(make_signature({GeneratorDecl::make("g", {4}, {4, Parity::even})}), {});
  const DGCAMorphism f = make_morphism(line, cat.mink(11).algebra, {{"g4", cat.mu(11, 2)}});
  CHECK(check_chain_map(f).passed());

  const Resolution& res = cat.resolution();
  const SignaturePtr& rs = res.algebra.algebra->signature();
  const Element bad = mul(Element::generator(rs, "h3"), transport(cat.mu(11, 2), rs));
  try {
    (void)make_morphism(cat.s4().algebra, res.algebra.algebra, {{"g7", bad}});
    FAIL("chain map violation not detected");
  } catch (const ChainMapViolation& e) {
    CHECK(e.generator() == "g7");
    CHECK_FALSE(e.residual().is_zero());
  }
  const DGCAMorphism lazy =
      make_morphism(cat.s4().algebra, res.algebra.algebra, {{"g7", bad}}, Validation::lazy);
  CHECK_FALSE(check_chain_map(lazy).passed());

  try {
    (void)make_morphism(line, cat.mink(11).algebra, {{"g4", Element::generator(cat.mink(11).algebra->signature(), "e0")}});
    FAIL("ill-typed image accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bidegree_mismatch);
  }
}

TEST_CASE("chain maps commute with d on random monomials") {
  std::mt19937_64 rng(22);
  auto& cat = fdatest::catalog();
  const Lift& lift = cat.lift();
  const SignaturePtr& ssig = lift.morphism.source()->signature();
  for (int i = 0; i < 6; ++i) {
    const Element m = fdatest::random_element(ssig, rng, 2, 2);
    CHECK(apply_d(*lift.morphism.target(), lift.morphism.apply(m)) ==
          lift.morphism.apply(apply_d(*lift.morphism.source(), m)));
  }
  const DGCAMorphism& iota = cat.resolution().iota;
  const SignaturePtr& msig = iota.source()->signature();
  for (int i = 0; i < 20; ++i) {
    const Element m = fdatest::random_element(msig, rng, 3, 3);
    CHECK(apply_d(*iota.target(), iota.apply(m)) == iota.apply(apply_d(*iota.source(), m)));
  }
}

TEST_CASE("compose") {
  auto& cat = fdatest::catalog();
  const Resolution& res = cat.resolution();
  CHECK(compose(res.iota, res.p) == identity(res.iota.source()));
  CHECK(compose(res.p, identity(res.p.target())) == res.p);
  CHECK(compose(identity(res.p.source()), res.p) == res.p);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    auto a = free_algebra(rng, "a", 3), b = free_algebra(rng, "b", 4), c = free_algebra(rng, "c", 4),
         d = free_algebra(rng, "d", 5);
    const auto f = make_morphism(a, b, random_images(a, b, rng));
    const auto g = make_morphism(b, c, random_images(b, c, rng));
    const auto h = make_morphism(c, d, random_images(c, d, rng));
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }
}

TEST_CASE("check_homotopy examples") {
  auto& cat = fdatest::catalog();
  const Resolution& res = cat.resolution();
  CHECK(check_homotopy(res.s.f, res.s.g, res.s).passed());
  const SignaturePtr& rs = res.algebra.algebra->signature();
  const Element g4 = Element::generator(rs, "g4");
  CHECK(apply_homotopy(res.s, g4) == Element::generator(rs, "h3"));
  CHECK(apply_d(*res.algebra.algebra, Element::generator(rs, "h3")) ==
        g4 - transport(cat.mu(11, 2), rs));

  const auto zero = make_homotopy(res.iota, res.iota, {});
  CHECK(check_homotopy(res.iota, res.iota, zero).passed());
  const auto doubled = make_homotopy(res.s.f, res.s.g, {{"g4", Rational(2) * Element::generator(rs, "h3")}});
  const Report bad = check_homotopy(res.s.f, res.s.g, doubled);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("adjoin_generator") {
  auto& cat = fdatest::catalog();
  const DGCAPtr& mink = cat.mink(11).algebra;
  const DGCAPtr m2 =
      adjoin_generator(mink, GeneratorDecl::make("h", {3}, {3, Parity::even}), cat.mu(11, 2), Rational(-1));
  CHECK(*m2 == *cat.m2().algebra);

  const DGCAPtr s4 = s4_model();
  const DGCAPtr b6 = adjoin_generator(s4, GeneratorDecl::make("b", {6}, {6, Parity::even}), Element::zero(s4->signature()));
  CHECK(check_d_squared(*b6).passed());
  CHECK(*set_generators_to_zero(b6, {"b6"}) == *s4);

  try {
    (void)adjoin_generator(mink, GeneratorDecl::make("k", {6}, {6, Parity::even}), cat.mu(11, 5));
    FAIL("non-closed image accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_closed);
  }
}

TEST_CASE("set_generators_to_zero") {
  const DGCAPtr s4 = s4_model();
  const DGCAPtr r7 = set_generators_to_zero(s4, {"g4"});
  CHECK(r7->size() == 1);
  CHECK(r7->differential("g7").is_zero());
  CHECK(*set_generators_to_zero(s4, {}) == *s4);

  auto& cat = fdatest::catalog();
  std::set<std::string> all;
  for (const auto& g : cat.mink(11).algebra->signature()->generators())
    all.insert(g.name);
  const DGCAPtr h = set_generators_to_zero(cat.m2().algebra, all);
  CHECK(h->size() == 1);
  CHECK(h->differential("h3").is_zero());
}

TEST_CASE("tensor_product and inclusion") {
  const DGCAPtr s2 = sphere_model(2).algebra;
  const DGCAPtr s5 = sphere_model(5).algebra;
  const DGCAPtr t = tensor_product(s2, s5);
  CHECK(t->size() == 3);
  CHECK(check_d_squared(*t).passed());
  CHECK(check_chain_map(inclusion(s2, t)).passed());
  CHECK_THROWS_AS(tensor_product(s2, s2), Error);
}

TEST_CASE("apply_d is independent of the thread count") {
  auto& cat = fdatest::catalog();
  const Element& mu7 = cat.mu(11, 5);
  Element seq(mu7.signature()), par(mu7.signature());
  {
    ThreadCountScope one(1);
    seq = apply_d(*cat.mink(11).algebra, mu7);
  }
  {
    ThreadCountScope four(4);
    par = apply_d(*cat.mink(11).algebra, mu7);
  }
  CHECK(seq == par);
  CHECK(seq.size() == 194992);
}

}
