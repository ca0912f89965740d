#include <doctest.h>

#include <algorithm>
#include <random>

#include "fda/errors.hpp"
#include "fda/expression.hpp"
#include "fda/graded.hpp"
#include "support.hpp"

using namespace fda;

namespace {

const Bidegree one_even{1, Parity::even};
const Bidegree one_odd{1, Parity::odd};

SignaturePtr small_signature() {
  return make_signature({
      GeneratorDecl::make("e", {1}, one_even),
      GeneratorDecl::make("e", {2}, one_even),
      GeneratorDecl::make("psi", {1}, one_odd),
      GeneratorDecl::make("psi", {2}, one_odd),
      GeneratorDecl::make("h", {3}, {3, Parity::even}),
      GeneratorDecl::make("g", {4}, {4, Parity::even}),
      GeneratorDecl::make("g", {7}, {7, Parity::even}),
      GeneratorDecl::make("x", {1}, {0, Parity::even}),
  });
}

SignaturePtr random_signature(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> deg(0, 4), par(0, 1);
  std::vector<GeneratorDecl> decls;
  for (int i = 0; i < n; ++i) {
    int d = deg(rng);
    Parity p = static_cast<Parity>(par(rng));
    if (d == 0)
      p = Parity::even; // keeps degree-0 generators even
    decls.push_back(GeneratorDecl::make("t", {i}, {d, p}));
  }
  return make_signature(std::move(decls));
}

Element gen(const SignaturePtr& s, const char* name) { return Element::generator(s, name); }

} // namespace

TEST_SUITE("graded") {

TEST_CASE("commutation sign and square-zero rule") {
  CHECK(commutation_sign(one_even, one_even) == -1);
  CHECK(commutation_sign(one_odd, one_odd) == 1);
  CHECK(commutation_sign(one_even, one_odd) == -1);
  CHECK(commutation_sign({4, Parity::even}, {7, Parity::even}) == 1);
  CHECK(one_even.square_zero());
  CHECK_FALSE(one_odd.square_zero());
  CHECK(Bidegree{3, Parity::even}.square_zero());
  CHECK_FALSE(Bidegree{4, Parity::even}.square_zero());
}

TEST_CASE("generator names") {
  CHECK(GeneratorDecl::make("e", {3}, one_even).name == "e3");
  CHECK(GeneratorDecl::make("omega", {0, 4}, one_even).name == "omega_0_4");
  CHECK(GeneratorDecl::make("g", {7}, {7, Parity::even}, "top").name == "top");
}

TEST_CASE("make_signature") {
  std::vector<GeneratorDecl> decls;
  for (int a = 0; a <= 10; ++a)
    decls.push_back(GeneratorDecl::make("e", {a}, one_even));
  for (int a = 1; a <= 32; ++a)
    decls.push_back(GeneratorDecl::make("psi", {a}, one_odd));
  CHECK(make_signature(decls)->size() == 43);
  CHECK(make_signature({})->size() == 0);
  try {
    (void)make_signature({GeneratorDecl::make("x", {}, one_even), GeneratorDecl::make("x", {}, one_even)});
    FAIL("duplicate accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_name);
  }
}

TEST_CASE("canonical order ignores declaration order") {
  auto a = make_signature({GeneratorDecl::make("psi", {0}, one_odd), GeneratorDecl::make("e", {1}, one_even),
                           GeneratorDecl::make("e", {0}, one_even)});
  CHECK(a->name(0) == "e0");
  CHECK(a->name(1) == "e1");
  CHECK(a->name(2) == "psi0");
}

TEST_CASE("normalize examples") {
  auto s = small_signature();
  const std::vector<std::pair<std::string, int>> e21{{"e2", 1}, {"e1", 1}};
  CHECK(normalize(s, e21, 1) == -(gen(s, "e1") * gen(s, "e2")));
  const std::vector<std::pair<std::string, int>> pp{{"psi1", 1}, {"psi1", 1}};
  const Element psisq = normalize(s, pp, 1);
  CHECK(psisq.size() == 1);
  CHECK(psisq == gen(s, "psi1") * gen(s, "psi1"));
  const std::vector<std::pair<std::string, int>> hh{{"h3", 2}};
  CHECK(normalize(s, hh, 1).is_zero());
  const std::vector<std::pair<std::string, int>> xx{{"x1", 5}};
  CHECK(normalize(s, xx, 1).size() == 1);
  const std::vector<std::pair<std::string, int>> bad{{"nope", 1}};
  CHECK_THROWS_AS(normalize(s, bad, 1), Error);
}

TEST_CASE("canonicalize matches the transposition-count oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto sig = random_signature(rng, 7);
    std::uniform_int_distribution<int> g(0, 6), len(0, 7);
    for (int k = 0; k < 20; ++k) {
      std::vector<GenId> ids(static_cast<std::size_t>(len(rng)));
      for (auto& id : ids)
        id = static_cast<GenId>(g(rng));
      Monomial::Storage f(ids.begin(), ids.end());
      const int sign = canonicalize(*sig, f);
      CHECK(sign == fdatest::transposition_sign(*sig, ids));
      if (sign != 0)
        CHECK(std::is_sorted(f.begin(), f.end()));
      // Any shuffle of the same factors lands on the same monomial.
      std::shuffle(ids.begin(), ids.end(), rng);
      Monomial::Storage h(ids.begin(), ids.end());
      const int sign2 = canonicalize(*sig, h);
      CHECK((sign2 == 0) == (sign == 0));
      if (sign != 0)
        CHECK(h == f);
    }
  }
}

TEST_CASE("graded commutativity on 1000 random monomial pairs") {
  std::mt19937_64 rng(12);
  auto sig = random_signature(rng, 9);
  std::uniform_int_distribution<int> g(0, 8), len(0, 4);
  int checked = 0;
  while (checked < 1000) {
    auto draw = [&] {
      std::vector<GenId> ids(static_cast<std::size_t>(len(rng)));
      for (auto& id : ids)
        id = static_cast<GenId>(g(rng));
      Monomial::Storage f(ids.begin(), ids.end());
      const int s = canonicalize(*sig, f);
      return std::pair{s, Monomial(f)};
    };
    auto [sa, a] = draw();
    auto [sb, b] = draw();
    if (sa == 0 || sb == 0)
      continue;
    const Element x = Element::monomial(sig, a), y = Element::monomial(sig, b);
    const int sign = commutation_sign(bidegree_of(*sig, a), bidegree_of(*sig, b));
    CHECK(mul(x, y) == Rational(sign) * mul(y, x));
    ++checked;
  }
}

TEST_CASE("mul is associative and unital") {
  std::mt19937_64 rng(13);
  auto sig = small_signature();
  const Element one = Element::one(sig);
  for (int i = 0; i < 100; ++i) {
    const Element a = fdatest::random_element(sig, rng, 4, 3);
    const Element b = fdatest::random_element(sig, rng, 4, 3);
    const Element c = fdatest::random_element(sig, rng, 4, 3);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, one) == a);
    CHECK(mul(one, a) == a);
    CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
  }
}

TEST_CASE("mul examples") {
  auto s = small_signature();
  const Element g4 = gen(s, "g4");
  CHECK(mul(g4, Element::zero(s)).is_zero());
  CHECK_FALSE(mul(g4, g4).is_zero());
  CHECK(mul(gen(s, "h3"), gen(s, "h3")).is_zero());
  CHECK(mul(gen(s, "e1"), gen(s, "e1")).is_zero());
  auto other = make_signature({GeneratorDecl::make("q", {1}, one_even)});
  try {
    (void)mul(g4, Element::generator(other, "q1"));
    FAIL("mixed signatures accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::signature_mismatch);
  }
}

TEST_CASE("linear_combine") {
  auto s = small_signature();
  const Element x = gen(s, "g4") * gen(s, "e1");
  const std::vector<std::pair<Rational, Element>> cancel{{1, x}, {-1, x}};
  CHECK(linear_combine(cancel).is_zero());
  const std::vector<std::pair<Rational, Element>> five{{2, x}, {3, x}};
  CHECK(linear_combine(five) == Rational(5) * x);
  const std::vector<std::pair<Rational, Element>> fifteenth{{Rational(1, 15), x}};
  const Element y = linear_combine(fifteenth);
  CHECK(y.terms()[0].coeff == Rational(1, 15));
}

TEST_CASE("parse_element") {
  auto s = small_signature();
  CHECK(parse_element(s, "e1*e2") == -parse_element(s, "e2*e1"));
  CHECK(parse_element(s, "psi1*psi2") == parse_element(s, "psi2*psi1"));
  CHECK(parse_element(s, "e1*e1").is_zero());
  CHECK(parse_element(s, "x1^3 - x1*x1*x1").is_zero());
  CHECK(parse_element(s, "1/15*g4") == Rational(1, 15) * gen(s, "g4"));
  CHECK(parse_element(s, "(g4 + e1)*(g4 - e1)") == mul(gen(s, "g4"), gen(s, "g4")));
  CHECK(parse_element(s, "0").is_zero());
  CHECK_THROWS_AS(parse_element(s, "g4 +"), Error);
  CHECK_THROWS_AS(parse_element(s, "y1"), Error);
}

TEST_CASE("transport between signatures") {
  auto s = small_signature();
  auto t = make_signature({GeneratorDecl::make("g", {4}, {4, Parity::even}), GeneratorDecl::make("e", {1}, one_even)});
  const Element x = parse_element(t, "g4*e1 + 2*e1");
  const Element y = transport(x, s);
  CHECK(y == parse_element(s, "g4*e1 + 2*e1"));
  CHECK_THROWS_AS(transport(gen(s, "h3"), t), Error);
}

}
