#include <doctest.h>

#include <filesystem>
#include <random>

#include "fda/expression.hpp"
#include "fda/rathtpy.hpp"
#include "fda/serialize.hpp"
#include "support.hpp"

using namespace fda;

TEST_SUITE("serialize") {

TEST_CASE("element round trip") {
  auto& cat = fdatest::catalog();
  const Element& mu4 = cat.mu(11, 2);
  CHECK(element_from_json(mu4.signature(), to_json(mu4)) == mu4);
  std::mt19937_64 rng(51);
  const SignaturePtr& sig = cat.resolution().algebra.algebra->signature();
  for (int i = 0; i < 20; ++i) {
    const Element x = Rational(1, 7) * fdatest::random_element(sig, rng, 5, 4);
    CHECK(element_from_json(sig, to_json(x)) == x);
  }
  const json j = to_json(parse_element(sig, "1/15*g4*h3"));
  CHECK(j[0]["coeff"] == "1/15");
}

TEST_CASE("malformed element input") {
  const SignaturePtr sig = sphere_model(4).algebra->signature();
  CHECK_THROWS_AS(element_from_json(sig, json::parse(R"([{"monomial": [["g4", 1]]}])")), Error);
  CHECK_THROWS_AS(element_from_json(sig, json::parse(R"([{"monomial": [["g9", 1]], "coeff": "1"}])")), Error);
  CHECK_THROWS_AS(element_from_json(sig, json::parse(R"([{"monomial": [["g4", 1]], "coeff": "1/0"}])")), Error);
}

TEST_CASE("algebra and morphism round trips") {
  auto& cat = fdatest::catalog();
  for (const DGCAPtr& a : {cat.s4().algebra, cat.m2().algebra, cat.poincare().algebra}) {
    const DGCAPtr b = dgca_from_json(to_json(*a));
    CHECK(*b == *a);
    CHECK(b->label() == a->label());
  }
  const DGCAMorphism& f = cat.lift().morphism;
  CHECK(morphism_from_json(to_json(f)) == f);
  json bad = to_json(*cat.s4().algebra);
  bad["schema"] = "fda.dgca/99";
  CHECK_THROWS_AS(dgca_from_json(bad), Error);
}

TEST_CASE("report round trip") {
  auto& cat = fdatest::catalog();
  Report r = cat.m5().report;
  r.add(Report::make_fail("negative", "residual kept", mul(cat.mu(11, 2), cat.mu(11, 2)), Errc::not_closed));
  const Report back = report_from_json(to_json(r));
  CHECK(back.name == r.name);
  CHECK(back.verdict == r.verdict);
  CHECK(back.pinned == r.pinned);
  REQUIRE(back.checks.size() == r.checks.size());
  const Report& neg = back.checks.back();
  CHECK(neg.error == std::optional<std::string>("NotClosed"));
  REQUIRE(neg.witness);
  CHECK(neg.witness->size() == r.checks.back().witness->size());
  CHECK(to_json(*neg.witness) == to_json(*r.checks.back().witness));
}

TEST_CASE("json files") {
  const auto dir = std::filesystem::temp_directory_path() / "fda-serialize-test";
  std::filesystem::create_directories(dir);
  const json j = to_json(*sphere_model(4).algebra);
  write_json_file(dir / "s4.json", j);
  CHECK(read_json_file(dir / "s4.json") == j);
  try {
    (void)read_json_file(dir / "missing.json");
    FAIL("missing file read");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io);
  }
  std::filesystem::remove_all(dir);
}

}
