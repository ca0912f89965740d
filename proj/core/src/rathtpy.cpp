#include "fda/rathtpy.hpp"

#include <random>
#include <stdexcept>

#include "fda/expression.hpp"

namespace fda {

std::vector<std::int64_t> sphere_cohomology(int n, int max_degree) {
  std::vector<std::int64_t> dims(static_cast<std::size_t>(max_degree + 1), 0);
  dims[0] = 1;
  if (n <= max_degree)
    dims[static_cast<std::size_t>(n)] = 1;
  return dims;
}

SphereModel sphere_model(int n) {
  if (n < 1)
    throw Error(Errc::unsupported, "sphere dimension must be positive");
  std::vector<GeneratorDecl> decls{GeneratorDecl::make("g", {n}, {n, Parity::even})};
  if (n % 2 == 0)
    decls.push_back(GeneratorDecl::make("g", {2 * n - 1}, {2 * n - 1, Parity::even}));
  SignaturePtr sig = make_signature(std::move(decls));
  std::map<std::string, Element> images;
  if (n % 2 == 0) {
    const Element g = Element::generator(sig, "g" + std::to_string(n));
    images.emplace("g" + std::to_string(2 * n - 1), mul(g, g));
  }
  SphereModel out{n, make_dgca(sig, images, n == 4 ? "s4" : "S" + std::to_string(n))};
  if (cohomology_dims(out.algebra, 3 * n) != sphere_cohomology(n, 3 * n))
    throw std::logic_error("sphere model cohomology mismatch for n = " + std::to_string(n));
  return out;
}

Report hopf_sequence_check() {
  Stopwatch clock;
  Report r = Report::make_pass("hopf", "killing g4 in s4 leaves R[g7] with zero differential");
  const DGCAPtr s4 = sphere_model(4).algebra;
  const DGCAPtr quotient = set_generators_to_zero(s4, {"g4"}, "R[g7]");
  SignaturePtr g7sig = make_signature({GeneratorDecl::make("g", {7}, {7, Parity::even})});
  const DGCAPtr expected = make_dgca(g7sig, {}, "R[g7]");
  r.add(*quotient == *expected ? Report::make_pass("pushout", "s4 / (g4) = R[g7], d g7 = 0")
                               : Report::make_fail("pushout", "quotient is not R[g7] with zero differential",
                                                   quotient->differential("g7")));
  SignaturePtr g4sig = make_signature({GeneratorDecl::make("g", {4}, {4, Parity::even})});
  const DGCAPtr line = make_dgca(g4sig, {}, "R[g4]");
  const DGCAMorphism base = inclusion(line, s4, Validation::lazy);
  Report chain = check_chain_map(base);
  chain.name = "base_map";
  r.add(std::move(chain));
  const DGCAMorphism fiber = kill_map(s4, quotient, {"g4"}, Validation::lazy);
  Report fchain = check_chain_map(fiber);
  fchain.name = "fiber_map";
  r.add(std::move(fchain));
  const DGCAMorphism composite = compose(base, fiber);
  r.add(composite.image("g4").is_zero()
            ? Report::make_pass("composite", "R[g4] -> s4 -> R[g7] sends g4 to 0")
            : Report::make_fail("composite", "g4 survives the composite", composite.image("g4")));
  r.seconds = clock.seconds();
  return r;
}

PolyDeRham poly_de_rham(int n) {
  if (n < 1)
    throw Error(Errc::unsupported, "dimension must be positive");
  std::vector<GeneratorDecl> decls;
  for (int i = 1; i <= n; ++i) {
    decls.push_back(GeneratorDecl::make("x", {i}, {0, Parity::even}));
    decls.push_back(GeneratorDecl::make("dx", {i}, {1, Parity::even}));
  }
  SignaturePtr sig = make_signature(std::move(decls));
  std::map<std::string, Element> images;
  for (int i = 1; i <= n; ++i)
    images.emplace("x" + std::to_string(i), Element::generator(sig, "dx" + std::to_string(i)));
  return PolyDeRham{n, make_dgca(sig, images, "Omega(R^" + std::to_string(n) + ")")};
}

Element radial_homotopy(const PolyDeRham& target, const Element& form) {
  const SignaturePtr& sig = target.algebra->signature();
  require_same_signature(sig, form.signature(), "radial_homotopy");
  std::vector<GenId> x_of(sig->size(), 0);
  std::vector<bool> is_dx(sig->size(), false);
  for (std::size_t g = 0; g < sig->size(); ++g) {
    const GeneratorDecl& decl = sig->generator(static_cast<GenId>(g));
    if (decl.family == "dx") {
      is_dx[g] = true;
      x_of[g] = sig->id("x" + std::to_string(decl.indices.at(0)));
    }
  }
  ElementAccumulator acc(sig);
  Monomial::Storage f;
  for (const Term& t : form.terms()) {
    std::vector<GenId> xs, dxs;
    for (GenId g : t.monomial.factors())
      (is_dx[g] ? dxs : xs).push_back(g);
    const auto total = static_cast<std::int64_t>(xs.size() + dxs.size());
    if (dxs.empty())
      continue;
    for (std::size_t i = 0; i < dxs.size(); ++i) {
      f.assign(xs.begin(), xs.end());
      f.push_back(x_of[dxs[i]]);
      for (std::size_t j = 0; j < dxs.size(); ++j)
        if (j != i)
          f.push_back(dxs[j]);
      const Rational c = t.coeff / Rational(total);
      acc.add_raw(f, (i % 2 == 0) ? c : -c);
    }
  }
  return std::move(acc).finish();
}

Report poincare_lemma_check(const PolyDeRham& target, const Element& form) {
  const auto b = form.bidegree();
  if (!form.is_zero() && (!b || b->degree == 0))
    return Report::make_fail("poincare_lemma", "needs a homogeneous form of positive degree");
  Element d = apply_d(*target.algebra, form);
  if (!d.is_zero())
    return Report::make_fail("poincare_lemma", "form is not closed", std::move(d), Errc::not_closed);
  Element w = radial_homotopy(target, form);
  Element residual = apply_d(*target.algebra, w) - form;
  if (!residual.is_zero())
    return Report::make_fail("poincare_lemma", "d H(form) != form", std::move(residual));
  Report r = Report::make_pass("poincare_lemma", "form = d H(form)");
  r.witness = std::move(w);
  return r;
}

FlatFormResult flat_form_check(const DGCAPtr& model, const PolyDeRham& target,
                               const std::map<std::string, Element>& images) {
  FlatFormResult out;
  std::map<std::string, Element> all;
  for (const GeneratorDecl& g : model->signature()->generators()) {
    auto it = images.find(g.name);
    all.emplace(g.name, it != images.end() ? it->second : Element(target.algebra->signature()));
  }
  try {
    for (const auto& [name, img] : images)
      (void)model->signature()->id(name);
    DGCAMorphism f = make_morphism(model, target.algebra, all, Validation::eager);
    out.report = Report::make_pass("flat_form", "assignment is a flat " + model->label() + "-valued form");
    out.form = FlatGForm{model, target, std::move(f)};
  } catch (const ChainMapViolation& e) {
    out.report = Report::make_fail("flat_form", std::string(e.what()), e.residual(), Errc::chain_map_violation);
  } catch (const Error& e) {
    out.report = Report::make_fail("flat_form", std::string(e.what()), std::nullopt, e.code());
  }
  return out;
}

FlatFormResult flat_form_check(const DGCAPtr& model, const PolyDeRham& target,
                               const std::map<std::string, std::string>& images) {
  std::map<std::string, Element> parsed;
  for (const auto& [name, text] : images)
    parsed.emplace(name, parse_element(target.algebra->signature(), text));
  return flat_form_check(model, target, parsed);
}

FlatFormResult flat_form_check_json(const json& input) {
  if (!input.is_object() || !input.contains("images") || !input.contains("n"))
    throw Error(Errc::parse, "flat-form input needs \"n\" and \"images\"");
  DGCAPtr model;
  const json& m = input.contains("model") ? input.at("model") : json("s4");
  if (m.is_string()) {
    const std::string s = m.get<std::string>();
    if (s.size() < 2 || s[0] != 's')
      throw Error(Errc::parse, "model must be \"s<n>\" or an algebra object");
    model = sphere_model(std::stoi(s.substr(1))).algebra;
  } else {
    model = dgca_from_json(m);
  }
  const PolyDeRham target = poly_de_rham(input.at("n").get<int>());
  std::map<std::string, Element> images;
  for (const auto& [name, img] : input.at("images").items()) {
    if (img.is_string())
      images.emplace(name, parse_element(target.algebra->signature(), img.get<std::string>()));
    else
      images.emplace(name, element_from_json(target.algebra->signature(), img));
  }
  return flat_form_check(model, target, images);
}

namespace {

class FormSampler {
public:
  FormSampler(const PolyDeRham& t, std::uint64_t seed) : target_(t), rng_(seed) {}

  Element poly(int max_degree, int terms) {
    const SignaturePtr& sig = target_.algebra->signature();
    ElementAccumulator acc(sig);
    for (int t = 0; t < terms; ++t) {
      Monomial::Storage f;
      const int deg = uniform(0, max_degree);
      for (int i = 0; i < deg; ++i)
        f.push_back(sig->id("x" + std::to_string(uniform(1, target_.n))));
      acc.add_raw(f, nonzero_coeff());
    }
    return std::move(acc).finish();
  }

  Element form(int degree, int terms) {
    const SignaturePtr& sig = target_.algebra->signature();
    Element out(sig);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> idx(static_cast<std::size_t>(target_.n));
      for (int i = 0; i < target_.n; ++i)
        idx[static_cast<std::size_t>(i)] = i + 1;
      std::shuffle(idx.begin(), idx.end(), rng_);
      Element dxs = Element::one(sig);
      for (int i = 0; i < degree; ++i)
        dxs = mul(dxs, Element::generator(sig, "dx" + std::to_string(idx[static_cast<std::size_t>(i)])));
      out = out + mul(poly(2, 2), dxs);
    }
    return out;
  }

private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Rational nonzero_coeff() {
    const int c = uniform(1, 3);
    return uniform(0, 1) ? c : -c;
  }

  const PolyDeRham& target_;
  std::mt19937_64 rng_;
};

} // namespace

Report forms_fiber_check(const PolyDeRham& target, int samples, std::uint64_t seed) {
  if (target.n < 8)
    throw Error(Errc::unsupported, "the fiber check needs non-closed 7-forms, so n >= 8");
  Stopwatch clock;
  const DGCAPtr s4 = sphere_model(4).algebra;
  const SemifreeDGCA& omega = *target.algebra;
  FormSampler sampler(target, seed);
  Report r = Report::make_pass("forms.fiber", "flat s4-forms project to closed 4-forms; the fiber over 0 is the closed 7-forms");
  std::int64_t flat = 0, closed7 = 0, rejected = 0;
  for (int s = 0; s < samples && r.passed(); ++s) {
    const std::string tag = "sample " + std::to_string(s);
    // A flat form: w4 = d a3, w7 = H(w4 w4) + d b6.
    const Element w4 = apply_d(omega, sampler.form(3, 2));
    const Element w7 = radial_homotopy(target, mul(w4, w4)) + apply_d(omega, sampler.form(6, 1));
    FlatFormResult fr = flat_form_check(s4, target, std::map<std::string, Element>{{"g4", w4}, {"g7", w7}});
    if (!fr.report.passed()) {
      r = Report::make_fail("forms.fiber", tag + ": constructed flat form rejected", fr.report.witness);
      break;
    }
    const Element proj = fr.form->assignment.image("g4");
    if (!apply_d(omega, proj).is_zero()) {
      r = Report::make_fail("forms.fiber", tag + ": projection is not closed", apply_d(omega, proj));
      break;
    }
    ++flat;
    // Closed 7-forms lie in the fiber over 0.
    Element k7 = apply_d(omega, sampler.form(6, 2));
    FlatFormResult kr = flat_form_check(s4, target, std::map<std::string, Element>{{"g7", k7}});
    if (!kr.report.passed()) {
      r = Report::make_fail("forms.fiber", tag + ": closed 7-form not in the fiber over 0", kr.report.witness);
      break;
    }
    ++closed7;
    // Non-closed 7-forms do not.
    Element n7 = sampler.form(7, 2);
    while (apply_d(omega, n7).is_zero())
      n7 = sampler.form(7, 2);
    FlatFormResult nr = flat_form_check(s4, target, std::map<std::string, Element>{{"g7", n7}});
    if (nr.report.passed()) {
      r = Report::make_fail("forms.fiber", tag + ": non-closed 7-form accepted in the fiber over 0", n7);
      break;
    }
    ++rejected;
  }
  r.counts["samples"] = samples;
  r.counts["flat_forms"] = flat;
  r.counts["closed_7_forms_accepted"] = closed7;
  r.counts["open_7_forms_rejected"] = rejected;
  r.pinned["seed"] = std::to_string(seed);
  r.seconds = clock.seconds();
  return r;
}

} // namespace fda
