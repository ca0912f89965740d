#include "fda/dgca.hpp"

#include <algorithm>
#include <optional>

#include "fda/parallel.hpp"

namespace fda {
namespace {

Element into(const Element& x, const SignaturePtr& sig) {
  return x.signature() == sig ? x : transport(x, sig);
}

// Drops every term containing a killed generator, then renames into `target`.
Element substitute_zero(const Element& x, const std::vector<bool>& killed, const SignaturePtr& target) {
  ElementAccumulator acc(x.signature());
  for (const auto& t : x.terms()) {
    const auto f = t.monomial.factors();
    if (std::none_of(f.begin(), f.end(), [&](GenId g) { return killed[g]; }))
      acc.add(t.monomial, t.coeff);
  }
  return transport(std::move(acc).finish(), target);
}

void check_image_bidegree(const std::string& gen, const Element& image, Bidegree expected) {
  if (image.is_zero())
    return;
  const auto degs = image.bidegrees();
  if (degs.size() > 1)
    throw Error(Errc::inhomogeneous_image, "image of '" + gen + "' is not homogeneous");
  if (*degs.begin() != expected)
    throw Error(Errc::bidegree_mismatch, "image of '" + gen + "' has bidegree " + to_string(*degs.begin()) +
                                             ", expected " + to_string(expected));
}

} // namespace

bool operator==(const SemifreeDGCA& a, const SemifreeDGCA& b) {
  if (!same_signature(a.sig_, b.sig_))
    return false;
  for (std::size_t i = 0; i < a.images_.size(); ++i)
    if (!(a.images_[i] == b.images_[i]))
      return false;
  return true;
}

DGCAPtr make_dgca(SignaturePtr sig, const std::map<std::string, Element>& images, std::string label) {
  auto out = std::shared_ptr<SemifreeDGCA>(new SemifreeDGCA());
  out->sig_ = sig;
  out->label_ = std::move(label);
  out->images_.assign(sig->size(), Element(sig));
  for (const auto& [name, image] : images) {
    const GenId g = sig->id(name);
    const Bidegree b = sig->bidegree(g);
    Element img = into(image, sig);
    check_image_bidegree(name, img, Bidegree{b.degree + 1, b.parity});
    out->images_[g] = std::move(img);
  }
  return out;
}

Element apply_d(const SemifreeDGCA& a, const Element& x) {
  require_same_signature(a.signature(), x.signature(), "apply_d");
  const SignaturePtr& sigp = a.signature();
  const AlgebraSignature& sig = *sigp;
  std::vector<std::optional<ElementAccumulator>> slots(thread_count());
  const std::size_t chunks = parallel_chunks(x.size(), 256, [&](std::size_t c, std::size_t begin, std::size_t end) {
    ElementAccumulator acc(sigp);
    Monomial::Storage buf;
    for (std::size_t ti = begin; ti < end; ++ti) {
      const Term& t = x.terms()[ti];
      const auto f = t.monomial.factors();
      const std::size_t n = f.size();
      bool prefix_negative = false;
      std::size_t i = 0;
      while (i < n) {
        const GenId g = f[i];
        std::size_t run = 1;
        while (i + run < n && f[i + run] == g)
          ++run;
        // A run g^k of a self-commuting generator differentiates to k dg g^{k-1}.
        const Element& dg = a.differential(g);
        if (!dg.is_zero()) {
          Rational base = t.coeff * static_cast<std::int64_t>(run);
          if (prefix_negative)
            base = -base;
          for (const Term& u : dg.terms()) {
            buf.clear();
            buf.insert(buf.end(), f.begin(), f.begin() + static_cast<std::ptrdiff_t>(i));
            const auto uf = u.monomial.factors();
            buf.insert(buf.end(), uf.begin(), uf.end());
            buf.insert(buf.end(), f.begin() + static_cast<std::ptrdiff_t>(i + 1), f.end());
            acc.add_raw(buf, base * u.coeff);
          }
        }
        if (sig.degree_odd(g) && (run & 1))
          prefix_negative = !prefix_negative;
        i += run;
      }
    }
    slots[c].emplace(std::move(acc));
  });
  ElementAccumulator total(sigp);
  for (std::size_t c = 0; c < chunks; ++c)
    total.merge(std::move(*slots[c]));
  return std::move(total).finish();
}

Report check_d_squared(const SemifreeDGCA& a) {
  Stopwatch clock;
  Report r = Report::make_pass("d_squared", "d^2 = 0 on all generators of " + a.label());
  std::int64_t terms = 0;
  for (std::size_t g = 0; g < a.size(); ++g) {
    const auto id = static_cast<GenId>(g);
    Element dd = apply_d(a, a.differential(id));
    terms += static_cast<std::int64_t>(a.differential(id).size());
    if (!dd.is_zero()) {
      r = Report::make_fail("d_squared", "d^2 != 0 on generator '" + a.signature()->name(id) + "' of " + a.label(),
                            std::move(dd));
      break;
    }
  }
  r.counts["generators"] = static_cast<std::int64_t>(a.size());
  r.counts["differential_terms"] = terms;
  r.seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Morphisms

ChainMapViolation::ChainMapViolation(std::string generator, Element residual)
    : Error(Errc::chain_map_violation, "chain map property fails on generator '" + generator + "'"),
      generator_(std::move(generator)), residual_(std::move(residual)) {}

const Element& DGCAMorphism::image(std::string_view name) const { return images_.at(source_->signature()->id(name)); }

Element DGCAMorphism::apply(const Element& x) const {
  require_same_signature(source_->signature(), x.signature(), "morphism application");
  const SignaturePtr& tsig = target_->signature();
  std::vector<std::optional<ElementAccumulator>> slots(thread_count());
  const std::size_t chunks = parallel_chunks(x.size(), 256, [&](std::size_t c, std::size_t begin, std::size_t end) {
    ElementAccumulator acc(tsig);
    for (std::size_t ti = begin; ti < end; ++ti) {
      const Term& t = x.terms()[ti];
      Element prod = Element::scalar(tsig, t.coeff);
      for (GenId g : t.monomial.factors()) {
        if (images_[g].is_zero()) {
          prod = Element(tsig);
          break;
        }
        prod = mul(prod, images_[g]);
        if (prod.is_zero())
          break;
      }
      acc.add(prod);
    }
    slots[c].emplace(std::move(acc));
  });
  ElementAccumulator total(tsig);
  for (std::size_t c = 0; c < chunks; ++c)
    total.merge(std::move(*slots[c]));
  return std::move(total).finish();
}

bool operator==(const DGCAMorphism& a, const DGCAMorphism& b) {
  if (!(*a.source_ == *b.source_) || !(*a.target_ == *b.target_))
    return false;
  for (std::size_t i = 0; i < a.images_.size(); ++i)
    if (!(a.images_[i] == b.images_[i]))
      return false;
  return true;
}

Report check_chain_map(const DGCAMorphism& f) {
  Stopwatch clock;
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  Report r = Report::make_pass("chain_map", "d f = f d on all generators");
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto g = static_cast<GenId>(i);
    Element residual = apply_d(tgt, f.image(g)) - f.apply(src.differential(g));
    if (!residual.is_zero()) {
      r = Report::make_fail("chain_map", "d f != f d on generator '" + src.signature()->name(g) + "'",
                            std::move(residual), Errc::chain_map_violation);
      break;
    }
  }
  r.counts["generators"] = static_cast<std::int64_t>(src.size());
  r.seconds = clock.seconds();
  return r;
}

DGCAMorphism make_morphism(DGCAPtr source, DGCAPtr target, const std::map<std::string, Element>& images,
                           Validation validation) {
  DGCAMorphism f;
  const auto& ssig = *source->signature();
  const SignaturePtr& tsig = target->signature();
  for (const auto& [name, img] : images)
    (void)ssig.id(name);
  f.images_.reserve(ssig.size());
  for (std::size_t i = 0; i < ssig.size(); ++i) {
    const auto g = static_cast<GenId>(i);
    const auto& decl = ssig.generator(g);
    auto it = images.find(decl.name);
    Element img = it != images.end() ? into(it->second, tsig) : Element::generator(tsig, tsig->id(decl.name));
    check_image_bidegree(decl.name, img, decl.bidegree);
    f.images_.push_back(std::move(img));
  }
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  if (validation == Validation::eager) {
    const auto& src = *f.source_;
    for (std::size_t i = 0; i < src.size(); ++i) {
      const auto g = static_cast<GenId>(i);
      Element residual = apply_d(*f.target_, f.images_[g]) - f.apply(src.differential(g));
      if (!residual.is_zero())
        throw ChainMapViolation(src.signature()->name(g), std::move(residual));
    }
  }
  return f;
}

DGCAMorphism identity(const DGCAPtr& a) { return make_morphism(a, a, {}, Validation::lazy); }

DGCAMorphism compose(const DGCAMorphism& f, const DGCAMorphism& g) {
  if (!(*f.target() == *g.source()))
    throw Error(Errc::signature_mismatch, "compose: target of the first map is not the source of the second");
  std::map<std::string, Element> images;
  const auto& ssig = *f.source()->signature();
  for (std::size_t i = 0; i < ssig.size(); ++i) {
    const auto gid = static_cast<GenId>(i);
    images.emplace(ssig.name(gid), g.apply(into(f.image(gid), g.source()->signature())));
  }
  return make_morphism(f.source(), g.target(), images, Validation::lazy);
}

// ---------------------------------------------------------------------------
// Homotopies

ChainHomotopy make_homotopy(const DGCAMorphism& f, const DGCAMorphism& g, const std::map<std::string, Element>& images) {
  if (!(*f.source() == *g.source()) || !(*f.target() == *g.target()))
    throw Error(Errc::signature_mismatch, "homotopy between non-parallel morphisms");
  const auto& ssig = *f.source()->signature();
  const SignaturePtr& tsig = f.target()->signature();
  ChainHomotopy s{f, g, std::vector<Element>(ssig.size(), Element(tsig))};
  for (const auto& [name, img] : images) {
    const GenId id = ssig.id(name);
    const Bidegree b = ssig.bidegree(id);
    Element x = into(img, tsig);
    check_image_bidegree(name, x, Bidegree{b.degree - 1, b.parity});
    s.images[id] = std::move(x);
  }
  return s;
}

Element apply_homotopy(const ChainHomotopy& s, const Element& x) {
  const auto& ssig = *s.f.source()->signature();
  require_same_signature(s.f.source()->signature(), x.signature(), "homotopy application");
  const SignaturePtr& tsig = s.f.target()->signature();
  ElementAccumulator acc(tsig);
  for (const Term& t : x.terms()) {
    const auto fs = t.monomial.factors();
    bool negative = false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Element& si = s.images[fs[i]];
      if (!si.is_zero()) {
        Element prod = Element::scalar(tsig, negative ? -t.coeff : t.coeff);
        for (std::size_t j = 0; j < i && !prod.is_zero(); ++j)
          prod = mul(prod, s.f.image(fs[j]));
        if (!prod.is_zero())
          prod = mul(prod, si);
        for (std::size_t j = i + 1; j < fs.size() && !prod.is_zero(); ++j)
          prod = mul(prod, s.g.image(fs[j]));
        acc.add(prod);
      }
      if (ssig.degree_odd(fs[i]))
        negative = !negative;
    }
  }
  return std::move(acc).finish();
}

Report check_homotopy(const DGCAMorphism& f, const DGCAMorphism& g, const ChainHomotopy& s) {
  Stopwatch clock;
  if (!(f == s.f) || !(g == s.g))
    return Report::make_fail("homotopy", "homotopy data is not attached to the given morphisms");
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  Report r = Report::make_pass("homotopy", "f - g = d s + s d on all generators");
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto x = static_cast<GenId>(i);
    Element lhs = f.image(x) - g.image(x);
    Element rhs = apply_d(tgt, s.images[x]) + apply_homotopy(s, src.differential(x));
    Element residual = lhs - rhs;
    if (!residual.is_zero()) {
      r = Report::make_fail("homotopy", "f - g != d s + s d on generator '" + src.signature()->name(x) + "'",
                            std::move(residual));
      break;
    }
  }
  r.counts["generators"] = static_cast<std::int64_t>(src.size());
  r.seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Constructions

DGCAPtr adjoin_generator(const DGCAPtr& a, GeneratorDecl gen, const Element& d_image, const Rational& lambda,
                         std::string label) {
  require_same_signature(a->signature(), d_image.signature(), "adjoin_generator");
  const Bidegree expected{gen.bidegree.degree + 1, gen.bidegree.parity};
  check_image_bidegree(gen.name, d_image, expected);
  if (!apply_d(*a, d_image).is_zero())
    throw Error(Errc::not_closed, "image adjoined for '" + gen.name + "' is not closed");
  std::vector<GeneratorDecl> decls(a->signature()->generators().begin(), a->signature()->generators().end());
  const std::string name = gen.name;
  decls.push_back(std::move(gen));
  SignaturePtr sig = make_signature(std::move(decls));
  std::map<std::string, Element> images;
  for (std::size_t i = 0; i < a->size(); ++i) {
    const auto g = static_cast<GenId>(i);
    images.emplace(a->signature()->name(g), transport(a->differential(g), sig));
  }
  images.emplace(name, lambda * transport(d_image, sig));
  return make_dgca(sig, images, label.empty() ? a->label() + "+" + name : std::move(label));
}

DGCAPtr set_generators_to_zero(const DGCAPtr& a, const std::set<std::string>& killed, std::string label) {
  const auto& sig = *a->signature();
  std::vector<bool> mask(sig.size(), false);
  for (const auto& name : killed)
    mask[sig.id(name)] = true;
  std::vector<GeneratorDecl> decls;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (!mask[i])
      decls.push_back(sig.generator(static_cast<GenId>(i)));
  SignaturePtr qsig = make_signature(std::move(decls));
  std::map<std::string, Element> images;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (!mask[i])
      images.emplace(sig.name(static_cast<GenId>(i)), substitute_zero(a->differential(static_cast<GenId>(i)), mask, qsig));
  return make_dgca(qsig, images, label.empty() ? a->label() + "/killed" : std::move(label));
}

DGCAMorphism kill_map(const DGCAPtr& source, const DGCAPtr& target, const std::set<std::string>& killed,
                      Validation validation) {
  std::map<std::string, Element> images;
  for (const auto& name : killed)
    images.emplace(name, Element(target->signature()));
  return make_morphism(source, target, images, validation);
}

DGCAMorphism inclusion(const DGCAPtr& source, const DGCAPtr& target, Validation validation) {
  return make_morphism(source, target, {}, validation);
}

DGCAPtr tensor_product(const DGCAPtr& a, const DGCAPtr& b, std::string label) {
  std::vector<GeneratorDecl> decls(a->signature()->generators().begin(), a->signature()->generators().end());
  decls.insert(decls.end(), b->signature()->generators().begin(), b->signature()->generators().end());
  SignaturePtr sig = make_signature(std::move(decls));
  std::map<std::string, Element> images;
  for (const DGCAPtr& part : {a, b})
    for (std::size_t i = 0; i < part->size(); ++i) {
      const auto g = static_cast<GenId>(i);
      images.emplace(part->signature()->name(g), transport(part->differential(g), sig));
    }
  return make_dgca(sig, images, label.empty() ? a->label() + "(x)" + b->label() : std::move(label));
}

} // namespace fda
