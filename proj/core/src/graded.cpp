#include "fda/graded.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "fda/errors.hpp"
#include "fda/parallel.hpp"

namespace fda {

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::string to_string(Bidegree b) { return "(" + std::to_string(b.degree) + "," + to_string(b.parity) + ")"; }

GeneratorDecl GeneratorDecl::make(std::string family, std::vector<int> indices, Bidegree bidegree, std::string name) {
  if (name.empty()) {
    name = family;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i > 0 || indices.size() > 1)
        name += '_';
      name += std::to_string(indices[i]);
    }
  }
  return GeneratorDecl{std::move(name), std::move(family), std::move(indices), bidegree};
}

std::optional<GenId> AlgebraSignature::find(std::string_view name) const {
  auto it = by_name_.find(absl::string_view(name.data(), name.size()));
  if (it == by_name_.end())
    return std::nullopt;
  return it->second;
}

GenId AlgebraSignature::id(std::string_view name) const {
  if (auto g = find(name))
    return *g;
  throw Error(Errc::unknown_generator, "unknown generator '" + std::string(name) + "'");
}

SignaturePtr make_signature(std::vector<GeneratorDecl> decls) {
  if (decls.size() > 0xFFFF)
    throw Error(Errc::unsupported, "too many generators");
  std::stable_sort(decls.begin(), decls.end(), [](const GeneratorDecl& a, const GeneratorDecl& b) {
    return std::tie(a.family, a.indices, a.name) < std::tie(b.family, b.indices, b.name);
  });
  for (std::size_t i = 1; i < decls.size(); ++i) {
    if (decls[i].family == decls[i - 1].family && decls[i].indices == decls[i - 1].indices)
      throw Error(Errc::duplicate_name, "duplicate generator '" + decls[i].name + "'");
  }
  auto sig = std::shared_ptr<AlgebraSignature>(new AlgebraSignature());
  sig->decls_ = std::move(decls);
  sig->bits_.reserve(sig->decls_.size());
  for (std::size_t i = 0; i < sig->decls_.size(); ++i) {
    const auto& d = sig->decls_[i];
    if (d.bidegree.degree < 0)
      throw Error(Errc::bidegree_mismatch, "negative degree for '" + d.name + "'");
    if (!sig->by_name_.emplace(d.name, static_cast<GenId>(i)).second)
      throw Error(Errc::duplicate_name, "duplicate generator '" + d.name + "'");
    sig->bits_.push_back(static_cast<std::uint8_t>((d.bidegree.degree & 1) | (static_cast<int>(d.bidegree.parity) << 1)));
  }
  return sig;
}

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) { return a == b || (a && b && *a == *b); }

void require_same_signature(const SignaturePtr& a, const SignaturePtr& b, std::string_view context) {
  if (!same_signature(a, b))
    throw Error(Errc::signature_mismatch, "signature mismatch in " + std::string(context));
}

// ---------------------------------------------------------------------------
// Monomials

int Monomial::exponent(GenId g) const {
  return static_cast<int>(std::count(factors_.begin(), factors_.end(), g));
}

bool Monomial::contains(GenId g) const { return std::binary_search(factors_.begin(), factors_.end(), g); }

std::vector<std::pair<GenId, int>> Monomial::exponents() const {
  std::vector<std::pair<GenId, int>> out;
  for (GenId g : factors_) {
    if (!out.empty() && out.back().first == g)
      ++out.back().second;
    else
      out.emplace_back(g, 1);
  }
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                b.factors_.end());
}

int canonicalize(const AlgebraSignature& sig, Monomial::Storage& f) {
  bool negative = false;
  const std::size_t n = f.size();
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = i;
    while (j > 0 && f[j - 1] > f[j]) {
      negative ^= sig.swap_odd(f[j - 1], f[j]);
      std::swap(f[j - 1], f[j]);
      --j;
    }
  }
  for (std::size_t i = 1; i < n; ++i)
    if (f[i] == f[i - 1] && sig.square_zero(f[i]))
      return 0;
  return negative ? -1 : 1;
}

int multiply_monomials(const AlgebraSignature& sig, const Monomial& a, const Monomial& b, Monomial& out) {
  const auto fa = a.factors();
  const auto fb = b.factors();
  Monomial::Storage r;
  r.reserve(fa.size() + fb.size());
  // parity of the number of remaining a-factors with odd degree / odd parity
  bool rem_deg = false, rem_par = false;
  for (GenId g : fa) {
    rem_deg ^= sig.degree_odd(g);
    rem_par ^= sig.parity_odd(g);
  }
  bool negative = false;
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i] <= fb[j]) {
      if (fa[i] == fb[j] && sig.square_zero(fa[i]))
        return 0;
      rem_deg ^= sig.degree_odd(fa[i]);
      rem_par ^= sig.parity_odd(fa[i]);
      r.push_back(fa[i++]);
    } else {
      negative ^= (sig.degree_odd(fb[j]) && rem_deg) != (sig.parity_odd(fb[j]) && rem_par);
      r.push_back(fb[j++]);
    }
  }
  for (; i < fa.size(); ++i)
    r.push_back(fa[i]);
  for (; j < fb.size(); ++j)
    r.push_back(fb[j]);
  out = Monomial(std::move(r));
  return negative ? -1 : 1;
}

Bidegree bidegree_of(const AlgebraSignature& sig, const Monomial& m) {
  Bidegree b{};
  for (GenId g : m.factors())
    b = b + sig.bidegree(g);
  return b;
}

int degree_of(const AlgebraSignature& sig, const Monomial& m) {
  int d = 0;
  for (GenId g : m.factors())
    d += sig.bidegree(g).degree;
  return d;
}

// ---------------------------------------------------------------------------
// Accumulator

void ElementAccumulator::add(const Monomial& m, const Rational& c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = map_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      map_.erase(it);
  }
}

void ElementAccumulator::add(Monomial&& m, const Rational& c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = map_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      map_.erase(it);
  }
}

void ElementAccumulator::add_raw(Monomial::Storage& factors, const Rational& c) {
  const int s = canonicalize(*sig_, factors);
  if (s == 0)
    return;
  add(Monomial(std::move(factors)), s > 0 ? c : -c);
}

void ElementAccumulator::add_product(const Monomial& a, const Monomial& b, const Rational& c) {
  Monomial m;
  const int s = multiply_monomials(*sig_, a, b, m);
  if (s == 0)
    return;
  add(std::move(m), s > 0 ? c : -c);
}

void ElementAccumulator::add(const Element& x, const Rational& scale) {
  require_same_signature(sig_, x.signature(), "accumulate");
  if (scale.is_zero())
    return;
  for (const auto& t : x.terms())
    add(t.monomial, scale.is_one() ? t.coeff : t.coeff * scale);
}

void ElementAccumulator::merge(ElementAccumulator&& other) {
  if (map_.empty()) {
    map_ = std::move(other.map_);
    return;
  }
  for (auto& [m, c] : other.map_)
    add(m, c);
  other.map_.clear();
}

Element ElementAccumulator::finish() && {
  Element out(sig_);
  out.terms_.reserve(map_.size());
  for (auto& [m, c] : map_)
    if (!c.is_zero())
      out.terms_.push_back(Term{m, std::move(c)});
  map_.clear();
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  return out;
}

// ---------------------------------------------------------------------------
// Elements

Element Element::scalar(SignaturePtr sig, const Rational& c) {
  Element e(std::move(sig));
  if (!c.is_zero())
    e.terms_.push_back(Term{Monomial(), c});
  return e;
}

Element Element::generator(SignaturePtr sig, std::string_view name) {
  const GenId g = sig->id(name);
  return generator(std::move(sig), g);
}

Element Element::generator(SignaturePtr sig, GenId id) {
  Element e(std::move(sig));
  e.terms_.push_back(Term{Monomial(Monomial::Storage{id}), 1});
  return e;
}

Element Element::monomial(SignaturePtr sig, Monomial m, const Rational& c) {
  Element e(std::move(sig));
  if (!c.is_zero())
    e.terms_.push_back(Term{std::move(m), c});
  return e;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial < key; });
  if (it != terms_.end() && it->monomial == m)
    return it->coeff;
  return 0;
}

std::set<Bidegree> Element::bidegrees() const {
  std::set<Bidegree> out;
  for (const auto& t : terms_)
    out.insert(bidegree_of(*sig_, t.monomial));
  return out;
}

std::optional<Bidegree> Element::bidegree() const {
  auto all = bidegrees();
  if (all.size() != 1)
    return std::nullopt;
  return *all.begin();
}

std::string Element::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0)
        c = -c;
    }
    first = false;
    const bool unit = t.monomial.is_unit();
    if (!c.is_one() || unit) {
      if (c.is_integer())
        os << c.numerator().get_str();
      else
        os << c.numerator().get_str() << "/" << c.denominator().get_str();
      if (!unit)
        os << "*";
    }
    bool first_factor = true;
    for (auto [g, k] : t.monomial.exponents()) {
      if (!first_factor)
        os << "*";
      first_factor = false;
      os << sig_->name(g);
      if (k > 1)
        os << "^" << k;
    }
  }
  return os.str();
}

Element Element::operator-() const {
  Element out(sig_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_)
    out.terms_.push_back(Term{t.monomial, -t.coeff});
  return out;
}

namespace {

// Merge of two sorted term lists; coefficients of b scaled by `sb`.
Element merge_sorted(const Element& a, const Element& b, const Rational& sb) {
  require_same_signature(a.signature(), b.signature(), "addition");
  ElementAccumulator acc(a.signature());
  acc.add(a);
  acc.add(b, sb);
  return std::move(acc).finish();
}

} // namespace

Element operator+(const Element& a, const Element& b) {
  if (b.is_zero()) {
    require_same_signature(a.signature(), b.signature(), "addition");
    return a;
  }
  if (a.is_zero()) {
    require_same_signature(a.signature(), b.signature(), "addition");
    return b;
  }
  return merge_sorted(a, b, 1);
}

Element operator-(const Element& a, const Element& b) {
  if (b.is_zero()) {
    require_same_signature(a.signature(), b.signature(), "subtraction");
    return a;
  }
  return merge_sorted(a, b, -1);
}

Element operator*(const Rational& c, const Element& x) {
  Element out(x.sig_);
  if (c.is_zero())
    return out;
  out.terms_.reserve(x.terms_.size());
  for (const auto& t : x.terms_)
    out.terms_.push_back(Term{t.monomial, t.coeff * c});
  return out;
}

Element operator*(const Element& a, const Element& b) { return mul(a, b); }

bool operator==(const Element& a, const Element& b) {
  return same_signature(a.sig_, b.sig_) && a.terms_ == b.terms_;
}

Element mul(const Element& a, const Element& b) {
  require_same_signature(a.signature(), b.signature(), "mul");
  const auto& sig = *a.signature();
  if (a.is_zero() || b.is_zero())
    return Element(a.signature());

  // One-term factor: monomial multiplication is injective, no accumulation needed.
  if (b.size() == 1 || a.size() == 1) {
    const bool right = b.size() == 1;
    const Term& single = right ? b.terms()[0] : a.terms()[0];
    const Element& many = right ? a : b;
    std::vector<Term> out;
    out.reserve(many.size());
    for (const auto& t : many.terms()) {
      Monomial m;
      const int s = right ? multiply_monomials(sig, t.monomial, single.monomial, m)
                          : multiply_monomials(sig, single.monomial, t.monomial, m);
      if (s == 0)
        continue;
      Rational c = t.coeff * single.coeff;
      out.push_back(Term{std::move(m), s > 0 ? std::move(c) : -c});
    }
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.monomial < y.monomial; });
    Element result(a.signature());
    result.terms_ = std::move(out);
    return result;
  }

  const std::size_t work_per_row = b.size();
  const std::size_t min_rows = std::max<std::size_t>(1, 20000 / std::max<std::size_t>(1, work_per_row));
  std::vector<std::optional<ElementAccumulator>> slots(thread_count());
  const std::size_t chunks = parallel_chunks(a.size(), min_rows, [&](std::size_t c, std::size_t begin, std::size_t end) {
    ElementAccumulator acc(a.signature());
    for (std::size_t i = begin; i < end; ++i) {
      const Term& ta = a.terms()[i];
      for (const Term& tb : b.terms())
        acc.add_product(ta.monomial, tb.monomial, ta.coeff * tb.coeff);
    }
    slots[c].emplace(std::move(acc));
  });
  ElementAccumulator total(a.signature());
  for (std::size_t c = 0; c < chunks; ++c)
    total.merge(std::move(*slots[c]));
  return std::move(total).finish();
}

Element linear_combine(std::span<const std::pair<Rational, Element>> terms) {
  if (terms.empty())
    throw Error(Errc::signature_mismatch, "linear_combine of an empty list has no signature");
  ElementAccumulator acc(terms.front().second.signature());
  for (const auto& [c, x] : terms)
    acc.add(x, c);
  return std::move(acc).finish();
}

Element normalize(const SignaturePtr& sig, std::span<const std::pair<std::string, int>> raw, const Rational& coeff) {
  Monomial::Storage f;
  for (const auto& [name, k] : raw) {
    if (k < 0)
      throw Error(Errc::parse, "negative exponent for '" + name + "'");
    const GenId g = sig->id(name);
    for (int i = 0; i < k; ++i)
      f.push_back(g);
  }
  ElementAccumulator acc(sig);
  acc.add_raw(f, coeff);
  return std::move(acc).finish();
}

Element transport(const Element& x, const SignaturePtr& target) {
  if (same_signature(x.signature(), target)) {
    if (x.signature() == target)
      return x;
    ElementAccumulator acc(target);
    for (const auto& t : x.terms())
      acc.add(t.monomial, t.coeff);
    return std::move(acc).finish();
  }
  const auto& src = *x.signature();
  std::vector<GenId> map(src.size());
  std::vector<bool> mapped(src.size(), false);
  ElementAccumulator acc(target);
  for (const auto& t : x.terms()) {
    Monomial::Storage f;
    for (GenId g : t.monomial.factors()) {
      if (!mapped[g]) {
        map[g] = target->id(src.name(g));
        if (target->bidegree(map[g]) != src.bidegree(g))
          throw Error(Errc::bidegree_mismatch, "generator '" + src.name(g) + "' changes bidegree");
        mapped[g] = true;
      }
      f.push_back(map[g]);
    }
    acc.add_raw(f, t.coeff);
  }
  return std::move(acc).finish();
}

} // namespace fda
