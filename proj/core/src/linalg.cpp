#include "fda/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <gmpxx.h>

#include "fda/parallel.hpp"

namespace fda {
namespace {

using U64 = std::uint64_t;

U64 sat_add(U64 a, U64 b) { return a > std::numeric_limits<U64>::max() - b ? std::numeric_limits<U64>::max() : a + b; }

int gen_weight(const BasisFilter& f, GenId g) { return f.weights && f.weight ? (*f.weights)[g] : 0; }

void check_filter(const AlgebraSignature& sig, const BasisFilter& f) {
  if (f.weights) {
    if (f.weights->size() != sig.size())
      throw Error(Errc::bad_indices, "weight vector has the wrong length");
    if (std::any_of(f.weights->begin(), f.weights->end(), [](int w) { return w < 0; }))
      throw Error(Errc::bad_indices, "weights must be nonnegative");
  }
}

// counts[d][w][q] for d <= D, w <= W, q parity.
class CountTable {
public:
  CountTable(int D, int W) : D_(D), W_(W), data_(static_cast<std::size_t>((D + 1) * (W + 1) * 2), 0) {}
  U64& at(int d, int w, int q) { return data_[static_cast<std::size_t>((d * (W_ + 1) + w) * 2 + q)]; }
  [[nodiscard]] U64 at(int d, int w, int q) const {
    return data_[static_cast<std::size_t>((d * (W_ + 1) + w) * 2 + q)];
  }

  // Multiplies in one generator; false when the result becomes infinite.
  bool absorb(int dg, int wg, int pg, bool square_zero) {
    if (square_zero) {
      const CountTable old = *this;
      for (int d = dg; d <= D_; ++d)
        for (int w = wg; w <= W_; ++w)
          for (int q = 0; q < 2; ++q)
            at(d, w, q) = sat_add(at(d, w, q), old.at(d - dg, w - wg, q ^ pg));
      return true;
    }
    if (dg == 0 && wg == 0)
      return false;
    for (int d = dg; d <= D_; ++d)
      for (int w = wg; w <= W_; ++w) {
        // Parity of the new copy depends on the running parity, so update both.
        const U64 c0 = at(d - dg, w - wg, 0 ^ pg);
        const U64 c1 = at(d - dg, w - wg, 1 ^ pg);
        at(d, w, 0) = sat_add(at(d, w, 0), c0);
        at(d, w, 1) = sat_add(at(d, w, 1), c1);
      }
    return true;
  }

private:
  int D_, W_;
  std::vector<U64> data_;
};

using ZColumn = std::vector<std::pair<std::uint32_t, mpz_class>>;

mpz_class content(const ZColumn& v) {
  mpz_class g = 0;
  for (const auto& [r, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1)
      break;
  }
  return g;
}

void divide_exact(ZColumn& v, const mpz_class& g) {
  for (auto& [r, x] : v)
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y, both sorted by row.
ZColumn combine(const mpz_class& a, const ZColumn& x, const mpz_class& b, const ZColumn& y) {
  ZColumn out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  mpz_class t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -(b * y[j].second));
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0)
        out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

// Integer column proportional to `col`: returns the column and the scale s
// with integer = s * col.
std::pair<ZColumn, mpq_class> integerize(const SparseRationalMatrix::Column& col) {
  mpz_class l = 1;
  for (const auto& [r, x] : col) {
    const mpz_class den = x.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  ZColumn out;
  out.reserve(col.size());
  for (const auto& [r, x] : col) {
    mpq_class q = x.to_mpq() * l;
    out.emplace_back(r, q.get_num());
  }
  mpz_class g = content(out);
  mpq_class scale(l);
  if (g > 1) {
    divide_exact(out, g);
    scale /= g;
  }
  return {std::move(out), scale};
}

// Column reduction keyed on the lowest (largest-row) nonzero entry. With
// tracking enabled, every stored column remembers its integer combination of
// the integerized input columns.
class ColumnReducer {
public:
  explicit ColumnReducer(bool track) : track_(track) {}

  struct State {
    ZColumn v;
    mpz_class beta;  // coefficient of the vector being reduced
    ZColumn combo;   // v = beta * input - sum combo_i * column_i
  };

  void reduce(State& s) const {
    while (!s.v.empty()) {
      auto it = owner_.find(s.v.back().first);
      if (it == owner_.end())
        return;
      const Stored& k = stored_[it->second];
      mpz_class a = k.v.back().second;
      mpz_class b = s.v.back().second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
      s.v = combine(a, s.v, b, k.v);
      s.beta *= a;
      if (track_) {
        // a*(beta*in - combo) - b*(sum coef_k) => combo' = a*combo + b*coef_k
        s.combo = combine(a, s.combo, -b, k.coef);
      }
      normalize(s);
    }
  }

  // Adds integerized column j; returns true if it is independent of the earlier ones.
  bool add(std::uint32_t j, ZColumn col) {
    State s{std::move(col), 1, {}};
    reduce(s);
    if (s.v.empty())
      return false;
    Stored k;
    k.v = std::move(s.v);
    if (track_) {
      // stored = beta * col_j - combo
      k.coef = combine(1, ZColumn{{j, s.beta}}, 1, s.combo);
    }
    owner_.emplace(k.v.back().first, stored_.size());
    stored_.push_back(std::move(k));
    return true;
  }

  [[nodiscard]] std::size_t rank() const noexcept { return stored_.size(); }

private:
  struct Stored {
    ZColumn v;
    ZColumn coef;
  };

  void normalize(State& s) const {
    mpz_class g = content(s.v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.beta.get_mpz_t());
    if (track_ && g != 1) {
      mpz_class h = content(s.combo);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.get_mpz_t());
    }
    if (g > 1) {
      divide_exact(s.v, g);
      mpz_divexact(s.beta.get_mpz_t(), s.beta.get_mpz_t(), g.get_mpz_t());
      if (track_)
        divide_exact(s.combo, g);
    }
  }

  bool track_;
  std::vector<Stored> stored_;
  absl::flat_hash_map<std::uint32_t, std::size_t> owner_;
};

std::vector<Element> differentiate_all(const SemifreeDGCA& a, const std::vector<Monomial>& basis) {
  std::vector<Element> out(basis.size(), Element(a.signature()));
  parallel_chunks(basis.size(), 64, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = apply_d(a, Element::monomial(a.signature(), basis[i]));
  });
  return out;
}

} // namespace

std::optional<std::uint32_t> GradedBasis::find(const Monomial& m) const {
  auto it = index.find(m);
  if (it == index.end())
    return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> count_monomials(const AlgebraSignature& sig, int degree, const BasisFilter& filter) {
  check_filter(sig, filter);
  if (degree < 0 || (filter.weight && *filter.weight < 0))
    return 0;
  const int W = filter.weights && filter.weight ? *filter.weight : 0;
  CountTable t(degree, W);
  t.at(0, 0, 0) = 1;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const auto g = static_cast<GenId>(i);
    const Bidegree b = sig.bidegree(g);
    if (!t.absorb(b.degree, gen_weight(filter, g), static_cast<int>(b.parity), b.square_zero()))
      return std::nullopt;
  }
  if (filter.parity)
    return t.at(degree, W, static_cast<int>(*filter.parity));
  return sat_add(t.at(degree, W, 0), t.at(degree, W, 1));
}

GradedBasis monomial_basis(const DGCAPtr& a, int degree, std::size_t cap, const BasisFilter& filter) {
  const AlgebraSignature& sig = *a->signature();
  const auto count = count_monomials(sig, degree, filter);
  if (!count || *count > cap)
    throw Error(Errc::capped, "degree-" + std::to_string(degree) + " basis of " + a->label() + " has " +
                                  (count ? std::to_string(*count) : std::string("infinitely many")) +
                                  " monomials, above the cap of " + std::to_string(cap));
  GradedBasis basis;
  basis.algebra = a;
  basis.degree = degree;
  if (degree < 0 || *count == 0)
    return basis;

  const int W = filter.weights && filter.weight ? *filter.weight : 0;
  const std::size_t n = sig.size();
  // feasible[i] answers: can generators i..n-1 realize (d, w, q) exactly?
  std::vector<CountTable> feasible(n + 1, CountTable(degree, W));
  feasible[n].at(0, 0, 0) = 1;
  for (std::size_t i = n; i-- > 0;) {
    feasible[i] = feasible[i + 1];
    const auto g = static_cast<GenId>(i);
    const Bidegree b = sig.bidegree(g);
    feasible[i].absorb(b.degree, gen_weight(filter, g), static_cast<int>(b.parity), b.square_zero());
  }
  const auto possible = [&](std::size_t i, int d, int w, int acc_parity) {
    if (filter.parity)
      return feasible[i].at(d, w, acc_parity ^ static_cast<int>(*filter.parity)) != 0;
    return feasible[i].at(d, w, 0) != 0 || feasible[i].at(d, w, 1) != 0;
  };

  basis.monomials.reserve(static_cast<std::size_t>(*count));
  Monomial::Storage current;
  auto dfs = [&](auto& self, std::size_t i, int d, int w, int q) -> void {
    if (i == n) {
      basis.monomials.emplace_back(current);
      return;
    }
    const auto g = static_cast<GenId>(i);
    const Bidegree b = sig.bidegree(g);
    const int wg = gen_weight(filter, g);
    const int pg = static_cast<int>(b.parity);
    const int max_k = b.square_zero() ? 1 : std::numeric_limits<int>::max();
    const std::size_t mark = current.size();
    for (int k = 0; k <= max_k; ++k) {
      const int dd = d - k * b.degree;
      const int ww = w - k * wg;
      if (dd < 0 || ww < 0)
        break;
      if (possible(i + 1, dd, ww, q ^ ((k & 1) * pg)))
        self(self, i + 1, dd, ww, q ^ ((k & 1) * pg));
      current.push_back(g);
      if (b.degree == 0 && wg == 0)
        break;
    }
    current.resize(mark);
  };
  if (possible(0, degree, W, 0))
    dfs(dfs, 0, degree, W, 0);
  std::sort(basis.monomials.begin(), basis.monomials.end());
  basis.index.reserve(basis.monomials.size());
  for (std::size_t i = 0; i < basis.monomials.size(); ++i)
    basis.index.emplace(basis.monomials[i], static_cast<std::uint32_t>(i));
  return basis;
}

Rational SparseRationalMatrix::entry(std::size_t r, std::size_t c) const {
  const Column& col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t row) { return e.first < row; });
  return it != col.end() && it->first == r ? it->second : Rational(0);
}

std::size_t SparseRationalMatrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_)
    n += c.size();
  return n;
}

void SparseRationalMatrix::set_column(std::size_t c, Column entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Column out;
  out.reserve(entries.size());
  for (auto& [r, x] : entries) {
    if (r >= rows_)
      throw std::out_of_range("row index out of range");
    if (!out.empty() && out.back().first == r)
      out.back().second = out.back().second + x;
    else
      out.emplace_back(r, std::move(x));
    if (out.back().second.is_zero())
      out.pop_back();
  }
  columns_.at(c) = std::move(out);
}

void SparseRationalMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  Column col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r)
    it->second = value;
  else
    col.insert(it, {static_cast<std::uint32_t>(r), value});
  std::erase_if(col, [](const auto& e) { return e.second.is_zero(); });
  set_column(c, std::move(col));
}

SparseRationalMatrix multiply(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix dimensions do not match");
  SparseRationalMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    SparseRationalMatrix::Column acc;
    for (const auto& [k, x] : b.column(c))
      for (const auto& [r, y] : a.column(k))
        acc.emplace_back(r, x * y);
    out.set_column(c, std::move(acc));
  }
  return out;
}

SparseRationalMatrix differential_matrix(const DGCAPtr& a, int degree, std::size_t cap, const BasisFilter& filter) {
  const GradedBasis src = monomial_basis(a, degree, cap, filter);
  const GradedBasis dst = monomial_basis(a, degree + 1, cap, filter);
  const std::vector<Element> images = differentiate_all(*a, src.monomials);
  SparseRationalMatrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    SparseRationalMatrix::Column col;
    for (const Term& t : images[c].terms()) {
      const auto r = dst.find(t.monomial);
      if (!r)
        throw Error(Errc::bidegree_mismatch, "differential leaves the filtered basis; the weighting is not preserved by d");
      col.emplace_back(*r, t.coeff);
    }
    m.set_column(c, std::move(col));
  }
  return m;
}

std::size_t rank(const SparseRationalMatrix& m) {
  ColumnReducer red(false);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m.column(c).empty())
      red.add(static_cast<std::uint32_t>(c), integerize(m.column(c)).first);
  return red.rank();
}

std::optional<std::vector<Rational>> solve(const SparseRationalMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("right-hand side has the wrong length");
  ColumnReducer red(true);
  std::vector<mpq_class> scales(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.column(c).empty())
      continue;
    auto [col, scale] = integerize(m.column(c));
    scales[c] = scale;
    red.add(static_cast<std::uint32_t>(c), std::move(col));
  }
  SparseRationalMatrix::Column rhs;
  for (std::size_t r = 0; r < b.size(); ++r)
    if (!b[r].is_zero())
      rhs.emplace_back(static_cast<std::uint32_t>(r), b[r]);
  std::vector<Rational> x(m.cols(), Rational(0));
  if (rhs.empty())
    return x;
  auto [v, bscale] = integerize(rhs);
  ColumnReducer::State s{std::move(v), 1, {}};
  red.reduce(s);
  if (!s.v.empty())
    return std::nullopt;
  // beta * bscale * b = sum combo_i * scale_i * column_i
  const mpq_class denom = mpq_class(s.beta) * bscale;
  for (const auto& [i, coef] : s.combo)
    x[i] = Rational(mpq_class(mpq_class(coef) * scales[i] / denom));
  return x;
}

std::vector<std::int64_t> cohomology_dims(const DGCAPtr& a, int max_degree, std::size_t cap, const BasisFilter& filter) {
  std::vector<std::int64_t> sizes, ranks;
  for (int k = 0; k <= max_degree; ++k) {
    sizes.push_back(static_cast<std::int64_t>(monomial_basis(a, k, cap, filter).size()));
    ranks.push_back(static_cast<std::int64_t>(rank(differential_matrix(a, k, cap, filter))));
  }
  std::vector<std::int64_t> dims;
  for (int k = 0; k <= max_degree; ++k)
    dims.push_back(sizes[k] - ranks[k] - (k > 0 ? ranks[k - 1] : 0));
  return dims;
}

bool preserves_weights(const SemifreeDGCA& a, const std::vector<int>& weights) {
  if (weights.size() != a.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Element& dg = a.differential(static_cast<GenId>(i));
    for (const Term& t : dg.terms()) {
      int w = 0;
      for (GenId g : t.monomial.factors())
        w += weights[g];
      if (w != weights[i])
        return false;
    }
  }
  return true;
}

std::optional<int> weight_of(const Element& x, const std::vector<int>& weights) {
  std::optional<int> out;
  for (const Term& t : x.terms()) {
    int w = 0;
    for (GenId g : t.monomial.factors())
      w += weights.at(g);
    if (out && *out != w)
      return std::nullopt;
    out = w;
  }
  return out;
}

CoboundaryResult is_coboundary(const DGCAPtr& a, const Element& x, std::size_t cap,
                               const std::optional<std::vector<int>>& weights) {
  require_same_signature(a->signature(), x.signature(), "is_coboundary");
  CoboundaryResult result;
  if (x.is_zero()) {
    result.kind = CoboundaryResult::Kind::yes;
    result.witness = Element(a->signature());
    result.message = "zero is exact";
    return result;
  }
  const auto bideg = x.bidegree();
  if (!bideg)
    throw Error(Errc::inhomogeneous_image, "is_coboundary needs a homogeneous element");
  if (!apply_d(*a, x).is_zero())
    throw Error(Errc::not_closed, "is_coboundary needs a closed element");
  if (bideg->degree == 0) {
    result.message = "nonzero element of degree 0";
    return result;
  }
  BasisFilter filter;
  filter.parity = bideg->parity;
  if (weights && preserves_weights(*a, *weights)) {
    if (auto w = weight_of(x, *weights)) {
      filter.weights = weights;
      filter.weight = *w;
    }
  }
  const auto count = count_monomials(*a->signature(), bideg->degree - 1, filter);
  if (!count || *count > cap) {
    result.kind = CoboundaryResult::Kind::capped;
    result.basis_size = count ? static_cast<std::size_t>(std::min<std::uint64_t>(*count, SIZE_MAX)) : SIZE_MAX;
    result.message = "degree-" + std::to_string(bideg->degree - 1) + " basis exceeds the cap of " + std::to_string(cap);
    return result;
  }
  const GradedBasis basis = monomial_basis(a, bideg->degree - 1, cap, filter);
  result.basis_size = basis.size();
  const std::vector<Element> images = differentiate_all(*a, basis.monomials);

  std::vector<Monomial> rows;
  for (const Element& img : images)
    for (const Term& t : img.terms())
      rows.push_back(t.monomial);
  for (const Term& t : x.terms())
    rows.push_back(t.monomial);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  absl::flat_hash_map<Monomial, std::uint32_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i)
    row_of.emplace(rows[i], static_cast<std::uint32_t>(i));

  SparseRationalMatrix m(rows.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    SparseRationalMatrix::Column col;
    for (const Term& t : images[c].terms())
      col.emplace_back(row_of.at(t.monomial), t.coeff);
    m.set_column(c, std::move(col));
  }
  std::vector<Rational> b(rows.size(), Rational(0));
  for (const Term& t : x.terms())
    b[row_of.at(t.monomial)] = t.coeff;

  auto sol = solve(m, b);
  if (!sol) {
    result.message = "no primitive among " + std::to_string(basis.size()) + " candidate monomials";
    return result;
  }
  ElementAccumulator acc(a->signature());
  for (std::size_t i = 0; i < sol->size(); ++i)
    if (!(*sol)[i].is_zero())
      acc.add(basis.monomials[i], (*sol)[i]);
  Element w = std::move(acc).finish();
  if (!(apply_d(*a, w) == x))
    throw std::logic_error("coboundary witness does not reproduce the target");
  result.kind = CoboundaryResult::Kind::yes;
  result.witness = std::move(w);
  result.message = "primitive found among " + std::to_string(basis.size()) + " candidate monomials";
  return result;
}

void write_matrix_market(std::ostream& out, const SparseRationalMatrix& m) {
  out << "%%MatrixMarket matrix coordinate rational general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, x] : m.column(c))
      out << (r + 1) << ' ' << (c + 1) << ' ' << x.to_string() << '\n';
}

} // namespace fda
