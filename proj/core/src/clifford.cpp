#include "fda/clifford.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>

#include "fda/errors.hpp"

namespace fda {

IntMatrix::IntMatrix(std::size_t n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n)
    throw std::invalid_argument("IntMatrix: wrong number of entries");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::int64_t x) { return x == 0; });
}

std::size_t IntMatrix::nonzeros() const {
  return static_cast<std::size_t>(std::count_if(a_.begin(), a_.end(), [](std::int64_t x) { return x != 0; }));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("IntMatrix: size mismatch");
  const std::size_t n = a.n_;
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t x = a(i, k);
      if (x == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += x * b(k, j);
    }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i)
    out.a_[i] += b.a_.at(i);
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i)
    out.a_[i] -= b.a_.at(i);
  return out;
}

IntMatrix operator*(std::int64_t s, const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& x : out.a_)
    x *= s;
  return out;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), m = b.size();
  IntMatrix out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != 0)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < m; ++l)
            out(i * m + k, j * m + l) = a(i, j) * b(k, l);
  return out;
}

namespace {

// Seed alphabet in search order: 1, s1, s3, eps.
const std::array<IntMatrix, 4>& seeds() {
  static const std::array<IntMatrix, 4> s{IntMatrix(2, {1, 0, 0, 1}), IntMatrix(2, {0, 1, 1, 0}),
                                          IntMatrix(2, {1, 0, 0, -1}), IntMatrix(2, {0, 1, -1, 0})};
  return s;
}

constexpr std::array<const char*, 4> seed_names{"1", "s1", "s3", "eps"};

using TensorString = std::vector<int>;

IntMatrix string_matrix(const TensorString& s) {
  IntMatrix m = seeds()[static_cast<std::size_t>(s[0])];
  for (std::size_t i = 1; i < s.size(); ++i)
    m = kron(m, seeds()[static_cast<std::size_t>(s[i])]);
  return m;
}

std::string string_label(const TensorString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i)
      out += '.';
    out += seed_names[static_cast<std::size_t>(s[i])];
  }
  return out;
}

bool strings_anticommute(const TensorString& s, const TensorString& t) {
  int n = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0 && t[i] != 0 && s[i] != t[i])
      ++n;
  return (n & 1) != 0;
}

int eps_count(const TensorString& s) { return static_cast<int>(std::count(s.begin(), s.end(), 3)); }

// First set (in lexicographic candidate order) of one string squaring to -1
// followed by d-1 strings squaring to +1, all mutually anticommuting.
std::vector<TensorString> search_strings(int length, int d) {
  std::vector<TensorString> candidates;
  int total = 1;
  for (int i = 0; i < length; ++i)
    total *= 4;
  for (int code = 1; code < total; ++code) {
    TensorString s(static_cast<std::size_t>(length));
    int c = code;
    for (int i = length - 1; i >= 0; --i) {
      s[static_cast<std::size_t>(i)] = c % 4;
      c /= 4;
    }
    candidates.push_back(std::move(s));
  }
  std::vector<TensorString> chosen;
  std::function<bool(std::size_t)> extend = [&](std::size_t start) -> bool {
    if (static_cast<int>(chosen.size()) == d)
      return true;
    const bool want_timelike = chosen.empty();
    for (std::size_t i = want_timelike ? 0 : start; i < candidates.size(); ++i) {
      const TensorString& c = candidates[i];
      if (((eps_count(c) & 1) != 0) != want_timelike)
        continue;
      if (!std::all_of(chosen.begin(), chosen.end(), [&](const TensorString& t) { return strings_anticommute(c, t); }))
        continue;
      chosen.push_back(c);
      if (extend(want_timelike ? 0 : i + 1))
        return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!extend(0))
    throw std::logic_error("no anticommuting tensor strings found");
  return chosen;
}

void for_each_tuple(int d, int p, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(p));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == p) {
      fn(idx);
      return;
    }
    for (int a = start; a < d; ++a) {
      idx[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, a + 1);
    }
  };
  rec(0, 0);
}

// Quartic polynomial in commuting spinor variables, keyed by the sorted index quadruple.
using Quartic = std::map<std::uint32_t, std::int64_t>;

std::uint32_t quad_key(std::array<std::size_t, 4> q) {
  std::sort(q.begin(), q.end());
  return static_cast<std::uint32_t>((q[0] << 24) | (q[1] << 16) | (q[2] << 8) | q[3]);
}

// Adds s * sum M_ab N_cd x_a x_b x_c x_d.
void add_quartic(Quartic& out, const IntMatrix& m, const IntMatrix& n, std::int64_t s) {
  const std::size_t dim = m.size();
  std::vector<std::array<std::size_t, 2>> mi, ni;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if (m(a, b) != 0)
        mi.push_back({a, b});
      if (n(a, b) != 0)
        ni.push_back({a, b});
    }
  for (const auto& [a, b] : mi)
    for (const auto& [c, e] : ni) {
      auto& slot = out[quad_key({a, b, c, e})];
      slot += s * m(a, b) * n(c, e);
    }
}

void prune(Quartic& q) { std::erase_if(q, [](const auto& kv) { return kv.second == 0; }); }

std::string tuple_text(const std::vector<int>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

} // namespace

CliffordRep build_clifford(int d, int timelike, int spacelike) {
  if (spacelike < 0)
    spacelike = d - timelike;
  if (timelike != 1 || spacelike != d - 1 || (d != 3 && d != 11))
    throw Error(Errc::unsupported, "no real spinor representation implemented for d = " + std::to_string(d) +
                                       " with signature (" + std::to_string(timelike) + "," +
                                       std::to_string(spacelike) + ")");
  CliffordRep rep;
  rep.d = d;
  rep.timelike = timelike;
  rep.spacelike = spacelike;
  rep.eta.assign(static_cast<std::size_t>(d), 1);
  rep.eta[0] = -1;
  std::vector<TensorString> strings;
  if (d == 3)
    strings = {{3}, {1}, {2}};
  else
    strings = search_strings(5, 11);
  for (const auto& s : strings) {
    rep.gammas.push_back(string_matrix(s));
    rep.labels.push_back(string_label(s));
  }
  rep.spinor_dim = rep.gammas[0].size();
  rep.C = rep.gammas[0];
  return rep;
}

std::string to_string(Symmetry s) {
  switch (s) {
  case Symmetry::symmetric: return "symmetric";
  case Symmetry::antisymmetric: return "antisymmetric";
  case Symmetry::mixed: return "mixed";
  }
  return "mixed";
}

Symmetry symmetry_of(const IntMatrix& m) {
  const IntMatrix t = m.transpose();
  if (t == m)
    return Symmetry::symmetric;
  if ((t + m).is_zero())
    return Symmetry::antisymmetric;
  return Symmetry::mixed;
}

IntMatrix gamma_product(const CliffordRep& rep, const std::vector<int>& indices) {
  IntMatrix m = IntMatrix::identity(rep.spinor_dim);
  for (int a : indices)
    m = m * rep.gammas.at(static_cast<std::size_t>(a));
  return m;
}

PairingMatrix antisym_gamma(const CliffordRep& rep, const std::vector<int>& indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= rep.d)
      throw Error(Errc::bad_indices, "vector index " + std::to_string(indices[i]) + " out of range");
    if (i > 0 && indices[i - 1] >= indices[i])
      throw Error(Errc::bad_indices, "indices must be strictly increasing");
  }
  PairingMatrix out;
  out.indices = indices;
  out.matrix = rep.C * gamma_product(rep, indices);
  out.symmetry = symmetry_of(out.matrix);
  return out;
}

std::optional<Symmetry> pairing_symmetry(const CliffordRep& rep, int p) {
  std::optional<Symmetry> seen;
  bool consistent = true;
  for_each_tuple(rep.d, p, [&](const std::vector<int>& t) {
    const Symmetry s = antisym_gamma(rep, t).symmetry;
    if (s == Symmetry::mixed || (seen && *seen != s))
      consistent = false;
    seen = s;
  });
  if (!consistent)
    return std::nullopt;
  return seen;
}

Report check_clifford(const CliffordRep& rep) {
  Stopwatch clock;
  Report r = Report::make_pass("clifford.d" + std::to_string(rep.d),
                               "Clifford relations and pairing symmetries hold in d = " + std::to_string(rep.d));
  const std::size_t n = rep.spinor_dim;
  const IntMatrix id = IntMatrix::identity(n);

  Report anti = Report::make_pass("anticommutators");
  for (int a = 0; a < rep.d && anti.passed(); ++a)
    for (int b = a; b < rep.d; ++b) {
      const auto& ga = rep.gammas[static_cast<std::size_t>(a)];
      const auto& gb = rep.gammas[static_cast<std::size_t>(b)];
      const IntMatrix expected = (a == b ? 2 * rep.eta[static_cast<std::size_t>(a)] : 0) * id;
      if (!(ga * gb + gb * ga == expected)) {
        anti = Report::make_fail("anticommutators", "{Gamma^" + std::to_string(a) + ", Gamma^" + std::to_string(b) +
                                                        "} != 2 eta^{ab}");
        anti.pinned["offending_pair"] = std::to_string(a) + "," + std::to_string(b);
        break;
      }
    }
  anti.counts["pairs"] = static_cast<std::int64_t>(rep.d * (rep.d + 1) / 2);
  r.add(std::move(anti));

  Report cc = Report::make_pass("charge_conjugation", "C is orthogonal");
  if (!(rep.C * rep.C.transpose() == id))
    cc = Report::make_fail("charge_conjugation", "C C^T != 1");
  r.add(std::move(cc));

  Report sym = Report::make_pass("pairing_symmetry");
  for (int p = 0; p <= std::min(5, rep.d); ++p) {
    const auto s = pairing_symmetry(rep, p);
    if (!s) {
      sym = Report::make_fail("pairing_symmetry", "C Gamma^(" + std::to_string(p) + ") has no uniform symmetry");
      break;
    }
    sym.pinned["p" + std::to_string(p)] = to_string(*s);
  }
  if (sym.passed() && sym.pinned.count("p1") && sym.pinned["p1"] != "symmetric")
    sym = Report::make_fail("pairing_symmetry", "C Gamma^a is not symmetric");
  r.add(std::move(sym));

  Report two = Report::make_pass("two_index_gammas");
  for (int a = 0; a < rep.d && two.passed(); ++a)
    for (int b = a + 1; b < rep.d; ++b) {
      const auto& ga = rep.gammas[static_cast<std::size_t>(a)];
      const auto& gb = rep.gammas[static_cast<std::size_t>(b)];
      if (!(2 * (ga * gb) == ga * gb - gb * ga)) {
        two = Report::make_fail("two_index_gammas", "Gamma^{ab} != [Gamma^a, Gamma^b]/2 for (a,b) = (" +
                                                        std::to_string(a) + "," + std::to_string(b) + ")");
        break;
      }
    }
  r.add(std::move(two));

  r.pinned["spinor_dim"] = std::to_string(n);
  for (const auto& c : r.checks)
    for (const auto& [k, v] : c.pinned)
      if (k.size() == 2 && k[0] == 'p')
        r.pinned["symmetry_" + k] = v;
  r.seconds = clock.seconds();
  return r;
}

Report quartic_fierz_check(const CliffordRep& rep, FierzFamily family, std::optional<int> p) {
  Stopwatch clock;
  const std::size_t n = rep.spinor_dim;
  auto eta = [&](int b) { return static_cast<std::int64_t>(rep.eta[static_cast<std::size_t>(b)]); };
  auto cg = [&](std::vector<int> idx) { return rep.C * gamma_product(rep, idx); };

  if (family == FierzFamily::mu_closure) {
    const int pp = p.value_or(rep.d == 11 ? 2 : 1);
    const std::string name = "fierz.mu" + std::to_string(pp + 2) + "_closure.d" + std::to_string(rep.d);
    if (pp < 1 || pp > rep.d)
      throw Error(Errc::bad_indices, "p out of range for the closure check");
    bool vanishing = true;
    for_each_tuple(rep.d, pp, [&](const std::vector<int>& t) {
      if (symmetry_of(cg(t)) != Symmetry::antisymmetric)
        vanishing = false;
    });
    if (vanishing) {
      Report r = Report::make_fail(name, "C Gamma^(" + std::to_string(pp) + ") is antisymmetric, so mu_" +
                                             std::to_string(pp + 2) + " vanishes identically",
                                   std::nullopt, Errc::zero_cocycle);
      r.seconds = clock.seconds();
      return r;
    }
    // d mu_{p+2} = p * sum_{b, A} eta_bb (C Gamma^{b A})(C Gamma^b) psi^4 e_A
    Report r = Report::make_pass(name, "symmetrized quartic spinor tensors vanish");
    std::int64_t tuples = 0;
    for_each_tuple(rep.d, pp - 1, [&](const std::vector<int>& rest) {
      if (!r.passed())
        return;
      Quartic q;
      for (int b = 0; b < rep.d; ++b) {
        if (std::find(rest.begin(), rest.end(), b) != rest.end())
          continue;
        std::vector<int> idx{b};
        idx.insert(idx.end(), rest.begin(), rest.end());
        add_quartic(q, cg(idx), cg({b}), eta(b));
      }
      prune(q);
      ++tuples;
      if (!q.empty()) {
        r = Report::make_fail(name, "symmetrized tensor nonzero for remaining indices " + tuple_text(rest));
        r.counts["nonzero_components"] = static_cast<std::int64_t>(q.size());
      }
    });
    r.counts["index_tuples"] = tuples;
    r.pinned["p"] = std::to_string(pp);
    r.pinned["spinor_dim"] = std::to_string(n);
    r.seconds = clock.seconds();
    return r;
  }

  // d mu7 = c mu4 mu4 compared coefficient-wise on e_I, I increasing of length 4.
  const std::string name = "fierz.mu7_relation.d" + std::to_string(rep.d);
  if (rep.d < 5)
    return Report::make_fail(name, "mu_7 needs d >= 5", std::nullopt, Errc::unsupported);
  std::optional<Rational> c;
  Report r = Report::make_pass(name, "d mu7 and mu4 mu4 agree up to a single constant");
  std::int64_t tuples = 0, zero_pairs = 0;
  for_each_tuple(rep.d, 4, [&](const std::vector<int>& I) {
    if (!r.passed())
      return;
    Quartic lhs, rhs;
    for (int b = 0; b < rep.d; ++b) {
      if (std::find(I.begin(), I.end(), b) != I.end())
        continue;
      std::vector<int> idx{b};
      idx.insert(idx.end(), I.begin(), I.end());
      add_quartic(lhs, cg(idx), cg({b}), 5 * 24 * eta(b));
    }
    const auto m2 = [&](int i, int j) { return cg({I[static_cast<std::size_t>(i)], I[static_cast<std::size_t>(j)]}); };
    add_quartic(rhs, m2(0, 1), m2(2, 3), 8);
    add_quartic(rhs, m2(0, 2), m2(1, 3), -8);
    add_quartic(rhs, m2(0, 3), m2(1, 2), 8);
    prune(lhs);
    prune(rhs);
    ++tuples;
    if (lhs.empty() && rhs.empty()) {
      ++zero_pairs;
      return;
    }
    if (rhs.empty() || lhs.size() != rhs.size()) {
      r = Report::make_fail(name, "not proportional at e-indices " + tuple_text(I), std::nullopt,
                            Errc::not_proportional);
      return;
    }
    if (!c)
      c = Rational(lhs.begin()->second, rhs.begin()->second);
    for (auto li = lhs.begin(), ri = rhs.begin(); li != lhs.end(); ++li, ++ri)
      if (li->first != ri->first || !(Rational(li->second) == *c * Rational(ri->second))) {
        r = Report::make_fail(name, "not proportional at e-indices " + tuple_text(I), std::nullopt,
                              Errc::not_proportional);
        return;
      }
  });
  if (r.passed() && !c)
    r = Report::make_fail(name, "both sides vanish identically", std::nullopt, Errc::not_proportional);
  if (r.passed())
    r.pinned["c"] = c->to_string();
  r.counts["index_tuples"] = tuples;
  r.counts["vanishing_tuples"] = zero_pairs;
  r.seconds = clock.seconds();
  return r;
}

nlohmann::ordered_json to_json(const CliffordRep& rep) {
  auto matrix = [](const IntMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < m.size(); ++c)
        row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::ordered_json gammas = nlohmann::ordered_json::array();
  for (const auto& g : rep.gammas)
    gammas.push_back(matrix(g));
  return {{"d", rep.d},
          {"signature", {rep.timelike, rep.spacelike}},
          {"spinor_dim", rep.spinor_dim},
          {"eta", rep.eta},
          {"labels", rep.labels},
          {"gammas", std::move(gammas)},
          {"C", matrix(rep.C)}};
}

} // namespace fda
