#include "support.hpp"

#include <algorithm>

namespace fdatest {

fda::Catalog& catalog() {
  static fda::Catalog cat;
  return cat;
}

int transposition_sign(const fda::AlgebraSignature& sig, std::vector<fda::GenId> ids) {
  int sign = 1;
  for (std::size_t pass = 0; pass < ids.size(); ++pass)
    for (std::size_t i = 0; i + 1 < ids.size(); ++i)
      if (ids[i] > ids[i + 1]) {
        sign *= fda::commutation_sign(sig.bidegree(ids[i]), sig.bidegree(ids[i + 1]));
        std::swap(ids[i], ids[i + 1]);
      }
  for (std::size_t i = 0; i + 1 < ids.size(); ++i)
    if (ids[i] == ids[i + 1] && sig.bidegree(ids[i]).square_zero())
      return 0;
  return sign;
}

std::size_t dense_rank(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty())
    return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0)
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0)
        continue;
      const mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

fda::Element random_element(const fda::SignaturePtr& sig, std::mt19937_64& rng, int terms, int length) {
  std::uniform_int_distribution<int> gen(0, static_cast<int>(sig->size()) - 1);
  std::uniform_int_distribution<int> len(0, length);
  std::uniform_int_distribution<int> coeff(-5, 5);
  fda::ElementAccumulator acc(sig);
  for (int t = 0; t < terms; ++t) {
    fda::Monomial::Storage f;
    const int n = len(rng);
    for (int i = 0; i < n; ++i)
      f.push_back(static_cast<fda::GenId>(gen(rng)));
    acc.add_raw(f, coeff(rng));
  }
  return std::move(acc).finish();
}

fda::Element random_homogeneous(const fda::SignaturePtr& sig, std::mt19937_64& rng, fda::Bidegree b, int terms) {
  std::uniform_int_distribution<int> gen(0, static_cast<int>(sig->size()) - 1);
  std::uniform_int_distribution<int> coeff(1, 7);
  fda::ElementAccumulator acc(sig);
  int found = 0;
  for (int attempt = 0; attempt < 2000 && found < terms; ++attempt) {
    fda::Monomial::Storage f;
    fda::Bidegree total{};
    while (total.degree < b.degree && f.size() < 12) {
      const auto g = static_cast<fda::GenId>(gen(rng));
      f.push_back(g);
      total = total + sig->bidegree(g);
    }
    if (total != b)
      continue;
    fda::Monomial::Storage copy = f;
    if (fda::canonicalize(*sig, copy) == 0)
      continue;
    acc.add_raw(f, coeff(rng));
    ++found;
  }
  return std::move(acc).finish();
}

} // namespace fdatest
