#pragma once

// Exact sparse linear algebra over monomial bases of a semifree algebra:
// differential matrices, rank, coboundary solving and cohomology dimensions.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fda/dgca.hpp"

namespace fda {

inline constexpr std::size_t default_basis_cap = 2'000'000;

/// Optional refinements of the degree grading. `weights` assigns a
/// nonnegative integer to each generator (by GenId); when given together with
/// `weight`, only monomials of that total weight are enumerated. A weighting
/// is only meaningful for the differential if it is preserved by d (see
/// preserves_weights).
struct BasisFilter {
  std::optional<std::vector<int>> weights;
  std::optional<int> weight;
  std::optional<Parity> parity;
};

struct GradedBasis {
  DGCAPtr algebra;
  int degree = 0;
  std::vector<Monomial> monomials; ///< canonical Monomial order
  absl::flat_hash_map<Monomial, std::uint32_t> index;

  [[nodiscard]] std::size_t size() const noexcept { return monomials.size(); }
  [[nodiscard]] std::optional<std::uint32_t> find(const Monomial& m) const;
};

/// Number of monomials of the given degree passing the filter, saturated at
/// UINT64_MAX; nullopt when infinite (a self-commuting degree-0 generator of
/// weight 0).
std::optional<std::uint64_t> count_monomials(const AlgebraSignature& sig, int degree, const BasisFilter& filter = {});

/// Throws Error(Errc::capped) with the count estimate when it exceeds `cap`.
GradedBasis monomial_basis(const DGCAPtr& a, int degree, std::size_t cap = default_basis_cap,
                           const BasisFilter& filter = {});

/// Column-major sparse matrix with no stored zeros; rows sorted within a column.
class SparseRationalMatrix {
public:
  using Column = std::vector<std::pair<std::uint32_t, Rational>>;

  SparseRationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
  [[nodiscard]] const Column& column(std::size_t c) const { return columns_.at(c); }
  [[nodiscard]] Rational entry(std::size_t r, std::size_t c) const;
  [[nodiscard]] std::size_t nonzeros() const noexcept;

  /// Entries may be given in any row order; zeros are dropped, repeated rows summed.
  void set_column(std::size_t c, Column entries);
  void set(std::size_t r, std::size_t c, const Rational& value);

  friend bool operator==(const SparseRationalMatrix&, const SparseRationalMatrix&) = default;

private:
  std::size_t rows_;
  std::vector<Column> columns_;
};

SparseRationalMatrix multiply(const SparseRationalMatrix& a, const SparseRationalMatrix& b);

/// Matrix of d from degree `degree` to `degree + 1` in the canonical bases
/// (columns index the source basis). The filter applies to both bases; its
/// weighting must be preserved by d.
SparseRationalMatrix differential_matrix(const DGCAPtr& a, int degree, std::size_t cap = default_basis_cap,
                                         const BasisFilter& filter = {});

std::size_t rank(const SparseRationalMatrix& m);

/// Some x with m x = b, or nullopt when b is not in the column span.
std::optional<std::vector<Rational>> solve(const SparseRationalMatrix& m, const std::vector<Rational>& b);

/// dim H^k for k = 0..max_degree.
std::vector<std::int64_t> cohomology_dims(const DGCAPtr& a, int max_degree, std::size_t cap = default_basis_cap,
                                          const BasisFilter& filter = {});

struct CoboundaryResult {
  enum class Kind { yes, no, capped };
  Kind kind = Kind::no;
  std::optional<Element> witness; ///< set for yes: apply_d(witness) == x
  std::size_t basis_size = 0;
  std::string message;
};

/// Decides whether the closed homogeneous element x is exact by solving
/// d v = x over the degree-below basis restricted to x's parity (and to x's
/// weight when `weights` is given and preserved by d). Throws
/// Errc::not_closed, Errc::inhomogeneous_image.
CoboundaryResult is_coboundary(const DGCAPtr& a, const Element& x, std::size_t cap = default_basis_cap,
                               const std::optional<std::vector<int>>& weights = std::nullopt);

/// True when every term of every d(g) has the weight of g.
bool preserves_weights(const SemifreeDGCA& a, const std::vector<int>& weights);

/// Weight of a weight-homogeneous element (nullopt for zero or mixed weights).
std::optional<int> weight_of(const Element& x, const std::vector<int>& weights);

/// "%%MatrixMarket matrix coordinate rational general" with 1-based "r c p/q" lines.
void write_matrix_market(std::ostream& out, const SparseRationalMatrix& m);

} // namespace fda
