#pragma once

// Real spinor representations built from tensor products of the 2x2 seeds
//   s1 = [[0,1],[1,0]], s3 = [[1,0],[0,-1]], eps = [[0,1],[-1,0]]
// and the charge-conjugation pairings C Gamma^{a1...ap}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fda/rational.hpp"
#include "fda/report.hpp"

namespace fda {

/// Dense square integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::size_t n, std::vector<std::int64_t> entries);

  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }

  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::size_t nonzeros() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(std::int64_t s, const IntMatrix& a);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

/// Kronecker product, left factor most significant.
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);

struct CliffordRep {
  int d = 0;
  int timelike = 1;
  int spacelike = 0;
  std::size_t spinor_dim = 0;
  std::vector<int> eta;           ///< diagonal metric, -1 for a = 0
  std::vector<IntMatrix> gammas;  ///< Gamma^a with upper index
  IntMatrix C;
  std::vector<std::string> labels; ///< tensor-string name of each gamma ("s1.eps.1.s3.s3")
};

/// Supported: (3, 1+2) and (11, 1+10). Throws Error(Errc::unsupported).
CliffordRep build_clifford(int d, int timelike = 1, int spacelike = -1);

enum class Symmetry { symmetric, antisymmetric, mixed };
std::string to_string(Symmetry s);

struct PairingMatrix {
  std::vector<int> indices;
  IntMatrix matrix; ///< C Gamma^{a1...ap}
  Symmetry symmetry = Symmetry::mixed;
};

Symmetry symmetry_of(const IntMatrix& m);

/// Ordered product Gamma^{a1}...Gamma^{ap} (equal to the antisymmetrized one
/// for distinct indices).
IntMatrix gamma_product(const CliffordRep& rep, const std::vector<int>& indices);

/// Throws Error(Errc::bad_indices) unless the indices are strictly increasing and in range.
PairingMatrix antisym_gamma(const CliffordRep& rep, const std::vector<int>& indices);

/// Anticommutators, symmetry flags of C Gamma^(p) for p <= 5, and
/// Gamma^{ab} = (1/2)[Gamma^a, Gamma^b].
Report check_clifford(const CliffordRep& rep);

/// Symmetry of C Gamma^(p), provided it is the same for every index tuple.
std::optional<Symmetry> pairing_symmetry(const CliffordRep& rep, int p);

enum class FierzFamily { mu_closure, mu7_relation };

/// Spinor-index form of the closure of mu_{p+2} (default p: 2 in d = 11, 1
/// in d = 3) or of d mu_7 = c mu_4 mu_4. For each tuple of the remaining
/// vector indices the quartic tensor is symmetrized over its four spinor
/// indices, which is exactly what survives against commuting psi's. The
/// mu7 relation pins "c".
Report quartic_fierz_check(const CliffordRep& rep, FierzFamily family, std::optional<int> p = std::nullopt);

nlohmann::ordered_json to_json(const CliffordRep& rep);

} // namespace fda
