#pragma once

// Free (N, Z/2)-bigraded commutative algebras over Q.
//
// Swapping two generators g, h costs (-1)^(deg g * deg h + par g * par h).
// A generator squares to zero exactly when deg + par is odd. Monomials are
// stored as sorted multisets of generator ids; the sign picked up while
// sorting lives in the coefficient.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/inlined_vector.h>

#include "fda/rational.hpp"

namespace fda {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

struct Bidegree {
  int degree = 0;
  Parity parity = Parity::even;

  [[nodiscard]] constexpr bool square_zero() const noexcept {
    return ((degree + static_cast<int>(parity)) & 1) != 0;
  }
  friend constexpr Bidegree operator+(Bidegree a, Bidegree b) noexcept {
    return {a.degree + b.degree, static_cast<Parity>(static_cast<int>(a.parity) ^ static_cast<int>(b.parity))};
  }
  friend constexpr bool operator==(Bidegree, Bidegree) noexcept = default;
  friend constexpr auto operator<=>(Bidegree, Bidegree) noexcept = default;
};

/// +1 or -1: the sign incurred by moving an element of bidegree a past one of bidegree b.
[[nodiscard]] constexpr int commutation_sign(Bidegree a, Bidegree b) noexcept {
  const int e = a.degree * b.degree + static_cast<int>(a.parity) * static_cast<int>(b.parity);
  return (e & 1) ? -1 : 1;
}

std::string to_string(Parity p);
std::string to_string(Bidegree b);

struct GeneratorDecl {
  std::string name;
  std::string family;
  std::vector<int> indices;
  Bidegree bidegree;

  /// Name defaults to family followed by the indices joined with '_'
  /// ("e3", "omega_0_4", "g7").
  static GeneratorDecl make(std::string family, std::vector<int> indices, Bidegree bidegree,
                            std::string name = {});

  friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

using GenId = std::uint16_t;

class AlgebraSignature;
using SignaturePtr = std::shared_ptr<const AlgebraSignature>;

/// Ordered generator list. The canonical order is (family, indices)
/// lexicographic, independent of the order the declarations were given in.
class AlgebraSignature {
public:
  [[nodiscard]] std::size_t size() const noexcept { return decls_.size(); }
  [[nodiscard]] std::span<const GeneratorDecl> generators() const noexcept { return decls_; }
  [[nodiscard]] const GeneratorDecl& generator(GenId id) const { return decls_.at(id); }
  [[nodiscard]] const std::string& name(GenId id) const { return decls_.at(id).name; }
  [[nodiscard]] Bidegree bidegree(GenId id) const noexcept { return decls_[id].bidegree; }

  [[nodiscard]] std::optional<GenId> find(std::string_view name) const;
  /// Throws Error(Errc::unknown_generator).
  [[nodiscard]] GenId id(std::string_view name) const;

  /// True when swapping the two generators costs a sign.
  [[nodiscard]] bool swap_odd(GenId a, GenId b) const noexcept {
    return (__builtin_popcount(bits_[a] & bits_[b]) & 1) != 0;
  }
  [[nodiscard]] bool square_zero(GenId a) const noexcept { return (__builtin_popcount(bits_[a]) & 1) != 0; }
  [[nodiscard]] bool degree_odd(GenId a) const noexcept { return (bits_[a] & 1) != 0; }
  [[nodiscard]] bool parity_odd(GenId a) const noexcept { return (bits_[a] & 2) != 0; }

  friend bool operator==(const AlgebraSignature& a, const AlgebraSignature& b) { return a.decls_ == b.decls_; }

private:
  friend SignaturePtr make_signature(std::vector<GeneratorDecl> decls);
  std::vector<GeneratorDecl> decls_;
  std::vector<std::uint8_t> bits_;
  absl::flat_hash_map<std::string, GenId> by_name_;
};

/// Throws Error(Errc::duplicate_name) for repeated names or repeated (family, indices).
SignaturePtr make_signature(std::vector<GeneratorDecl> decls);

/// Pointer identity or structural equality.
bool same_signature(const SignaturePtr& a, const SignaturePtr& b);

class Monomial {
public:
  using Storage = absl::InlinedVector<GenId, 14>;

  Monomial() = default;
  /// `factors` must already be canonical (sorted, no vanishing squares).
  explicit Monomial(Storage factors) : factors_(std::move(factors)) {}

  [[nodiscard]] std::span<const GenId> factors() const noexcept { return {factors_.data(), factors_.size()}; }
  [[nodiscard]] const Storage& storage() const noexcept { return factors_; }
  [[nodiscard]] std::size_t length() const noexcept { return factors_.size(); }
  [[nodiscard]] bool is_unit() const noexcept { return factors_.empty(); }
  [[nodiscard]] int exponent(GenId g) const;
  [[nodiscard]] std::vector<std::pair<GenId, int>> exponents() const;
  [[nodiscard]] bool contains(GenId g) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  template <typename H>
  friend H AbslHashValue(H h, const Monomial& m) {
    return H::combine(H::combine_contiguous(std::move(h), m.factors_.data(), m.factors_.size()),
                      m.factors_.size());
  }

private:
  Storage factors_;
};

/// Sorts raw factors into canonical order. Returns the Koszul sign (+1/-1), or
/// 0 when the product vanishes because a square-zero generator repeats.
int canonicalize(const AlgebraSignature& sig, Monomial::Storage& factors);

/// Product of two canonical monomials; returns the sign as for canonicalize.
int multiply_monomials(const AlgebraSignature& sig, const Monomial& a, const Monomial& b, Monomial& out);

Bidegree bidegree_of(const AlgebraSignature& sig, const Monomial& m);
int degree_of(const AlgebraSignature& sig, const Monomial& m);

struct Term {
  Monomial monomial;
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Immutable exact linear combination of canonical monomials.
class Element {
public:
  explicit Element(SignaturePtr sig) : sig_(std::move(sig)) {}

  static Element zero(SignaturePtr sig) { return Element(std::move(sig)); }
  static Element scalar(SignaturePtr sig, const Rational& c);
  static Element one(SignaturePtr sig) { return scalar(std::move(sig), 1); }
  static Element generator(SignaturePtr sig, std::string_view name);
  static Element generator(SignaturePtr sig, GenId id);
  static Element monomial(SignaturePtr sig, Monomial m, const Rational& c = 1);

  [[nodiscard]] const SignaturePtr& signature() const noexcept { return sig_; }
  [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Rational coefficient(const Monomial& m) const;

  [[nodiscard]] std::set<Bidegree> bidegrees() const;
  [[nodiscard]] bool is_homogeneous() const { return bidegrees().size() <= 1; }
  /// Bidegree of a nonzero homogeneous element.
  [[nodiscard]] std::optional<Bidegree> bidegree() const;

  [[nodiscard]] std::string to_string() const;

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Rational& c, const Element& x);
  friend Element operator*(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b);

private:
  friend class ElementAccumulator;
  friend Element mul(const Element& a, const Element& b);
  SignaturePtr sig_;
  std::vector<Term> terms_; // sorted by monomial, no zero coefficients
};

/// Hash-map accumulator used by every expansion kernel.
class ElementAccumulator {
public:
  explicit ElementAccumulator(SignaturePtr sig) : sig_(std::move(sig)) {}

  void add(const Monomial& m, const Rational& c);
  void add(Monomial&& m, const Rational& c);
  /// Canonicalizes `factors` (consuming them) and adds sign * c.
  void add_raw(Monomial::Storage& factors, const Rational& c);
  void add_product(const Monomial& a, const Monomial& b, const Rational& c);
  void add(const Element& x, const Rational& scale = 1);
  void merge(ElementAccumulator&& other);

  [[nodiscard]] std::size_t size() const noexcept { return map_.size(); }
  [[nodiscard]] const SignaturePtr& signature() const noexcept { return sig_; }
  Element finish() &&;

private:
  SignaturePtr sig_;
  absl::flat_hash_map<Monomial, Rational> map_;
};

/// Builds the canonical element coeff * g1^k1 * g2^k2 * ... from factors in
/// arbitrary order. Throws Error(Errc::unknown_generator).
Element normalize(const SignaturePtr& sig, std::span<const std::pair<std::string, int>> raw, const Rational& coeff);

/// Graded-commutative product. Throws Error(Errc::signature_mismatch).
Element mul(const Element& a, const Element& b);

Element linear_combine(std::span<const std::pair<Rational, Element>> terms);

/// Re-expresses x in a signature containing all generators x uses, matching
/// generators by name. Throws Error(Errc::unknown_generator).
Element transport(const Element& x, const SignaturePtr& target);

/// Throws Error(Errc::signature_mismatch) unless same_signature(a, b).
void require_same_signature(const SignaturePtr& a, const SignaturePtr& b, std::string_view context);

} // namespace fda
