#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fda {

/// Exact rational number.
///
/// Values whose reduced numerator and denominator both fit in a signed
/// 64-bit word are stored inline; anything larger is promoted to a GMP
/// rational. The representation is canonical: a value is small if and only
/// if it fits, so equality never has to compare across representations.
/// Denominators are always positive.
class Rational {
public:
  Rational() noexcept = default;
  Rational(std::int64_t value) noexcept; // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  /// Parses "p", "-p", "p/q". Throws fda::Error(Errc::parse) on bad input or
  /// zero denominator.
  static Rational parse(std::string_view text);

  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] int sign() const noexcept;

  [[nodiscard]] mpq_class to_mpq() const;
  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;

  /// "p/q" in lowest terms, or "p" when q = 1, e.g. "5", "-1/15".
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] double to_double() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

} // namespace fda
