#include "fda/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fda/errors.hpp"

namespace fda {
namespace {

using u128 = unsigned __int128;

constexpr __int128 kMin = -static_cast<__int128>(std::numeric_limits<std::int64_t>::max());
constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd_u128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0)
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  const u128 u = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class r = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  if (neg)
    r = -r;
  return r;
}

bool fits_small(const mpz_class& z) {
  // LONG_MIN is excluded so that negation of a small value never overflows.
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z.get_si() != std::numeric_limits<long>::min();
}

bool valid_integer_text(std::string_view s) {
  if (s.empty())
    return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size())
    return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!valid_integer_text(s))
    throw Error(Errc::parse, "invalid rational literal '" + std::string(s) + "'");
  std::string buf(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(buf, 10);
}

} // namespace

Rational::Rational(std::int64_t value) noexcept : num_(value), den_(1) {
  if (value == std::numeric_limits<std::int64_t>::min()) {
    num_ = 0;
    big_ = std::make_shared<const mpq_class>(to_mpz(value));
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw std::domain_error("Rational: zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  if (fits_small(q.get_num()) && fits_small(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
  } else {
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const u128 un = num < 0 ? -static_cast<u128>(num) : static_cast<u128>(num);
  const u128 g = gcd_u128(un, static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (num == 0)
    return Rational();
  Rational r;
  if (num >= kMin && num <= kMax && den <= kMax) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
  } else {
    r.num_ = 0;
    r.big_ = std::make_shared<const mpq_class>(to_mpz(num), to_mpz(den));
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  const auto slash = text.find('/');
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
      throw Error(Errc::parse, "signed denominator in '" + std::string(text) + "'");
    den = parse_integer(den_text);
    if (den == 0)
      throw Error(Errc::parse, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(mpq_class(num, den));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_)
    return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_)
    return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

std::string Rational::to_string() const {
  if (big_)
    return big_->get_den() == 1 ? big_->get_num().get_str()
                                : big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        num_ = s;
        return *this;
      }
    }
    const __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
    const __int128 d = static_cast<__int128>(den_) * rhs.den_;
    *this = from_wide(n, d);
    return *this;
  }
  *this = Rational(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(num_, rhs.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
        num_ = p;
        return *this;
      }
    }
    *this = from_wide(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
    return *this;
  }
  *this = Rational(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero())
    throw std::domain_error("Rational: division by zero");
  if (!big_ && !rhs.big_) {
    *this = from_wide(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
    return *this;
  }
  *this = Rational(to_mpq() / rhs.to_mpq());
  return *this;
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_)
    return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_)
    return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

} // namespace fda
