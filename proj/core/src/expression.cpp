#include "fda/expression.hpp"

#include <cctype>
#include <string>

#include "fda/errors.hpp"

namespace fda {
namespace {

class Parser {
public:
  Parser(const SignaturePtr& sig, std::string_view text) : sig_(sig), text_(text) {}

  Element run() {
    Element e = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse, "expression parse error at column " + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string integer_text() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  Element expr() {
    skip_ws();
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Element acc = term();
    if (negate)
      acc = -acc;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Element term() {
    Element acc = power();
    while (accept('*'))
      acc = mul(acc, power());
    return acc;
  }

  Element power() {
    Element base = atom();
    if (accept('^')) {
      const long k = std::stol(integer_text());
      Element out = Element::one(sig_);
      for (long i = 0; i < k; ++i)
        out = mul(out, base);
      return out;
    }
    return base;
  }

  Element atom() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Element inner = expr();
      if (!accept(')'))
        fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = integer_text();
      const std::size_t save = pos_;
      if (accept('/')) {
        skip_ws();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          lit += "/" + integer_text();
        else
          pos_ = save;
      }
      return Element::scalar(sig_, Rational::parse(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Element::generator(sig_, text_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const SignaturePtr& sig_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Element parse_element(const SignaturePtr& sig, std::string_view text) { return Parser(sig, text).run(); }

} // namespace fda
