#include "weblin/parser.hpp"

#include <cctype>

namespace weblin {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& params)
      : text_(text), params_(params) {}

  Expr parse() {
    Expr e = expression();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (eat('+')) {
        e = e + term();
      } else if (eat('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*')) {
        e = e * factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) throw SyntaxError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Expr base = primary();
    if (eat('^')) return base.pow(exponent());
    return base;
  }

  int exponent() {
    skip_ws();
    bool paren = eat('(');
    bool neg = eat('-');
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
      throw SyntaxError("expected integer exponent", at);
    long v = 0;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) throw SyntaxError("exponent too large", at);
      ++pos_;
    }
    if (paren && !eat(')')) throw SyntaxError("expected ')'", pos_);
    return (int)(neg ? -v : v);
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit((unsigned char)c) || c == '.') return number();
    if (std::isalpha((unsigned char)c) || c == '_') return identifier();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr number() {
    std::size_t at = pos_;
    std::string digits;
    int frac_digits = -1;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit((unsigned char)c)) {
        digits += c;
        if (frac_digits >= 0) ++frac_digits;
        ++pos_;
      } else if (c == '.' && frac_digits < 0) {
        frac_digits = 0;
        ++pos_;
      } else {
        break;
      }
    }
    if (digits.empty()) throw SyntaxError("malformed number", at);
    Int num(digits, 10);
    Rat v(num);
    if (frac_digits > 0) {
      Int den(1);
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
      v = Rat(num, den);
      v.canonicalize();
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    std::size_t at = pos_;
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
      name += text_[pos_++];

    if (name == "exp" || name == "log" || name == "sin" || name == "cos") {
      if (!eat('(')) throw SyntaxError("expected '(' after " + name, pos_);
      Expr arg = expression();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      if (name == "exp") return exp(arg);
      if (name == "log") return log(arg);
      if (name == "sin") return sin(arg);
      return cos(arg);
    }
    if (name == "x1") return Expr::x1();
    if (name == "x2") return Expr::x2();
    for (auto& p : params_)
      if (p == name) return Expr::parameter(name);
    throw Error(ErrorKind::UnknownIdentifier,
                "unknown identifier '" + name + "' at offset " +
                    std::to_string(at));
  }

  const std::string& text_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& params) {
  return Parser(text, params).parse();
}

}  // namespace weblin
