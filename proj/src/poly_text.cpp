#include "lndkit/poly_text.hpp"

#include <cctype>

namespace lndkit {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarList& vars, bool allow_x)
      : s_(text), vars_(vars), allow_x_(allow_x) {}

  Poly run() {
    skip_ws();
    if (pos_ >= s_.size()) fail("empty polynomial");
    Poly p = expr();
    skip_ws();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, size_t at) const {
    int line = 1, col = 1;
    for (size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = unary();
    for (;;) {
      if (accept('+'))
        acc = acc + unary();
      else if (accept('-'))
        acc = acc - unary();
      else
        return acc;
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return term();
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        skip_ws();
        size_t at = pos_;
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) fail_at("divisor must be a nonzero constant", at);
        BaseElem c = d.constant_term();
        if (!c.is_unit()) fail_at("divisor is not a unit of the local ring", at);
        acc = c.inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      if (pos_ - start > 6) fail_at("exponent too large", start);
      return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rational r(Integer(std::string(s_.substr(start, pos_ - start))));
      return Poly::constant(vars_, BaseElem(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "x") {
        if (!allow_x_) fail_at("the uniformizer x is not allowed here", start);
        return Poly::constant(vars_, BaseElem::x());
      }
      for (const auto& v : vars_)
        if (v == name) return Poly::variable(vars_, name);
      fail_at("unknown variable '" + name + "'", start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const VarList& vars_;
  bool allow_x_;
  size_t pos_ = 0;
};

std::string monomial_text(const VarList& vars, const Monomial& m, int xpow) {
  std::string out;
  auto push = [&](const std::string& name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  };
  push("x", xpow);
  for (size_t i = 0; i < vars.size(); ++i) push(vars[i], m[i]);
  return out;
}

void append_term(std::string& out, Rational c, const std::string& mono) {
  bool neg = c < 0;
  if (neg) c = -c;
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (mono.empty())
    out += c.get_str();
  else if (c == 1)
    out += mono;
  else
    out += c.get_str() + "*" + mono;
}

}  // namespace

Poly parse_poly(std::string_view text, const VarList& vars) { return Parser(text, vars, true).run(); }

RPoly parse_rpoly(std::string_view text, const VarList& vars) {
  Poly p = Parser(text, vars, false).run();
  return p.map_coeffs([](const BaseElem& c) { return c.as_rational(); });
}

std::string format(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (c.is_polynomial()) {
      Rational scale = Rational(1) / c.den().coeff(0);
      const auto& co = c.num().coeffs();
      for (size_t i = 0; i < co.size(); ++i)
        if (co[i] != 0) append_term(out, co[i] * scale, monomial_text(p.vars(), m, static_cast<int>(i)));
    } else {
      std::string mono = monomial_text(p.vars(), m, 0);
      std::string frac = "(" + c.num().to_string("x") + ")/(" + c.den().to_string("x") + ")";
      if (!out.empty()) out += " + ";
      out += mono.empty() ? frac : frac + "*" + mono;
    }
  }
  return out;
}

std::string format(const RPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) append_term(out, c, monomial_text(p.vars(), m, 0));
  return out;
}

std::string format(const BaseElem& a) { return format(Poly::constant({}, a)); }

}  // namespace lndkit
