#include "lndkit/upoly.hpp"

#include <algorithm>

#include "lndkit/errors.hpp"

namespace lndkit {

std::string to_string(const Rational& r) { return r.get_str(); }

UPoly::UPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rational& c, int degree) {
  UPoly p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, Rational(0));
  p.c_[degree] = c;
  return p;
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int UPoly::order() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

Rational UPoly::eval(const Rational& at) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::integral() const {
  std::vector<Rational> d(c_.size() + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) d[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly r = *this;
  Rational l = lc();
  for (auto& c : r.c_) c /= l;
  return r;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + UPoly(*it);
  return acc;
}

UPoly UPoly::shift_down(int k) const {
  if (is_zero()) return *this;
  if (order() < k) throw DivisibilityError("polynomial not divisible by X^" + std::to_string(k));
  return UPoly(std::vector<Rational>(c_.begin() + k, c_.end()));
}

UPoly UPoly::truncate(int k) const {
  if (static_cast<int>(c_.size()) <= k) return *this;
  return UPoly(std::vector<Rational>(c_.begin(), c_.begin() + std::max(k, 0)));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly result(1), base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1, Rational(0));
  const Rational& l = b.c_.back();
  for (int i = a.degree(); i >= b.degree(); --i) {
    if (rem[i] == 0) continue;
    Rational f = rem[i] / l;
    int shift = i - b.degree();
    quo[shift] = f;
    for (int j = 0; j <= b.degree(); ++j) rem[shift + j] -= f * b.c_[j];
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly UPoly::exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DivisibilityError("polynomial not divisible");
  return q;
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) throw ArithmeticError("gcd(0, 0) is undefined");
  UPoly u = a, v = b;
  while (!v.is_zero()) {
    UPoly r = divmod(u, v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

UPoly::Bezout UPoly::ext_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) throw ArithmeticError("gcd(0, 0) is undefined");
  UPoly r0 = a, r1 = b, s0 = 1, s1, t0, t1 = 1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Rational l = r0.lc();
  UPoly inv(Rational(1) / l);
  return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly UPoly::series_inverse(int k) const {
  if (coeff(0) == 0) throw NotInvertibleError("series inverse needs a unit constant term");
  std::vector<Rational> inv(std::max(k, 0), Rational(0));
  if (k <= 0) return UPoly();
  Rational c0inv = Rational(1) / c_[0];
  inv[0] = c0inv;
  for (int i = 1; i < k; ++i) {
    Rational acc = 0;
    for (int j = 1; j <= i && j < static_cast<int>(c_.size()); ++j) acc += c_[j] * inv[i - j];
    inv[i] = -acc * c0inv;
  }
  return UPoly(std::move(inv));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono;
    if (i == 1) mono = var;
    if (i > 1) mono = var + "^" + std::to_string(i);
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out;
}

UPoly squarefree_part(const UPoly& f) {
  if (f.is_zero()) throw ArithmeticError("squarefree part of zero");
  if (f.degree() == 0) return UPoly(1);
  return UPoly::exact_div(f, UPoly::gcd(f, f.derivative())).monic();
}

}  // namespace lndkit
