#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace lndkit {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& r);

// mpq_class does not canonicalize two-argument construction.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Dense univariate polynomial over Q, coefficient i multiplies X^i.
// Trailing zeros are never stored, so the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c);  // NOLINT: constants convert implicitly
  UPoly(int c) : UPoly(Rational(c)) {}
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly monomial(const Rational& c, int degree);
  static UPoly X() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  // Lowest index with nonzero coefficient; -1 for zero.
  int order() const;
  Rational coeff(int i) const;
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& at) const;
  UPoly derivative() const;
  UPoly integral() const;  // zero constant term
  UPoly monic() const;
  UPoly compose(const UPoly& inner) const;
  UPoly shift_down(int k) const;  // divide by X^k, requires order() >= k
  UPoly truncate(int k) const;    // mod X^k

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly& operator+=(const UPoly& b) { return *this = *this + b; }
  UPoly& operator-=(const UPoly& b) { return *this = *this - b; }
  UPoly& operator*=(const UPoly& b) { return *this = *this * b; }
  UPoly pow(unsigned e) const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // Euclidean division; b must be nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Quotient when b divides a; throws DivisibilityError otherwise.
  static UPoly exact_div(const UPoly& a, const UPoly& b);
  // Monic gcd; gcd(0,0) throws ArithmeticError.
  static UPoly gcd(const UPoly& a, const UPoly& b);
  // Returns (g, s, t) with s*a + t*b = g = gcd(a,b).
  struct Bezout;
  static Bezout ext_gcd(const UPoly& a, const UPoly& b);
  // Power series inverse mod X^k; requires nonzero constant term.
  UPoly series_inverse(int k) const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct UPoly::Bezout {
  UPoly g, s, t;
};

UPoly squarefree_part(const UPoly& f);

}  // namespace lndkit
