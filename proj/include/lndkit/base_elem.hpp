#pragma once

#include <limits>
#include <string>

#include "lndkit/upoly.hpp"

namespace lndkit {

// Element of the local ring A = Q[x]_(x): a reduced fraction num/den with
// den monic and den(0) != 0.
class BaseElem {
 public:
  static constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

  BaseElem() = default;
  BaseElem(const Rational& c) : num_(c) {}  // NOLINT
  BaseElem(int c) : num_(Rational(c)) {}    // NOLINT
  explicit BaseElem(const UPoly& num) : num_(num) {}
  BaseElem(const UPoly& num, const UPoly& den);

  static BaseElem x() { return BaseElem(UPoly::X()); }
  static BaseElem x_pow(int k) { return BaseElem(UPoly::monomial(1, k)); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_unit() const { return num_.coeff(0) != 0; }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }

  // Valuation; kInfiniteOrder for zero.
  int x_order() const;
  Rational residue() const;
  // Rational constant; throws if the element depends on x.
  Rational as_rational() const;
  // Power series expansion mod x^k.
  UPoly truncate(int k) const;
  // Exact division by x^k.
  BaseElem div_x_pow(int k) const;

  BaseElem operator-() const { return BaseElem(-num_, den_, true); }
  friend BaseElem operator+(const BaseElem& a, const BaseElem& b);
  friend BaseElem operator-(const BaseElem& a, const BaseElem& b);
  friend BaseElem operator*(const BaseElem& a, const BaseElem& b);
  BaseElem& operator+=(const BaseElem& b) { return *this = *this + b; }
  BaseElem& operator-=(const BaseElem& b) { return *this = *this - b; }
  BaseElem& operator*=(const BaseElem& b) { return *this = *this * b; }
  friend bool operator==(const BaseElem& a, const BaseElem& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const BaseElem& a, const BaseElem& b) { return !(a == b); }

  // Throws DivisibilityError when b does not divide a in A, ArithmeticError on b = 0.
  static BaseElem exact_div(const BaseElem& a, const BaseElem& b);
  BaseElem inverse() const;

  std::string to_string() const;

 private:
  BaseElem(UPoly num, UPoly den, bool /*already_normal*/)
      : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  UPoly num_;
  UPoly den_{Rational(1)};
};

inline bool is_zero(const BaseElem& a) { return a.is_zero(); }
inline bool is_zero(const Rational& a) { return a == 0; }

}  // namespace lndkit
