#include "lndkit/base_elem.hpp"

#include "lndkit/errors.hpp"

namespace lndkit {

BaseElem::BaseElem(const UPoly& num, const UPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw ArithmeticError("zero denominator");
  normalize();
}

void BaseElem::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    UPoly g = UPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = UPoly::exact_div(num_, g);
      den_ = UPoly::exact_div(den_, g);
    }
  }
  if (den_.coeff(0) == 0) throw ArithmeticError("denominator vanishes at x = 0: not an element of A");
  Rational l = den_.lc();
  if (l != 1) {
    UPoly inv(Rational(1) / l);
    num_ *= inv;
    den_ *= inv;
  }
}

int BaseElem::x_order() const { return num_.is_zero() ? kInfiniteOrder : num_.order(); }

Rational BaseElem::residue() const { return num_.coeff(0) / den_.coeff(0); }

Rational BaseElem::as_rational() const {
  if (!is_rational()) throw ArithmeticError("coefficient depends on x: " + to_string());
  return num_.coeff(0) / den_.coeff(0);
}

UPoly BaseElem::truncate(int k) const {
  if (den_.is_constant()) return num_.truncate(k) * UPoly(Rational(1) / den_.coeff(0));
  return (num_.truncate(k) * den_.series_inverse(k)).truncate(k);
}

BaseElem BaseElem::div_x_pow(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (x_order() < k) throw DivisibilityError("not divisible by x^" + std::to_string(k));
  return BaseElem(num_.shift_down(k), den_, true);
}

BaseElem operator+(const BaseElem& a, const BaseElem& b) {
  if (a.den_ == b.den_) {
    BaseElem r(a.num_ + b.num_, a.den_, true);
    if (!r.den_.is_constant()) r.normalize();
    else if (r.num_.is_zero()) r.den_ = UPoly(1);
    return r;
  }
  return BaseElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

BaseElem operator-(const BaseElem& a, const BaseElem& b) { return a + (-b); }

BaseElem operator*(const BaseElem& a, const BaseElem& b) {
  if (a.den_.is_constant() && b.den_.is_constant()) return BaseElem(a.num_ * b.num_, UPoly(1), true);
  return BaseElem(a.num_ * b.num_, a.den_ * b.den_);
}

BaseElem BaseElem::exact_div(const BaseElem& a, const BaseElem& b) {
  if (b.is_zero()) throw ArithmeticError("division by zero in A");
  if (a.is_zero()) return a;
  int k = b.x_order();
  if (a.x_order() < k)
    throw DivisibilityError("x-order " + std::to_string(a.x_order()) + " below divisor order " +
                            std::to_string(k));
  UPoly bunit = b.num_.shift_down(k);
  return BaseElem(a.num_.shift_down(k) * b.den_, a.den_ * bunit);
}

BaseElem BaseElem::inverse() const {
  if (!is_unit()) throw NotInvertibleError("not a unit of A: " + to_string());
  return BaseElem(den_, num_);
}

std::string BaseElem::to_string() const {
  if (den_.is_constant()) return num_.to_string("x");
  return "(" + num_.to_string("x") + ")/(" + den_.to_string("x") + ")";
}

}  // namespace lndkit
