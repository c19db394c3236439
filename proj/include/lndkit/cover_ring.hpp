#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lndkit/ideal.hpp"

namespace lndkit {

// B = Q[t]_alpha[s]/(m(s)) and R = A (x) B.  Elements are num / alpha^k with
// num a polynomial over A in (t, s, extra variables), reduced modulo m(s)
// and with no alpha factor left when k > 0.
struct CoverElem {
  Poly num;
  int alpha_pow = 0;
  friend bool operator==(const CoverElem& a, const CoverElem& b) {
    return a.alpha_pow == b.alpha_pow && a.num == b.num;
  }
  friend bool operator!=(const CoverElem& a, const CoverElem& b) { return !(a == b); }
};

struct UnitTest {
  bool unit = false;
  RPoly norm;             // Res_s(m, residue numerator), in t
  RPoly non_unit_factor;  // monic squarefree part of the norm prime to alpha
};

class CoverRing {
 public:
  static inline const VarList kBase{"t", "s"};

  CoverRing() = default;
  // modulus: monic in s with coefficients in Q[t]; alpha: in t
  CoverRing(const RPoly& modulus, const RPoly& alpha);

  const RPoly& modulus() const { return modulus_; }
  const RPoly& alpha() const { return alpha_; }
  int degree() const { return degree_; }

  CoverElem make(const Poly& num, int alpha_pow = 0) const;
  CoverElem make(const RPoly& num, int alpha_pow = 0) const { return make(lift(num), alpha_pow); }
  CoverElem constant(const BaseElem& c) const;
  CoverElem zero() const { return constant(BaseElem(0)); }
  CoverElem one() const { return constant(BaseElem(1)); }

  CoverElem add(const CoverElem& a, const CoverElem& b) const;
  CoverElem sub(const CoverElem& a, const CoverElem& b) const;
  CoverElem mul(const CoverElem& a, const CoverElem& b) const;
  CoverElem neg(const CoverElem& a) const { return {-a.num, a.alpha_pow}; }
  CoverElem pow(const CoverElem& a, unsigned e) const;
  CoverElem substitute(const CoverElem& a, const std::string& var, const CoverElem& image) const;
  // Ring automorphism given by the image of s.
  CoverElem apply_s(const CoverElem& a, const CoverElem& s_image) const;

  bool is_zero(const CoverElem& a) const { return a.num.is_zero(); }
  int x_order(const CoverElem& a) const { return lndkit::x_order(a.num); }
  CoverElem div_x_pow(const CoverElem& a, int k) const { return {lndkit::div_x_pow(a.num, k), a.alpha_pow}; }
  CoverElem mul_x_pow(const CoverElem& a, int k) const { return {lndkit::mul_x_pow(a.num, k), a.alpha_pow}; }
  // Class modulo x, as an x-free element.
  CoverElem residue(const CoverElem& a) const;

  // Invertibility of an x-free element of B through its norm.
  UnitTest unit_test(const CoverElem& b) const;
  // Inverse in B of an x-free unit; nullopt when not a unit.
  std::optional<CoverElem> inverse(const CoverElem& b) const;

  std::string to_string(const CoverElem& a) const;

 private:
  CoverElem canonical(Poly num, int alpha_pow) const;

  RPoly modulus_;
  RPoly alpha_;
  Poly modulus_lift_, alpha_lift_;
  int degree_ = 1;
};

// Polynomials in one variable over R, as coefficient vectors.
std::vector<CoverElem> coeffs_in(const CoverRing& R, const CoverElem& a, const std::string& var);
CoverElem from_coeffs(const CoverRing& R, const std::vector<CoverElem>& c, const std::string& var);
// Division by a polynomial monic in `var`; returns {quotient, remainder}.
std::pair<CoverElem, CoverElem> divide_monic(const CoverRing& R, const CoverElem& f, const CoverElem& g,
                                             const std::string& var);

}  // namespace lndkit
