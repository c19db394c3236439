#include "lndkit/cover_ring.hpp"

#include "lndkit/poly_text.hpp"

namespace lndkit {
namespace {

std::optional<Poly> try_divide(const Poly& f, const Poly& h) {
  try {
    return divide_exact(f, h);
  } catch (const DivisibilityError&) {
    return std::nullopt;
  }
}

using Matrix = std::vector<std::vector<RPoly>>;

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  size_t d = a.size();
  Matrix c(d, std::vector<RPoly>(d, RPoly({"t"})));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

CoverRing::CoverRing(const RPoly& modulus, const RPoly& alpha)
    : modulus_(modulus.with_vars(kBase)), alpha_(alpha.with_vars({"t"})) {
  degree_ = modulus_.degree("s");
  if (degree_ < 1) throw PreconditionError("modulus must have positive degree in s");
  auto c = modulus_.coeffs_in("s");
  if (!c.back().is_constant() || c.back().constant_term() != 1) throw PreconditionError("modulus not monic in s");
  if (alpha_.is_zero()) throw PreconditionError("alpha must be nonzero");
  modulus_lift_ = lift(modulus_);
  alpha_lift_ = lift(alpha_.with_vars(kBase));
}

CoverElem CoverRing::canonical(Poly num, int alpha_pow) const {
  VarList vars = Poly::union_vars(kBase, num.vars());
  num = reduce_monic(num.with_vars(vars), modulus_lift_.with_vars(vars), "s");
  if (num.is_zero()) return {num, 0};
  while (alpha_pow > 0 && !alpha_.is_constant()) {
    auto q = try_divide(num, alpha_lift_.with_vars(vars));
    if (!q) break;
    num = q->with_vars(vars);
    --alpha_pow;
  }
  if (alpha_.is_constant() && alpha_pow > 0) {
    Rational scale = 1;
    for (int i = 0; i < alpha_pow; ++i) scale /= alpha_.constant_term();
    num = num * BaseElem(scale);
    alpha_pow = 0;
  }
  return {num, alpha_pow};
}

CoverElem CoverRing::make(const Poly& num, int alpha_pow) const { return canonical(num, alpha_pow); }

CoverElem CoverRing::constant(const BaseElem& c) const { return {Poly::constant(kBase, c), 0}; }

CoverElem CoverRing::add(const CoverElem& a, const CoverElem& b) const {
  int k = std::max(a.alpha_pow, b.alpha_pow);
  Poly na = a.num * alpha_lift_.pow(k - a.alpha_pow), nb = b.num * alpha_lift_.pow(k - b.alpha_pow);
  return canonical(na + nb, k);
}

CoverElem CoverRing::sub(const CoverElem& a, const CoverElem& b) const { return add(a, neg(b)); }

CoverElem CoverRing::mul(const CoverElem& a, const CoverElem& b) const {
  return canonical(a.num * b.num, a.alpha_pow + b.alpha_pow);
}

CoverElem CoverRing::pow(const CoverElem& a, unsigned e) const {
  CoverElem r = one(), base = a;
  while (e) {
    if (e & 1u) r = mul(r, base);
    e >>= 1u;
    if (e) base = mul(base, base);
  }
  return r;
}

CoverElem CoverRing::substitute(const CoverElem& a, const std::string& var, const CoverElem& image) const {
  if (!a.num.has_var(var)) return a;
  auto c = coeffs_in(*this, a, var);
  CoverElem acc = zero();
  for (size_t k = c.size(); k-- > 0;) acc = add(mul(acc, image), c[k]);
  return acc;
}

CoverElem CoverRing::apply_s(const CoverElem& a, const CoverElem& s_image) const {
  return substitute(a, "s", s_image);
}

CoverElem CoverRing::residue(const CoverElem& a) const {
  return canonical(lift(residue_mod_x(a.num)), a.alpha_pow);
}

UnitTest CoverRing::unit_test(const CoverElem& b) const {
  UnitTest out;
  for (const auto& v : b.num.used_vars())
    if (v != "t" && v != "s") throw PreconditionError("unit test needs an element of B");
  if (lndkit::x_order(b.num) != 0 && !b.num.is_zero())
    throw PreconditionError("unit test needs an x-free element");
  RPoly num = residue_mod_x(b.num).with_vars(kBase);
  out.norm = resultant(modulus_, num, "s").with_vars({"t"});
  if (out.norm.is_zero()) {
    out.non_unit_factor = RPoly({"t"});
    return out;
  }
  RPoly rest = out.norm;
  if (!alpha_.is_constant()) {
    for (;;) {
      RPoly g = uni_gcd(rest, alpha_);
      if (g.is_constant()) break;
      rest = divide_exact(rest, g);
    }
  }
  out.unit = rest.is_constant();
  if (out.unit) {
    out.non_unit_factor = RPoly::constant({"t"}, 1);
  } else {
    RPoly sq = squarefree_part(rest);
    auto c = sq.coeffs_in("t");
    out.non_unit_factor = sq * (Rational(1) / c.back().constant_term());
  }
  return out;
}

std::optional<CoverElem> CoverRing::inverse(const CoverElem& b) const {
  UnitTest ut = unit_test(b);
  if (!ut.unit) return std::nullopt;
  RPoly num = residue_mod_x(b.num).with_vars(kBase);
  const int d = degree_;
  // multiplication matrix over Q[t]: column j holds num * s^j reduced
  Matrix M(d, std::vector<RPoly>(d, RPoly({"t"})));
  RPoly col = num;
  RPoly s = RPoly::variable(kBase, "s");
  for (int j = 0; j < d; ++j) {
    RPoly red = reduce_monic(col, modulus_, "s");
    auto c = red.coeffs_in("s");
    for (int i = 0; i < d && i < static_cast<int>(c.size()); ++i) M[i][j] = c[i].with_vars({"t"});
    col = red * s;
  }
  // Faddeev-LeVerrier: adj(M) = (-1)^(d-1) M_d, det(M) = (-1)^d c_0
  Matrix Mk(d, std::vector<RPoly>(d, RPoly({"t"})));
  RPoly ck = RPoly::constant({"t"}, 1);
  for (int k = 1; k <= d; ++k) {
    Matrix prod = mat_mul(M, Mk);
    for (int i = 0; i < d; ++i) prod[i][i] += ck;
    Mk = prod;
    Matrix MMk = mat_mul(M, Mk);
    RPoly tr({"t"});
    for (int i = 0; i < d; ++i) tr += MMk[i][i];
    ck = tr * (Rational(-1) / k);
  }
  RPoly det = (d % 2 == 0) ? ck : -ck;
  if (det != ut.norm) throw InternalConsistencyError("norm and determinant disagree");
  // det = c alpha^j
  int j = 0;
  RPoly rest = det;
  if (!alpha_.is_constant()) {
    while (auto q = [&]() -> std::optional<RPoly> {
             auto [qq, r] = divide(rest, alpha_);
             if (r.is_zero()) return qq;
             return std::nullopt;
           }()) {
      rest = *q;
      ++j;
    }
  }
  if (!rest.is_constant()) throw InternalError("unit norm has a non-alpha factor");
  Rational c = rest.constant_term();
  Rational sign = (d % 2 == 1) ? 1 : -1;  // adj = (-1)^(d-1) M_d
  RPoly inv_num(kBase);
  for (int i = 0; i < d; ++i)
    inv_num += Mk[i][0].with_vars(kBase) * s.pow(i) * (sign / c);
  CoverElem inv = canonical(lift(inv_num) * alpha_lift_.pow(b.alpha_pow), j);
  if (mul(inv, residue(b)) != one()) throw InternalError("inverse check failed");
  return inv;
}

std::string CoverRing::to_string(const CoverElem& a) const {
  std::string s = format(a.num);
  if (a.alpha_pow == 0) return s;
  return "(" + s + ")/(" + format(alpha_) + ")^" + std::to_string(a.alpha_pow);
}

std::vector<CoverElem> coeffs_in(const CoverRing& R, const CoverElem& a, const std::string& var) {
  std::vector<CoverElem> out;
  if (!a.num.has_var(var)) return {a};
  for (const auto& c : a.num.coeffs_in(var)) out.push_back(R.make(c, a.alpha_pow));
  if (out.empty()) out.push_back(R.zero());
  return out;
}

CoverElem from_coeffs(const CoverRing& R, const std::vector<CoverElem>& c, const std::string& var) {
  CoverElem acc = R.zero();
  VarList v = CoverRing::kBase;
  v.push_back(var);
  CoverElem X = R.make(Poly::variable(v, var));
  for (size_t k = c.size(); k-- > 0;) acc = R.add(R.mul(acc, X), c[k]);
  return acc;
}

std::pair<CoverElem, CoverElem> divide_monic(const CoverRing& R, const CoverElem& f, const CoverElem& g,
                                             const std::string& var) {
  auto gc = coeffs_in(R, g, var);
  int dg = static_cast<int>(gc.size()) - 1;
  if (gc.back() != R.one()) throw PreconditionError("divisor not monic in " + var);
  auto fc = coeffs_in(R, f, var);
  std::vector<CoverElem> quo(std::max<int>(1, static_cast<int>(fc.size()) - dg), R.zero());
  for (int k = static_cast<int>(fc.size()) - 1; k >= dg; --k) {
    CoverElem lead = fc[k];
    if (R.is_zero(lead)) continue;
    quo[k - dg] = lead;
    for (int i = 0; i <= dg; ++i) fc[k - dg + i] = R.sub(fc[k - dg + i], R.mul(lead, gc[i]));
  }
  fc.resize(std::max(1, dg));
  return {from_coeffs(R, quo, var), from_coeffs(R, fc, var)};
}

}  // namespace lndkit
