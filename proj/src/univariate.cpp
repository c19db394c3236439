#include <algorithm>

#include "lndkit/ideal.hpp"

namespace lndkit {
namespace {

std::string single_var(const RPoly& f, const RPoly& g) {
  VarList used = RPoly::union_vars(f.used_vars(), g.used_vars());
  if (used.size() > 1) throw VariableError("expected univariate polynomials");
  if (!used.empty()) return used[0];
  if (!f.vars().empty()) return f.vars()[0];
  if (!g.vars().empty()) return g.vars()[0];
  return "y";
}

}  // namespace

RPoly uni_gcd(const RPoly& f, const RPoly& g) {
  std::string v = single_var(f, g);
  return from_upoly(UPoly::gcd(to_upoly(f, v), to_upoly(g, v)), v);
}

RPoly squarefree_part(const RPoly& f) {
  std::string v = single_var(f, f);
  return from_upoly(squarefree_part(to_upoly(f, v)), v);
}

bool uni_divides(const RPoly& d, const RPoly& f) {
  std::string v = single_var(d, f);
  UPoly dd = to_upoly(d, v);
  if (dd.is_zero()) return to_upoly(f, v).is_zero();
  return UPoly::divmod(to_upoly(f, v), dd).second.is_zero();
}

RPoly resultant(const RPoly& f, const RPoly& g, const std::string& var) {
  if (!f.has_var(var) && !g.has_var(var)) throw VariableError("resultant variable '" + var + "' absent");
  VarList all = RPoly::union_vars(f.vars(), g.vars());
  if (std::find(all.begin(), all.end(), var) == all.end()) all.push_back(var);
  VarList rest;
  for (const auto& v : all)
    if (v != var) rest.push_back(v);
  RPoly zero(rest);
  if (f.is_zero() || g.is_zero()) return zero;
  auto fc = f.with_vars(all).coeffs_in(var);
  auto gc = g.with_vars(all).coeffs_in(var);
  for (auto& c : fc) c = c.with_vars(rest);
  for (auto& c : gc) c = c.with_vars(rest);
  const int m = static_cast<int>(fc.size()) - 1, n = static_cast<int>(gc.size()) - 1;
  const int size = m + n;
  if (size == 0) return RPoly::constant(rest, 1);
  std::vector<std::vector<RPoly>> M(size, std::vector<RPoly>(size, zero));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[r][r + i] = fc[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[n + r][r + i] = gc[n - i];
  // fraction-free elimination
  int sign = 1;
  RPoly prev = RPoly::constant(rest, 1);
  for (int k = 0; k < size - 1; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < size; ++i)
        if (!M[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return zero;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j)
        M[i][j] = divide_exact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
      M[i][k] = zero;
    }
    prev = M[k][k];
  }
  RPoly det = M[size - 1][size - 1];
  return sign > 0 ? det : -det;
}

RPoly minimal_polynomial_mod(const RPoly& P, const RPoly& p, const std::string& y, const std::string& t) {
  UPoly pp = to_upoly(p, y), PP = to_upoly(P, y);
  if (pp.is_zero()) throw DegenerateError("minimal polynomial modulo the zero polynomial");
  const int d = pp.degree();
  if (d == 0) return RPoly::constant({t}, 1);
  // rows: reduced vectors with the combination of powers that produced them
  struct Row {
    std::vector<Rational> vec;
    std::vector<Rational> combo;
    int pivot;
  };
  std::vector<Row> rows;
  UPoly power(1);
  for (int k = 0; k <= d; ++k) {
    std::vector<Rational> v(d, Rational(0));
    for (int i = 0; i < d; ++i) v[i] = power.coeff(i);
    std::vector<Rational> combo(k + 1, Rational(0));
    combo[k] = 1;
    for (const auto& r : rows) {
      if (v[r.pivot] == 0) continue;
      Rational f = v[r.pivot] / r.vec[r.pivot];
      for (int i = 0; i < d; ++i) v[i] -= f * r.vec[i];
      for (size_t i = 0; i < r.combo.size(); ++i) combo[i] -= f * r.combo[i];
    }
    int pivot = -1;
    for (int i = 0; i < d; ++i)
      if (v[i] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return from_upoly(UPoly(combo).monic(), t);
    rows.push_back({v, combo, pivot});
    power = UPoly::divmod(power * PP, pp).second;
  }
  throw InternalError("minimal polynomial search exceeded the algebra dimension");
}

}  // namespace lndkit
