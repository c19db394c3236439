#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lndkit/base_elem.hpp"
#include "lndkit/errors.hpp"

namespace lndkit {

using Monomial = std::vector<int>;
using VarList = std::vector<std::string>;

// Graded lex: total degree first, then the first declared variable is most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Sparse polynomial over C in an ordered list of named variables.
template <class C>
class MPoly {
 public:
  using Coeff = C;
  using TermMap = std::map<Monomial, C, GrlexLess>;

  MPoly() = default;
  explicit MPoly(VarList vars) : vars_(std::move(vars)) { check_unique(); }

  static MPoly constant(VarList vars, const C& c) {
    MPoly p(std::move(vars));
    p.add_term(Monomial(p.vars_.size(), 0), c);
    return p;
  }
  static MPoly variable(VarList vars, const std::string& name, int power = 1) {
    MPoly p(std::move(vars));
    int i = p.index_of(name);
    if (i < 0) throw VariableError("unknown variable '" + name + "'");
    Monomial m(p.vars_.size(), 0);
    m[i] = power;
    p.add_term(m, C(1));
    return p;
  }
  static MPoly term(VarList vars, Monomial m, const C& c) {
    MPoly p(std::move(vars));
    if (m.size() != p.vars_.size()) throw VariableError("monomial arity mismatch");
    p.add_term(m, c);
    return p;
  }

  const VarList& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
  }
  C constant_term() const { return coeff(Monomial(vars_.size(), 0)); }
  C coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }
  int index_of(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }
  bool has_var(const std::string& name) const { return index_of(name) >= 0; }

  // Degree in one variable; -1 for the zero polynomial.
  int degree(const std::string& name) const {
    if (terms_.empty()) return -1;
    int i = index_of(name);
    if (i < 0) return 0;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
    return d;
  }
  int total_degree() const { return terms_.empty() ? -1 : total(terms_.rbegin()->first); }

  VarList used_vars() const {
    VarList out;
    for (size_t i = 0; i < vars_.size(); ++i)
      for (const auto& [m, c] : terms_)
        if (m[i] > 0) {
          out.push_back(vars_[i]);
          break;
        }
    return out;
  }

  // Re-embed into another variable list; every used variable must be present.
  MPoly with_vars(const VarList& target) const {
    if (target == vars_) return *this;
    std::vector<int> pos(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
      for (size_t j = 0; j < target.size(); ++j)
        if (target[j] == vars_[i]) pos[i] = static_cast<int>(j);
    }
    MPoly out(target);
    for (const auto& [m, c] : terms_) {
      Monomial nm(target.size(), 0);
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (pos[i] < 0) throw VariableError("variable '" + vars_[i] + "' not in target variable set");
        nm[pos[i]] = m[i];
      }
      out.terms_.emplace(std::move(nm), c);
    }
    return out;
  }

  void add_term(const Monomial& m, const C& c) {
    if (is_zero_coeff(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) {
      VarList u = union_vars(a.vars_, b.vars_);
      return a.with_vars(u) + b.with_vars(u);
    }
    MPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) {
      VarList u = union_vars(a.vars_, b.vars_);
      return a.with_vars(u) - b.with_vars(u);
    }
    MPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) {
      VarList u = union_vars(a.vars_, b.vars_);
      return a.with_vars(u) * b.with_vars(u);
    }
    MPoly r(a.vars_);
    Monomial m(a.vars_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend MPoly operator*(const C& s, const MPoly& a) {
    MPoly r(a.vars_);
    if (is_zero_coeff(s)) return r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const C& s) { return s * a; }
  MPoly& operator+=(const MPoly& b) {
    if (vars_ != b.vars_) return *this = *this + b;
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& b) {
    if (vars_ != b.vars_) return *this = *this - b;
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
  }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

  MPoly pow(unsigned e) const {
    MPoly result = constant(vars_, C(1)), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    VarList u = union_vars(a.vars_, b.vars_);
    return a.with_vars(u).terms_ == b.with_vars(u).terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  // Coefficients of powers of one variable; entry k multiplies name^k.
  std::vector<MPoly> coeffs_in(const std::string& name) const {
    int i = index_of(name);
    std::vector<MPoly> out;
    if (i < 0) {
      out.push_back(*this);
      return out;
    }
    out.assign(std::max(degree(name), 0) + 1, MPoly(vars_));
    for (const auto& [m, c] : terms_) {
      Monomial nm = m;
      nm[i] = 0;
      out[m[i]].add_term(nm, c);
    }
    return out;
  }

  template <class F>
  auto map_coeffs(F f) const -> MPoly<decltype(f(std::declval<C>()))> {
    MPoly<decltype(f(std::declval<C>()))> out(vars_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  static VarList union_vars(const VarList& a, const VarList& b) {
    VarList u = a;
    for (const auto& v : b)
      if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    return u;
  }

 private:
  static int total(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }
  static bool is_zero_coeff(const C& c) { return lndkit::is_zero(c); }
  void check_unique() const {
    for (size_t i = 0; i < vars_.size(); ++i)
      for (size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw VariableError("duplicate variable '" + vars_[i] + "'");
  }

  VarList vars_;
  TermMap terms_;
};

using Poly = MPoly<BaseElem>;
using RPoly = MPoly<Rational>;

}  // namespace lndkit
