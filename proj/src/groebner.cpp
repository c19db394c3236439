#include <algorithm>
#include <numeric>
#include <set>

#include "lndkit/ideal.hpp"

namespace lndkit {
namespace {

struct Term {
  Monomial m;
  Rational c;
};
using GPoly = std::vector<Term>;  // strictly descending in the active order

struct Order {
  MonomialOrder kind;
  int cmp(const Monomial& a, const Monomial& b) const {
    if (kind == MonomialOrder::Lex) {
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    }
    int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db ? 1 : -1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
};

bool divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Monomial quot(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// a - c * x^mono * b
GPoly sub_mul(const GPoly& a, const Rational& c, const Monomial& mono, const GPoly& b, const Order& ord) {
  GPoly out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  Monomial shifted(mono.size());
  auto shift = [&](const Monomial& m) {
    for (size_t k = 0; k < m.size(); ++k) shifted[k] = m[k] + mono[k];
  };
  if (j < b.size()) shift(b[j].m);
  while (i < a.size() || j < b.size()) {
    int c3 = (i < a.size() && j < b.size()) ? ord.cmp(a[i].m, shifted) : (i < a.size() ? 1 : -1);
    if (c3 > 0) {
      out.push_back(a[i++]);
    } else if (c3 < 0) {
      out.push_back({shifted, -c * b[j].c});
      if (++j < b.size()) shift(b[j].m);
    } else {
      Rational v = a[i].c - c * b[j].c;
      if (v != 0) out.push_back({a[i].m, v});
      ++i;
      if (++j < b.size()) shift(b[j].m);
    }
  }
  return out;
}

GPoly add(const GPoly& a, const GPoly& b, const Order& ord) {
  return sub_mul(a, Rational(-1), Monomial(a.empty() ? (b.empty() ? 0 : b[0].m.size()) : a[0].m.size(), 0), b, ord);
}

GPoly scale(const GPoly& a, const Rational& c) {
  GPoly out = a;
  for (auto& t : out) t.c *= c;
  return out;
}

GPoly to_g(const RPoly& p, const Order& ord) {
  GPoly out;
  for (const auto& [m, c] : p.terms()) out.push_back({m, c});
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
  return out;
}

RPoly from_g(const GPoly& g, const VarList& vars) {
  RPoly out(vars);
  for (const auto& t : g) out.add_term(t.m, t.c);
  return out;
}

struct Element {
  GPoly poly;
  std::vector<GPoly> rep;  // cofactors over the input generators (tracking only)
};

class Engine {
 public:
  Engine(const Order& ord, size_t ngens, size_t nvars, bool track)
      : ord_(ord), ngens_(ngens), nvars_(nvars), track_(track) {}

  // Full reduction of e by the basis; quotients accumulated into `quot_out` if given.
  Element reduce(Element e, const std::vector<Element>& basis, std::vector<GPoly>* quot_out = nullptr,
                 int skip = -1) const {
    GPoly rem;
    GPoly p = std::move(e.poly);
    while (!p.empty()) {
      const Term lt = p.front();
      int hit = -1;
      for (size_t i = 0; i < basis.size(); ++i) {
        if (static_cast<int>(i) == skip || basis[i].poly.empty()) continue;
        if (divides(basis[i].poly.front().m, lt.m)) {
          hit = static_cast<int>(i);
          break;
        }
      }
      if (hit < 0) {
        rem.push_back(lt);
        p.erase(p.begin());
        continue;
      }
      const GPoly& g = basis[hit].poly;
      Rational c = lt.c / g.front().c;
      Monomial mono = quot(lt.m, g.front().m);
      p = sub_mul(p, c, mono, g, ord_);
      if (track_)
        for (size_t j = 0; j < ngens_; ++j)
          if (!basis[hit].rep[j].empty()) e.rep[j] = sub_mul(e.rep[j], c, mono, basis[hit].rep[j], ord_);
      if (quot_out) (*quot_out)[hit] = add((*quot_out)[hit], GPoly{{mono, c}}, ord_);
    }
    e.poly = std::move(rem);
    return e;
  }

  void make_monic(Element& e) const {
    if (e.poly.empty()) return;
    Rational inv = Rational(1) / e.poly.front().c;
    e.poly = scale(e.poly, inv);
    if (track_)
      for (auto& r : e.rep) r = scale(r, inv);
  }

  std::vector<Element> run(std::vector<Element> basis) const {
    for (auto& e : basis) make_monic(e);
    std::vector<std::pair<int, int>> pending;
    std::set<std::pair<int, int>> pending_set;
    for (size_t j = 0; j < basis.size(); ++j)
      for (size_t i = 0; i < j; ++i) {
        pending.emplace_back(i, j);
        pending_set.emplace(i, j);
      }
    auto pair_lcm = [&](const std::pair<int, int>& pr) {
      return lcm(basis[pr.first].poly.front().m, basis[pr.second].poly.front().m);
    };
    while (!pending.empty()) {
      // normal selection strategy, ties broken by index
      size_t best = 0;
      Monomial best_l = pair_lcm(pending[0]);
      for (size_t k = 1; k < pending.size(); ++k) {
        Monomial l = pair_lcm(pending[k]);
        int c = ord_.cmp(l, best_l);
        if (c < 0 || (c == 0 && pending[k] < pending[best])) {
          best = k;
          best_l = std::move(l);
        }
      }
      auto [i, j] = pending[best];
      pending.erase(pending.begin() + best);
      pending_set.erase({i, j});
      const Monomial& li = basis[i].poly.front().m;
      const Monomial& lj = basis[j].poly.front().m;
      Monomial l = lcm(li, lj);
      bool coprime = true;
      for (size_t k = 0; k < nvars_; ++k)
        if (li[k] && lj[k]) coprime = false;
      if (coprime) continue;
      bool chain = false;
      for (size_t k = 0; k < basis.size() && !chain; ++k) {
        if (static_cast<int>(k) == i || static_cast<int>(k) == j) continue;
        if (!divides(basis[k].poly.front().m, l)) continue;
        auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        if (!pending_set.count(key(i, static_cast<int>(k))) && !pending_set.count(key(j, static_cast<int>(k))))
          chain = true;
      }
      if (chain) continue;
      Element s;
      Monomial mi = quot(l, li), mj = quot(l, lj);
      s.poly = sub_mul(sub_mul(GPoly{}, Rational(-1), mi, basis[i].poly, ord_), Rational(1), mj, basis[j].poly, ord_);
      if (track_) {
        s.rep.assign(ngens_, GPoly{});
        for (size_t g = 0; g < ngens_; ++g)
          s.rep[g] = sub_mul(sub_mul(GPoly{}, Rational(-1), mi, basis[i].rep[g], ord_), Rational(1), mj,
                             basis[j].rep[g], ord_);
      }
      s = reduce(std::move(s), basis);
      if (s.poly.empty()) continue;
      make_monic(s);
      int idx = static_cast<int>(basis.size());
      basis.push_back(std::move(s));
      for (int k = 0; k < idx; ++k) {
        pending.emplace_back(k, idx);
        pending_set.emplace(k, idx);
      }
    }
    // minimal basis
    std::vector<Element> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
      bool redundant = false;
      for (size_t j = 0; j < basis.size() && !redundant; ++j) {
        if (i == j) continue;
        const Monomial& a = basis[j].poly.front().m;
        const Monomial& b = basis[i].poly.front().m;
        if (divides(a, b) && (a != b || j < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis[i]);
    }
    // inter-reduce
    for (size_t i = 0; i < minimal.size(); ++i) {
      // only the tail needs reducing: the leading term is not divisible by other leading terms
      const Element& e = minimal[i];
      GPoly p(e.poly.begin() + 1, e.poly.end());
      Element acc = e;
      acc.poly = GPoly{e.poly.front()};
      while (!p.empty()) {
        const Term lt = p.front();
        int hit = -1;
        for (size_t k = 0; k < minimal.size(); ++k) {
          if (k == i) continue;
          if (divides(minimal[k].poly.front().m, lt.m)) {
            hit = static_cast<int>(k);
            break;
          }
        }
        if (hit < 0) {
          acc.poly.push_back(lt);
          p.erase(p.begin());
          continue;
        }
        Rational c = lt.c / minimal[hit].poly.front().c;
        Monomial mono = quot(lt.m, minimal[hit].poly.front().m);
        p = sub_mul(p, c, mono, minimal[hit].poly, ord_);
        if (track_)
          for (size_t g = 0; g < ngens_; ++g) acc.rep[g] = sub_mul(acc.rep[g], c, mono, minimal[hit].rep[g], ord_);
      }
      minimal[i] = std::move(acc);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Element& a, const Element& b) {
      return ord_.cmp(a.poly.front().m, b.poly.front().m) < 0;
    });
    return minimal;
  }

  const Order& order() const { return ord_; }

 private:
  Order ord_;
  size_t ngens_;
  size_t nvars_;
  bool track_;
};

VarList common_vars(const std::vector<RPoly>& gens, const RPoly* extra = nullptr) {
  VarList vars;
  for (const auto& g : gens) vars = RPoly::union_vars(vars, g.vars());
  if (extra) vars = RPoly::union_vars(vars, extra->vars());
  return vars;
}

}  // namespace

GroebnerBasis groebner(const std::vector<RPoly>& gens, MonomialOrder order) {
  VarList vars = common_vars(gens);
  Order ord{order};
  Engine eng(ord, 0, vars.size(), false);
  std::vector<Element> basis;
  for (const auto& g : gens)
    if (!g.is_zero()) basis.push_back({to_g(g.with_vars(vars), ord), {}});
  GroebnerBasis gb;
  gb.vars = vars;
  gb.order = order;
  for (const auto& e : eng.run(std::move(basis))) gb.generators.push_back(from_g(e.poly, vars));
  return gb;
}

bool unit_ideal(const std::vector<RPoly>& gens, MonomialOrder order) { return groebner(gens, order).is_unit(); }

RPoly normal_form(const RPoly& f, const GroebnerBasis& gb) {
  VarList vars = RPoly::union_vars(gb.vars, f.vars());
  Order ord{gb.order};
  Engine eng(ord, 0, vars.size(), false);
  std::vector<Element> basis;
  for (const auto& g : gb.generators) basis.push_back({to_g(g.with_vars(vars), ord), {}});
  return from_g(eng.reduce({to_g(f.with_vars(vars), ord), {}}, basis).poly, vars);
}

MembershipWitness<RPoly> member(const RPoly& f, const std::vector<RPoly>& gens, MonomialOrder order) {
  MembershipWitness<RPoly> w;
  w.target = f;
  w.generators = gens;
  VarList vars = common_vars(gens, &f);
  w.target = f.with_vars(vars);
  for (auto& g : w.generators) g = g.with_vars(vars);
  if (f.is_zero()) {
    w.member = true;
    w.cofactors.assign(gens.size(), RPoly(vars));
    return w;
  }
  Order ord{order};
  Engine eng(ord, gens.size(), vars.size(), true);
  std::vector<Element> basis;
  const Monomial one(vars.size(), 0);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    Element e{to_g(w.generators[i], ord), std::vector<GPoly>(gens.size())};
    e.rep[i] = GPoly{{one, Rational(1)}};
    basis.push_back(std::move(e));
  }
  basis = eng.run(std::move(basis));
  std::vector<GPoly> quots(basis.size());
  Element fe{to_g(w.target, ord), std::vector<GPoly>(gens.size())};
  Element r = eng.reduce(std::move(fe), basis, &quots);
  if (!r.poly.empty()) {
    w.refusal = "nonzero normal form " + std::to_string(r.poly.size()) + " terms";
    return w;
  }
  w.member = true;
  for (size_t j = 0; j < gens.size(); ++j) {
    RPoly c(vars);
    for (size_t i = 0; i < basis.size(); ++i)
      if (!quots[i].empty() && !basis[i].rep[j].empty()) c += from_g(quots[i], vars) * from_g(basis[i].rep[j], vars);
    w.cofactors.push_back(c);
  }
  if (!w.verify()) throw InternalConsistencyError("membership cofactors do not re-expand");
  return w;
}

}  // namespace lndkit
