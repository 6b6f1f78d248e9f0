#include "lgo/jacobian.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>

#include "lgo/error.hpp"

namespace lgo {

bool GrevlexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  for (int i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

namespace {

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return GrevlexLess()(b, a); }
};

// Working representation: leading term first.
using GPoly = std::map<Monomial, CycNum, GrevlexGreater>;

GPoly to_gpoly(const Polynomial& p, int n) {
  GPoly g;
  for (const auto& [m, c] : p.terms()) g.emplace(m, c.lift(n));
  return g;
}

Polynomial from_gpoly(const GPoly& g, int nvars, int n) {
  Polynomial p(nvars, n);
  for (const auto& [m, c] : g) p.add_term(m, c);
  return p;
}

// r -= c * m * g
void sub_mul(GPoly& r, const CycNum& c, const Monomial& m, const GPoly& g) {
  for (const auto& [gm, gc] : g) {
    const Monomial t = gm * m;
    const CycNum delta = gc * c;
    auto it = r.find(t);
    if (it == r.end()) {
      r.emplace(t, -delta);
    } else {
      it->second -= delta;
      if (it->second.is_zero()) r.erase(it);
    }
  }
}

void make_monic(GPoly& g) {
  const CycNum inv = g.begin()->second.inverse();
  if (inv.is_one()) return;
  for (auto& [m, c] : g) c *= inv;
}

// Full reduction of p by monic basis polynomials.
GPoly reduce(GPoly p, const std::vector<GPoly>& basis, const std::vector<Monomial>& leading,
             std::size_t skip = static_cast<std::size_t>(-1)) {
  GPoly rem;
  while (!p.empty()) {
    auto it = p.begin();
    const Monomial m = it->first;
    std::size_t k = 0;
    for (; k < basis.size(); ++k) {
      if (k != skip && leading[k].divides(m)) break;
    }
    if (k == basis.size()) {
      rem.emplace(m, std::move(it->second));
      p.erase(it);
      continue;
    }
    const CycNum c = it->second;
    sub_mul(p, c, m / leading[k], basis[k]);
  }
  return rem;
}

}  // namespace

bool GroebnerBasis::is_standard(const Monomial& m) const {
  for (const auto& l : leading_) {
    if (l.divides(m)) return false;
  }
  return true;
}

Monomial leading_monomial(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kInternal, "leading monomial of zero");
  Monomial best = p.terms().begin()->first;
  for (const auto& [m, c] : p.terms()) {
    if (GrevlexLess()(best, m)) best = m;
  }
  return best;
}

GroebnerBasis groebner(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw Error(ErrorCode::kPreconditionFailed, "groebner basis of an empty generator list");
  const int nvars = gens.front().nvars();
  int n = 1;
  for (const auto& g : gens) {
    if (g.nvars() != nvars) throw Error(ErrorCode::kDimensionMismatch, "generators in different rings");
    n = static_cast<int>(lcm_long(n, g.conductor()));
  }

  std::vector<GPoly> basis;
  std::vector<Monomial> leading;
  std::set<std::pair<int, int>> pending;
  auto add = [&](GPoly g) {
    make_monic(g);
    const int idx = static_cast<int>(basis.size());
    leading.push_back(g.begin()->first);
    basis.push_back(std::move(g));
    for (int k = 0; k < idx; ++k) pending.emplace(k, idx);
  };
  for (const auto& g : gens) {
    if (!g.is_zero()) add(to_gpoly(g, n));
  }

  while (!pending.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto best = pending.begin();
    Monomial best_lcm = leading[best->first].lcm(leading[best->second]);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = leading[it->first].lcm(leading[it->second]);
      if (GrevlexLess()(l, best_lcm)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);
    if (leading[i].coprime(leading[j])) continue;
    bool chain = false;
    for (int k = 0; k < static_cast<int>(basis.size()) && !chain; ++k) {
      if (k == i || k == j || !leading[k].divides(best_lcm)) continue;
      const bool ik = pending.count({std::min(i, k), std::max(i, k)}) > 0;
      const bool jk = pending.count({std::min(j, k), std::max(j, k)}) > 0;
      chain = !ik && !jk;
    }
    if (chain) continue;

    GPoly s;
    sub_mul(s, CycNum::one(n), best_lcm / leading[i], basis[i]);
    for (auto& [m, c] : s) c = -c;
    sub_mul(s, CycNum::one(n), best_lcm / leading[j], basis[j]);
    GPoly r = reduce(std::move(s), basis, leading);
    if (!r.empty()) add(std::move(r));
  }

  // Minimalize, then inter-reduce.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size() && keep[a]; ++b) {
      if (a == b || !keep[b]) continue;
      if (leading[b].divides(leading[a]) && (leading[a] != leading[b] || b < a)) keep[a] = false;
    }
  }
  std::vector<GPoly> minimal;
  std::vector<Monomial> minimal_leading;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (!keep[a]) continue;
    minimal.push_back(basis[a]);
    minimal_leading.push_back(leading[a]);
  }
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    GPoly tail = minimal[a];
    tail.erase(tail.begin());
    GPoly reduced = reduce(std::move(tail), minimal, minimal_leading, a);
    reduced.emplace(minimal_leading[a], CycNum::one(n));
    minimal[a] = std::move(reduced);
  }

  // Deterministic order: ascending leading monomial.
  std::vector<std::size_t> order(minimal.size());
  for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return GrevlexLess()(minimal_leading[x], minimal_leading[y]);
  });
  GroebnerBasis gb;
  gb.nvars_ = nvars;
  for (std::size_t a : order) {
    gb.generators_.push_back(from_gpoly(minimal[a], nvars, n));
    gb.leading_.push_back(minimal_leading[a]);
  }
  return gb;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  if (p.is_zero()) return p;
  if (p.nvars() != gb.nvars()) throw Error(ErrorCode::kDimensionMismatch, "normal form in a different ring");
  int n = p.conductor();
  for (const auto& g : gb.generators()) n = static_cast<int>(lcm_long(n, g.conductor()));
  std::vector<GPoly> basis;
  for (const auto& g : gb.generators()) basis.push_back(to_gpoly(g, n));
  return from_gpoly(reduce(to_gpoly(p, n), basis, gb.leading_monomials()), p.nvars(), n);
}

GradedDimensions JacobianRing::graded_dimensions() const {
  GradedDimensions dims;
  for (const auto& d : degrees) ++dims[d];
  return dims;
}

std::vector<std::pair<int, CycNum>> JacobianRing::sparse_coordinates(const Polynomial& p, int conductor) const {
  std::vector<std::pair<int, CycNum>> out;
  const Polynomial nf = normal_form(p, gb);
  for (const auto& [m, c] : nf.terms()) {
    auto it = index.find(m);
    if (it == index.end()) {
      throw Error(ErrorCode::kInternal, "normal form left the non-standard monomial " +
                                            m.to_string(default_variable_names(m.nvars())));
    }
    out.emplace_back(it->second, c.lift(conductor));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<CycNum> JacobianRing::coordinates(const Polynomial& p, int conductor) const {
  std::vector<CycNum> out(basis.size(), CycNum::zero(conductor));
  for (auto& [i, c] : sparse_coordinates(p, conductor)) out[i] = std::move(c);
  return out;
}

JacobianRing quotient_ring(const Polynomial& f, const WeightSystem& w) {
  const int nv = f.nvars();
  if (w.nvars() != nv) throw Error(ErrorCode::kDimensionMismatch, "weights and polynomial sizes differ");
  JacobianRing ring;
  ring.f = f;
  ring.weights = w;
  ring.c_hat = 0;
  for (const auto& q : w.q) ring.c_hat += 1 - 2 * q;

  if (nv == 0) {
    ring.basis = {Monomial::one(0)};
    ring.degrees = {Rational(0)};
    ring.index.emplace(Monomial::one(0), 0);
    ring.hess_class = Polynomial::constant(0, CycNum::one(f.conductor()));
    ring.hess_coefficient = CycNum::one(f.conductor());
    return ring;
  }

  std::vector<Polynomial> partials;
  for (int i = 0; i < nv; ++i) partials.push_back(partial_derivative(f, i));
  bool all_zero = std::all_of(partials.begin(), partials.end(), [](const Polynomial& p) { return p.is_zero(); });
  if (all_zero) throw Error(ErrorCode::kNotIsolated, "f has no non-zero partial derivative");
  ring.gb = groebner(partials);

  std::vector<int> bound(nv, -1);
  for (const auto& l : ring.gb.leading_monomials()) {
    if (l.support_size() != 1) continue;
    for (int i = 0; i < nv; ++i) {
      if (l[i] > 0 && (bound[i] < 0 || l[i] < bound[i])) bound[i] = l[i];
    }
  }
  for (int i = 0; i < nv; ++i) {
    if (bound[i] < 0) {
      throw Error(ErrorCode::kNotIsolated, "Jacobian ideal has no pure power of x" + std::to_string(i + 1) +
                                               "; the critical locus of f is not isolated");
    }
  }

  // Standard monomials: exponents below the pure-power bounds, pruned by divisibility.
  std::vector<int> e(nv, 0);
  std::vector<Monomial> found;
  std::function<void(int)> dfs = [&](int k) {
    if (k == nv) {
      Monomial m(e);
      if (ring.gb.is_standard(m)) found.push_back(std::move(m));
      return;
    }
    for (e[k] = 0; e[k] < bound[k]; ++e[k]) {
      std::vector<int> prefix(e.begin(), e.end());
      for (int t = k + 1; t < nv; ++t) prefix[t] = 0;
      if (!ring.gb.is_standard(Monomial(prefix))) break;
      dfs(k + 1);
    }
    e[k] = 0;
  };
  dfs(0);

  std::vector<std::pair<Rational, Monomial>> keyed;
  for (auto& m : found) keyed.emplace_back(weighted_degree(m, w), std::move(m));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return GradedLexLess()(a.second, b.second);
  });
  for (auto& [d, m] : keyed) {
    ring.index.emplace(m, static_cast<int>(ring.basis.size()));
    ring.degrees.push_back(d);
    ring.basis.push_back(std::move(m));
  }

  const int top_count = static_cast<int>(std::count(ring.degrees.begin(), ring.degrees.end(), ring.c_hat));
  if (top_count != 1 || ring.degrees.back() != ring.c_hat) {
    throw Error(ErrorCode::kInternal, "Jacobian ring top degree is not one-dimensional at c_hat = " +
                                          to_string(ring.c_hat));
  }
  ring.top_index = ring.mu() - 1;
  ring.hess_class = normal_form(hessian(f), ring.gb);
  const Monomial& top = ring.basis[ring.top_index];
  if (ring.hess_class.size() != 1 || ring.hess_class.terms().begin()->first != top) {
    throw Error(ErrorCode::kInternal, "hess(f) does not reduce to a multiple of the top monomial");
  }
  ring.hess_coefficient = ring.hess_class.terms().begin()->second;
  return ring;
}

std::shared_ptr<const JacobianRing> cached_quotient_ring(const Polynomial& f, const WeightSystem& w) {
  static std::mutex mu;
  static std::unordered_map<std::string, std::shared_ptr<const JacobianRing>> cache;
  std::string key = std::to_string(f.nvars()) + "|" + std::to_string(f.conductor()) + "|" + f.to_string();
  for (const auto& q : w.q) key += "|" + to_string(q);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto ring = std::make_shared<const JacobianRing>(quotient_ring(f, w));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(ring)).first->second;
}

GradedDimensions poincare_oracle(const WeightSystem& w) {
  const long den = common_denominator(w.q);
  std::vector<long> d;
  for (const auto& q : w.q) d.push_back(to_long(Rational(q * den).get_num()));

  std::vector<Integer> p{1};
  auto multiply_binomial = [&p](long a) {  // p *= (t^a - 1)
    std::vector<Integer> r(p.size() + a, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[i + a] += p[i];
      r[i] -= p[i];
    }
    p = std::move(r);
  };
  auto divide_binomial = [&p](long a) {  // p /= (t^a - 1), exactly
    if (static_cast<long>(p.size()) <= a) throw Error(ErrorCode::kInternal, "Poincare division not exact");
    std::vector<Integer> q(p.size() - a, 0);
    for (std::size_t k = 0; k < q.size(); ++k) {
      q[k] = -p[k];
      if (static_cast<long>(k) >= a) q[k] += q[k - a];
    }
    for (std::size_t k = q.size(); k < p.size(); ++k) {
      Integer check = k >= static_cast<std::size_t>(a) && k - a < q.size() ? q[k - a] : Integer(0);
      if (check != p[k]) throw Error(ErrorCode::kInternal, "Poincare division not exact");
    }
    p = std::move(q);
  };
  for (long dk : d) multiply_binomial(den - dk);
  for (long dk : d) divide_binomial(dk);

  GradedDimensions out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    Rational degree(static_cast<long>(k), den);
    degree.canonicalize();
    out[degree] = to_long(p[k]);
  }
  return out;
}

CycNum residue_pairing(const Polynomial& u, const Polynomial& v, const JacobianRing& ring) {
  const Polynomial nf = normal_form(u * v, ring.gb);
  const Monomial& top = ring.basis[ring.top_index];
  const int n = static_cast<int>(lcm_long(nf.conductor(), ring.hess_coefficient.conductor()));
  return nf.coefficient(top).lift(n) / ring.hess_coefficient.lift(n);
}

}  // namespace lgo
