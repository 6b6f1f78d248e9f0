#include "lgo/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "lgo/error.hpp"
#include "lgo/smith.hpp"

namespace lgo {

namespace {

std::string phase_list(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace

GroupElement::GroupElement(std::vector<int> sigma, std::vector<Rational> phase)
    : sigma_(std::move(sigma)), phase_(std::move(phase)) {
  if (sigma_.size() != phase_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation and phase vector lengths differ");
  }
  std::vector<bool> hit(sigma_.size(), false);
  for (int s : sigma_) {
    if (s < 0 || s >= nvars() || hit[s]) throw Error(ErrorCode::kInternal, "sigma is not a permutation");
    hit[s] = true;
  }
  for (auto& a : phase_) a = frac(a);
}

GroupElement GroupElement::identity(int nvars) {
  std::vector<int> s(nvars);
  for (int i = 0; i < nvars; ++i) s[i] = i;
  return GroupElement(std::move(s), std::vector<Rational>(nvars, Rational(0)));
}

GroupElement GroupElement::diagonal(std::vector<Rational> phase) {
  std::vector<int> s(phase.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<int>(i);
  return GroupElement(std::move(s), std::move(phase));
}

GroupElement GroupElement::permutation(int nvars, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> s(nvars);
  for (int i = 0; i < nvars; ++i) s[i] = i;
  std::vector<bool> used(nvars, false);
  for (const auto& c : cycles) {
    for (int v : c) {
      if (v < 0 || v >= nvars) {
        throw Error(ErrorCode::kArityMismatch, "cycle entry " + std::to_string(v + 1) + " is out of range");
      }
      if (used[v]) throw Error(ErrorCode::kSyntaxError, "index " + std::to_string(v + 1) + " repeated in cycles");
      used[v] = true;
    }
    for (std::size_t t = 0; t < c.size(); ++t) s[c[t]] = c[(t + 1) % c.size()];
  }
  return GroupElement(std::move(s), std::vector<Rational>(nvars, Rational(0)));
}

bool GroupElement::is_identity() const {
  return is_diagonal() && std::all_of(phase_.begin(), phase_.end(), [](const Rational& a) { return sgn(a) == 0; });
}

bool GroupElement::is_diagonal() const {
  for (int i = 0; i < nvars(); ++i) {
    if (sigma_[i] != i) return false;
  }
  return true;
}

int GroupElement::permutation_sign() const {
  int sign = 1;
  for (const auto& c : cycles()) {
    if (c.vertices.size() % 2 == 0) sign = -sign;
  }
  return sign;
}

GroupElement GroupElement::compose(const GroupElement& o) const {
  if (o.nvars() != nvars()) throw Error(ErrorCode::kDimensionMismatch, "composing elements of different size");
  std::vector<int> s(nvars());
  std::vector<Rational> a(nvars());
  for (int i = 0; i < nvars(); ++i) {
    s[i] = o.sigma_[sigma_[i]];
    a[i] = phase_[i] + o.phase_[sigma_[i]];
  }
  return GroupElement(std::move(s), std::move(a));
}

GroupElement GroupElement::inverse() const {
  std::vector<int> s(nvars());
  std::vector<Rational> a(nvars());
  for (int i = 0; i < nvars(); ++i) {
    s[sigma_[i]] = i;
    a[sigma_[i]] = -phase_[i];
  }
  return GroupElement(std::move(s), std::move(a));
}

GroupElement GroupElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  GroupElement result = identity(nvars());
  GroupElement base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

long GroupElement::order() const {
  long o = 1;
  for (const auto& b : eigenphases()) o = lcm_long(o, denominator_of(b));
  return o;
}

std::vector<PermutationCycle> GroupElement::cycles() const {
  std::vector<PermutationCycle> out;
  std::vector<bool> seen(nvars(), false);
  for (int i = 0; i < nvars(); ++i) {
    if (seen[i]) continue;
    PermutationCycle c;
    Rational total = 0;
    for (int v = i; !seen[v]; v = sigma_[v]) {
      seen[v] = true;
      c.vertices.push_back(v);
      total += phase_[v];
    }
    c.total_phase = frac(total);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

std::vector<Rational> cycle_eigenphases(const PermutationCycle& c) {
  const long k = static_cast<long>(c.vertices.size());
  std::vector<Rational> out;
  for (long m = 0; m < k; ++m) out.push_back(frac((c.total_phase + m) / Rational(k)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Rational> GroupElement::eigenphases() const {
  std::vector<Rational> out;
  for (const auto& c : cycles()) {
    auto e = cycle_eigenphases(c);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

long GroupElement::conductor() const {
  long n = common_denominator(phase_);
  for (const auto& b : eigenphases()) n = lcm_long(n, denominator_of(b));
  return n;
}

CycMatrix GroupElement::matrix(int conductor) const {
  CycMatrix m(nvars(), nvars(), conductor);
  for (int i = 0; i < nvars(); ++i) m(i, sigma_[i]) = CycNum::root_of_unity(conductor, phase_[i]);
  return m;
}

std::string GroupElement::to_string() const {
  std::string perm;
  for (const auto& c : cycles()) {
    if (c.vertices.size() < 2) continue;
    perm += "(";
    for (std::size_t t = 0; t < c.vertices.size(); ++t) {
      if (t) perm += " ";
      perm += std::to_string(c.vertices[t] + 1);
    }
    perm += ")";
  }
  const bool trivial_phase =
      std::all_of(phase_.begin(), phase_.end(), [](const Rational& a) { return sgn(a) == 0; });
  if (perm.empty()) return "diag(" + phase_list(phase_) + ")";
  if (trivial_phase) return "perm" + perm;
  return "diag(" + phase_list(phase_) + ")*perm" + perm;
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  std::size_t h = 0;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int s : g.sigma()) mix(static_cast<std::size_t>(s));
  for (const auto& a : g.phase()) {
    mix(mpz_get_ui(a.get_num_mpz_t()));
    mix(mpz_get_ui(a.get_den_mpz_t()));
  }
  return h;
}

GroupElement conjugate(const GroupElement& h, const GroupElement& g) { return h * g * h.inverse(); }

bool is_symmetry(const Polynomial& f, const GroupElement& g) {
  if (f.nvars() != g.nvars()) return false;
  const int n = static_cast<int>(lcm_long(f.conductor(), common_denominator(g.phase())));
  // f(Mx) = sum c_a e[a . alpha] x^b with b[sigma(i)] = a[i].
  for (const auto& [m, c] : f.terms()) {
    std::vector<int> b(m.nvars());
    Rational phase = 0;
    for (int i = 0; i < m.nvars(); ++i) {
      b[g.sigma()[i]] = m[i];
      phase += g.phase()[i] * m[i];
    }
    const CycNum image = c.lift(n) * CycNum::root_of_unity(n, frac(phase));
    if (image != f.coefficient(Monomial(b)).lift(n)) return false;
  }
  return true;
}

CycNum determinant(const GroupElement& g, int conductor) {
  Rational total = 0;
  for (const auto& a : g.phase()) total += a;
  CycNum d = CycNum::root_of_unity(conductor, frac(total));
  if (g.permutation_sign() < 0) d = -d;
  return d;
}

bool is_sl(const GroupElement& g) {
  Rational total = 0;
  for (const auto& a : g.phase()) total += a;
  total = frac(total);
  return g.permutation_sign() > 0 ? sgn(total) == 0 : total == Rational(1, 2);
}

Rational age(const GroupElement& g) {
  Rational s = 0;
  for (const auto& b : g.eigenphases()) s += b;
  return s;
}

Rational age_via_matrix(const std::vector<Rational>& gbar, const ExponentMatrix& e) {
  if (static_cast<int>(gbar.size()) != e.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "phase vector length differs from the exponent matrix size");
  }
  std::vector<Rational> reduced;
  for (const auto& a : gbar) reduced.push_back(frac(a));
  const RationalMatrix em = e.as_rational();
  const std::vector<Rational> s = multiply(em, reduced);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_integer(s[i])) {
      throw Error(ErrorCode::kNotInGraphGroup, "(" + phase_list(gbar) + ") gives non-integral E*g at row " +
                                                   std::to_string(i + 1) + ": " + to_string(s[i]));
    }
  }
  Rational total = 0;
  for (const auto& x : multiply(inverse(em), s)) total += x;
  return total;
}

std::vector<std::vector<Rational>> DiagonalGroup::elements() const {
  std::vector<std::vector<Rational>> out;
  std::vector<long> c(generators.size(), 0);
  while (true) {
    std::vector<Rational> v(nvars, Rational(0));
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (int k = 0; k < nvars; ++k) v[k] += generators[i][k] * c[i];
    }
    for (auto& x : v) x = frac(x);
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == invariant_factors[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

bool DiagonalGroup::contains(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != nvars) return false;
  for (const auto& row : relations) {
    Rational s = 0;
    for (int k = 0; k < nvars; ++k) s += v[k] * row[k];
    if (!is_integer(s)) return false;
  }
  return true;
}

DiagonalGroup diagonal_group_from_relations(int nvars, const std::vector<std::vector<long>>& rows) {
  DiagonalGroup g;
  g.nvars = nvars;
  g.relations = rows;
  IntegerMatrix a;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != nvars) throw Error(ErrorCode::kDimensionMismatch, "relation row length");
    std::vector<Integer> r;
    for (long x : row) r.emplace_back(x);
    a.push_back(std::move(r));
  }
  if (static_cast<int>(a.size()) < nvars) {
    throw Error(ErrorCode::kSingularMatrix, "relations do not cut out a finite diagonal group");
  }
  const SmithNormalForm snf = smith_normal_form(a);
  for (int i = 0; i < nvars; ++i) {
    const Integer& s = snf.diagonal[i];
    if (s == 0) throw Error(ErrorCode::kSingularMatrix, "relations do not cut out a finite diagonal group");
    if (s == 1) continue;
    std::vector<Rational> gen(nvars);
    for (int k = 0; k < nvars; ++k) gen[k] = frac(Rational(snf.v[k][i], s));
    g.generators.push_back(std::move(gen));
    g.invariant_factors.push_back(to_long(s));
    g.order *= to_long(s);
  }
  return g;
}

DiagonalGroup diagonal_symmetries(const Polynomial& f) {
  std::vector<std::vector<long>> rows;
  for (const auto& [m, c] : f.terms()) rows.emplace_back(m.exponents().begin(), m.exponents().end());
  return diagonal_group_from_relations(f.nvars(), rows);
}

DiagonalGroup graph_group(const ExponentMatrix& e) { return diagonal_group_from_relations(e.size(), e.entries); }

DiagonalGroup diagonal_sl_symmetries(const Polynomial& f) {
  std::vector<std::vector<long>> rows;
  for (const auto& [m, c] : f.terms()) rows.emplace_back(m.exponents().begin(), m.exponents().end());
  rows.emplace_back(f.nvars(), 1L);
  return diagonal_group_from_relations(f.nvars(), rows);
}

std::vector<std::vector<Rational>> krawitz_generators(const ExponentMatrix& e) {
  const RationalMatrix inv = inverse(e.as_rational());
  std::vector<std::vector<Rational>> out(e.size());
  for (int i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e.size(); ++k) out[i].push_back(frac(inv[k][i]));
  }
  return out;
}

GroupElement make_jf(const WeightSystem& w) { return GroupElement::diagonal(w.q); }

int FiniteGroup::index_of(const GroupElement& g) const {
  auto it = index_.find(g);
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::product_index(int a, int b) const { return index_of(elements_[a] * elements_[b]); }

int FiniteGroup::conjugate_index(int h, int g) const {
  return index_of(conjugate(elements_[h], elements_[g]));
}

FiniteGroup generate_group(const std::vector<GroupElement>& generators, const Polynomial& f, const WeightSystem& w,
                           const GroupOptions& options) {
  const int nv = f.nvars();
  for (const auto& g : generators) {
    if (g.nvars() != nv) {
      throw Error(ErrorCode::kArityMismatch, "generator " + g.to_string() + " acts on " +
                                                 std::to_string(g.nvars()) + " variables, f has " +
                                                 std::to_string(nv));
    }
    for (int i = 0; i < nv; ++i) {
      if (w.q[i] != w.q[g.sigma()[i]]) {
        throw Error(ErrorCode::kNotASymmetry,
                    "generator " + g.to_string() + " permutes x" + std::to_string(i + 1) + " and x" +
                        std::to_string(g.sigma()[i] + 1) +
                        " of different weight; a symmetry necessarily preserves the weights of the variables");
      }
    }
    if (!is_symmetry(f, g)) {
      throw Error(ErrorCode::kNotASymmetry, "generator " + g.to_string() + " does not preserve f");
    }
    if (options.require_sl && !is_sl(g)) {
      throw Error(ErrorCode::kNotInSL, "generator " + g.to_string() + " has determinant " +
                                           determinant(g, static_cast<int>(g.conductor() * 2)).to_string());
    }
  }

  FiniteGroup G;
  G.generators_ = generators;
  auto add = [&G, &options](const GroupElement& g) {
    if (G.index_.count(g)) return false;
    if (static_cast<long>(G.elements_.size()) >= options.cap) {
      throw Error(ErrorCode::kClosureCapExceeded,
                  "group closure exceeds " + std::to_string(options.cap) + " elements");
    }
    G.index_.emplace(g, static_cast<int>(G.elements_.size()));
    G.elements_.push_back(g);
    return true;
  };
  add(GroupElement::identity(nv));
  for (std::size_t k = 0; k < G.elements_.size(); ++k) {
    for (const auto& s : generators) {
      add(G.elements_[k] * s);
    }
  }

  const int order = static_cast<int>(G.elements_.size());
  G.inverse_.resize(order);
  for (int i = 0; i < order; ++i) {
    G.inverse_[i] = G.index_of(G.elements_[i].inverse());
    if (G.inverse_[i] < 0) throw Error(ErrorCode::kInternal, "closure is missing an inverse");
    G.conductor_ = lcm_long(G.conductor_, G.elements_[i].conductor());
  }

  G.class_of_.assign(order, -1);
  for (int i = 0; i < order; ++i) {
    if (G.class_of_[i] >= 0) continue;
    const int id = static_cast<int>(G.classes_.size());
    std::vector<int> cls{i};
    G.class_of_[i] = id;
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (const auto& s : generators) {
        const int c = G.index_of(conjugate(s, G.elements_[cls[k]]));
        if (G.class_of_[c] < 0) {
          G.class_of_[c] = id;
          cls.push_back(c);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    G.classes_.push_back(std::move(cls));
  }

  if (options.require_sl) {
    for (const auto& g : G.elements_) {
      if (!is_sl(g)) throw Error(ErrorCode::kNotInSL, "element " + g.to_string() + " is not in SL");
    }
  }
  if (options.require_j && !G.contains(make_jf(w))) {
    throw Error(ErrorCode::kMissingJ, "the group does not contain j_f = " + make_jf(w).to_string());
  }
  return G;
}

FixedLocus fixed_locus(const GroupElement& g, const WeightSystem& w, int conductor) {
  if (conductor % g.conductor() != 0) {
    throw Error(ErrorCode::kConductorMismatch, "conductor " + std::to_string(conductor) +
                                                   " does not contain the eigen-data of " + g.to_string());
  }
  const int nv = g.nvars();
  FixedLocus fl;
  fl.g = g;
  fl.conductor = conductor;

  std::vector<std::vector<CycNum>> fixed_cols, moved_cols;
  for (const auto& c : g.cycles()) {
    const long k = static_cast<long>(c.vertices.size());
    for (const auto& beta : cycle_eigenphases(c)) {
      std::vector<CycNum> col(nv, CycNum::zero(conductor));
      Rational partial = 0;
      for (long t = 0; t < k; ++t) {
        const int v = c.vertices[t];
        col[v] = CycNum::root_of_unity(conductor, frac(beta * t - partial));
        partial += g.phase()[v];
      }
      if (sgn(beta) == 0) {
        fixed_cols.push_back(std::move(col));
        fl.fixed_rows.push_back(c.vertices[0]);
        fl.fixed_weights.push_back(w.q[c.vertices[0]]);
      } else {
        moved_cols.push_back(std::move(col));
        fl.complement_phases.push_back(beta);
      }
    }
  }
  auto assemble = [&](const std::vector<std::vector<CycNum>>& cols) {
    CycMatrix m(nv, static_cast<int>(cols.size()), conductor);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < nv; ++i) m(i, static_cast<int>(j)) = cols[j][i];
    return m;
  };
  fl.basis = assemble(fixed_cols);
  fl.complement = assemble(moved_cols);
  return fl;
}

Polynomial restrict(const Polynomial& f, const FixedLocus& fl) {
  if (fl.n_fixed() == 0) return Polynomial(0, fl.conductor);
  return substitute_linear(f.lift(static_cast<int>(lcm_long(f.conductor(), fl.conductor))), fl.basis);
}

CycNum rho_constant(const GroupElement& h, const FixedLocus& source, const FixedLocus& target) {
  if (source.codim() != target.codim()) {
    throw Error(ErrorCode::kInternal, "conjugate elements with different fixed-locus dimension");
  }
  const int n = static_cast<int>(lcm_long(source.conductor, target.conductor));
  if (source.codim() == 0) return CycNum::one(n);
  const CycMatrix image = h.matrix(n) * source.complement.lift(n);
  auto c = solve(target.complement.lift(n), image);
  if (!c) throw Error(ErrorCode::kInternal, "h does not map the moved eigenspaces onto each other");
  return determinant(*c);
}

CycNum rho_constant(const GroupElement& h, const GroupElement& g, const WeightSystem& w, int conductor) {
  const GroupElement target = conjugate(h, g);
  return rho_constant(h, fixed_locus(g, w, conductor), fixed_locus(target, w, conductor));
}

}  // namespace lgo
