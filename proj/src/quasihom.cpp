#include "lgo/quasihom.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lgo/error.hpp"

namespace lgo {

bool SingularityGraph::on_cycle(int v) const {
  for (const auto& comp : components) {
    if (std::find(comp.cycle.begin(), comp.cycle.end(), v) != comp.cycle.end()) return true;
  }
  return false;
}

std::vector<int> SingularityGraph::predecessors(int v) const {
  std::vector<int> out;
  for (int j = 0; j < nvars; ++j) {
    if (j != v && kappa[j] == v) out.push_back(j);
  }
  return out;
}

std::vector<GraphCandidate> graph_candidates(const Polynomial& f, int j) {
  std::vector<GraphCandidate> pure, mixed;
  for (const auto& [m, c] : f.terms()) {
    const int a = m[j];
    if (a < 2) continue;
    if (m.support_size() == 1) {
      pure.push_back({j, a, m});
    } else if (m.support_size() == 2 && m.total_degree() == a + 1) {
      for (int k = 0; k < m.nvars(); ++k) {
        if (k != j && m[k] == 1) mixed.push_back({k, a, m});
      }
    }
  }
  auto by_exponent_then_target = [](const GraphCandidate& x, const GraphCandidate& y) {
    return std::tie(x.exponent, x.target) < std::tie(y.exponent, y.target);
  };
  std::sort(pure.begin(), pure.end(), by_exponent_then_target);
  std::sort(mixed.begin(), mixed.end(), by_exponent_then_target);
  pure.insert(pure.end(), mixed.begin(), mixed.end());
  return pure;
}

SingularityGraph build_graph(const Polynomial& f, const std::vector<int>& candidate_choice) {
  SingularityGraph g;
  g.nvars = f.nvars();
  g.kappa.resize(g.nvars);
  for (int j = 0; j < g.nvars; ++j) {
    auto cands = graph_candidates(f, j);
    if (cands.empty()) {
      throw Error(ErrorCode::kNoGraphMonomial,
                  "variable x" + std::to_string(j + 1) +
                      " heads no monomial x^a or x^a*y with a >= 2; f cannot define an isolated singularity");
    }
    std::size_t pick = 0;
    if (j < static_cast<int>(candidate_choice.size())) {
      pick = static_cast<std::size_t>(candidate_choice[j]);
      if (pick >= cands.size()) throw Error(ErrorCode::kInternal, "graph candidate index out of range");
    }
    g.kappa[j] = cands[pick].target;
    g.graph_monomials.push_back(cands[pick].monomial);
  }

  // Weakly connected components by union-find over the arrows.
  std::vector<int> parent(g.nvars);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int j = 0; j < g.nvars; ++j) parent[find(j)] = find(g.kappa[j]);
  std::vector<int> seen_root;
  for (int j = 0; j < g.nvars; ++j) {
    const int r = find(j);
    auto it = std::find(seen_root.begin(), seen_root.end(), r);
    if (it == seen_root.end()) {
      seen_root.push_back(r);
      g.components.push_back({});
      it = seen_root.end() - 1;
    }
    g.components[it - seen_root.begin()].vertices.push_back(j);
  }
  for (auto& comp : g.components) {
    std::vector<int> order;
    int v = comp.vertices.front();
    while (std::find(order.begin(), order.end(), v) == order.end()) {
      order.push_back(v);
      v = g.kappa[v];
    }
    std::vector<int> cycle(std::find(order.begin(), order.end(), v), order.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    comp.cycle = std::move(cycle);
  }
  return g;
}

GraphDecomposition decompose(const Polynomial& f, const SingularityGraph& g) {
  GraphDecomposition d{Polynomial(f.nvars(), f.conductor()), {}, f, {}, false};
  auto graph_term = [&](int v) { return Polynomial::term(g.graph_monomials[v], f.coefficient(g.graph_monomials[v])); };

  for (const auto& comp : g.components) {
    for (int v : comp.cycle) d.f0 += graph_term(v);
    for (int root : comp.cycle) {
      for (int head : g.predecessors(root)) {
        if (g.on_cycle(head)) continue;
        // Collect the tree hanging off `root` through `head`.
        std::vector<int> tree{head};
        for (std::size_t k = 0; k < tree.size(); ++k) {
          for (int p : g.predecessors(tree[k])) tree.push_back(p);
        }
        std::sort(tree.begin(), tree.end());
        Polynomial part(f.nvars(), f.conductor());
        for (int v : tree) part += graph_term(v);
        d.trees.push_back(std::move(part));
        d.tree_vertices.push_back(std::move(tree));
      }
    }
  }
  d.f_add -= d.f0;
  for (const auto& t : d.trees) d.f_add -= t;

  if (g.components.size() == 1 && g.nvars >= 2 && g.components[0].cycle.size() == 1) {
    const int root = g.components[0].cycle[0];
    d.is_star_shaped = static_cast<int>(g.predecessors(root).size()) == g.nvars - 1;
  }
  return d;
}

RationalMatrix ExponentMatrix::as_rational() const {
  RationalMatrix m;
  for (const auto& row : entries) {
    std::vector<Rational> r;
    for (long x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return m;
}

ExponentMatrix exponent_matrix(const Polynomial& /*f*/, const SingularityGraph& g) {
  ExponentMatrix e;
  for (int j = 0; j < g.nvars; ++j) {
    const auto& m = g.graph_monomials[j];
    e.entries.emplace_back(m.exponents().begin(), m.exponents().end());
    e.row_monomials.push_back(m);
  }
  const Rational det = determinant(e.as_rational());
  if (sgn(det) == 0) throw Error(ErrorCode::kSingularMatrix, "graph exponents matrix is singular");
  if (!is_integer(det) || sgn(det) < 0) {
    throw Error(ErrorCode::kInternal, "graph exponents matrix has non-positive determinant " + to_string(det));
  }
  e.det = to_long(det.get_num());
  return e;
}

WeightSystem solve_weights(const Polynomial& f, const ExponentMatrix& e) {
  const RationalMatrix inv = inverse(e.as_rational());
  std::vector<Rational> ones(e.size(), Rational(1));
  WeightSystem w;
  w.q = multiply(inv, ones);
  w.d0 = e.det;
  for (const auto& q : w.q) {
    Rational dk = q * e.det;
    if (!is_integer(dk)) throw Error(ErrorCode::kInternal, "det(E) * q is not integral");
    w.d.push_back(to_long(dk.get_num()));
  }
  for (const auto& [m, c] : f.terms()) {
    if (weighted_degree(m, w) != 1) {
      throw Error(ErrorCode::kNotQuasihomogeneous,
                  "monomial " + m.to_string(default_variable_names(f.nvars())) + " has weighted degree " +
                      to_string(weighted_degree(m, w)));
    }
  }
  for (int k = 0; k < w.nvars(); ++k) {
    if (sgn(w.q[k]) <= 0 || w.q[k] > Rational(1, 2)) {
      throw Error(ErrorCode::kWeightOutOfRange,
                  "q_" + std::to_string(k + 1) + " = " + to_string(w.q[k]) + " is outside (0, 1/2]");
    }
  }
  return w;
}

bool check_cy(const WeightSystem& w) { return w.sum() == 1; }

const char* atom_type_name(AtomType t) {
  switch (t) {
    case AtomType::kFermat: return "Fermat";
    case AtomType::kChain: return "chain";
    case AtomType::kLoop: return "loop";
  }
  return "?";
}

Classification classify_invertible(const Polynomial& f, const SingularityGraph& g,
                                   const GraphDecomposition& d) {
  Classification c;
  if (static_cast<int>(f.size()) != f.nvars()) {
    c.reason = std::to_string(f.size()) + " monomials for " + std::to_string(f.nvars()) + " variables";
    return c;
  }
  if (!d.f_add.is_zero()) {
    c.reason = "has non-graph monomials";
    return c;
  }
  for (const auto& comp : g.components) {
    InvertibleAtom atom;
    if (comp.cycle.size() > 1) {
      if (comp.vertices.size() != comp.cycle.size()) {
        c.reason = "loop with attached trees";
        return c;
      }
      atom.type = AtomType::kLoop;
      atom.variables = comp.cycle;
    } else if (comp.vertices.size() == 1) {
      atom.type = AtomType::kFermat;
      atom.variables = comp.cycle;
    } else {
      atom.type = AtomType::kChain;
      int v = comp.cycle[0];
      atom.variables.push_back(v);
      while (true) {
        auto preds = g.predecessors(v);
        if (preds.empty()) break;
        if (preds.size() > 1) {
          c.reason = "vertex x" + std::to_string(v + 1) + " has several incoming arrows";
          return c;
        }
        v = preds[0];
        atom.variables.push_back(v);
      }
    }
    for (int v : atom.variables) atom.exponents.push_back(g.graph_monomials[v][v]);
    c.atoms.push_back(std::move(atom));
  }
  c.invertible = true;
  return c;
}

TransposeResult transpose_polynomial(const Polynomial& f, const ExponentMatrix& e) {
  const int n = e.size();
  TransposeResult t{Polynomial(n, f.conductor()), {}, true};
  for (int k = 0; k < n; ++k) {
    std::vector<int> col(n);
    for (int i = 0; i < n; ++i) col[i] = static_cast<int>(e.entries[i][k]);
    t.polynomial.add_term(Monomial(col), f.coefficient(e.row_monomials[k]));
  }
  const RationalMatrix inv_t = inverse(transpose(e.as_rational()));
  t.weights = multiply(inv_t, std::vector<Rational>(n, Rational(1)));
  for (const auto& q : t.weights) {
    if (sgn(q) <= 0) t.all_positive = false;
  }
  return t;
}

QuasihomAnalysis analyze(const Polynomial& f) {
  QuasihomAnalysis a;
  a.graph = build_graph(f);
  a.decomposition = decompose(f, a.graph);
  a.exponents = exponent_matrix(f, a.graph);
  a.weights = solve_weights(f, a.exponents);
  a.calabi_yau = check_cy(a.weights);
  return a;
}

}  // namespace lgo
