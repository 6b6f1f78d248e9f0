#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgo/linalg.hpp"
#include "lgo/polynomial.hpp"

namespace lgo {

/// One candidate monomial heading vertex j: x_j^a (target == j) or x_j^a x_k.
struct GraphCandidate {
  int target = 0;
  int exponent = 0;
  Monomial monomial;
};

struct GraphComponent {
  std::vector<int> vertices;  // ascending
  std::vector<int> cycle;     // starts at its minimal vertex, follows kappa
};

/// The graph Gamma_f: vertex j points to kappa(j) (no arrow when kappa(j) == j).
/// Indices are zero-based.
struct SingularityGraph {
  int nvars = 0;
  std::vector<int> kappa;
  std::vector<Monomial> graph_monomials;  // the monomial selected for each vertex
  std::vector<GraphComponent> components;

  bool on_cycle(int v) const;
  /// Vertices with an arrow into v.
  std::vector<int> predecessors(int v) const;
};

/// All admissible graph monomials for vertex j, preferred first.
std::vector<GraphCandidate> graph_candidates(const Polynomial& f, int j);

/// Picks the first candidate per vertex unless an override index is given.
SingularityGraph build_graph(const Polynomial& f, const std::vector<int>& candidate_choice = {});

struct GraphDecomposition {
  Polynomial f0;
  std::vector<Polynomial> trees;
  Polynomial f_add;
  /// Vertex sets of the trees, same order as `trees`.
  std::vector<std::vector<int>> tree_vertices;
  bool is_star_shaped = false;
};

GraphDecomposition decompose(const Polynomial& f, const SingularityGraph& g);

/// Graph exponents matrix: row j is the exponent vector of vertex j's graph monomial.
struct ExponentMatrix {
  std::vector<std::vector<long>> entries;
  std::vector<Monomial> row_monomials;
  long det = 0;

  int size() const { return static_cast<int>(entries.size()); }
  RationalMatrix as_rational() const;
};

ExponentMatrix exponent_matrix(const Polynomial& f, const SingularityGraph& g);

/// q = E^{-1} 1 with canonical integer weights d0 = det E, d = d0 q. Verifies that
/// every monomial of f has degree one and that 0 < q_k <= 1/2.
WeightSystem solve_weights(const Polynomial& f, const ExponentMatrix& e);

bool check_cy(const WeightSystem& w);

enum class AtomType { kFermat, kChain, kLoop };

struct InvertibleAtom {
  AtomType type;
  std::vector<int> variables;  // Fermat: {i}; chain: root first; loop: cycle order
  std::vector<int> exponents;  // exponent of the heading variable, same order
};

struct Classification {
  bool invertible = false;
  std::vector<InvertibleAtom> atoms;
  std::string reason;  // why not invertible
};

const char* atom_type_name(AtomType t);

Classification classify_invertible(const Polynomial& f, const SingularityGraph& g,
                                   const GraphDecomposition& d);

struct TransposeResult {
  Polynomial polynomial;
  std::vector<Rational> weights;
  bool all_positive = false;
};

/// f^T built from the columns of E with the graph-monomial coefficients of f.
TransposeResult transpose_polynomial(const Polynomial& f, const ExponentMatrix& e);

/// Convenience bundle of the whole analysis.
struct QuasihomAnalysis {
  SingularityGraph graph;
  GraphDecomposition decomposition;
  ExponentMatrix exponents;
  WeightSystem weights;
  bool calabi_yau = false;
};

QuasihomAnalysis analyze(const Polynomial& f);

}  // namespace lgo
