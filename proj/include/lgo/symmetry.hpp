#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "lgo/linalg.hpp"
#include "lgo/polynomial.hpp"
#include "lgo/quasihom.hpp"

namespace lgo {

/// One cycle of the permutation part of a group element.
struct PermutationCycle {
  std::vector<int> vertices;  // starts at the minimal index, follows sigma
  Rational total_phase;       // sum of the phases along the cycle, in [0, 1)
};

/// Monomial matrix M with M[i, sigma(i)] = e[phase_i]; acts on coordinates as
/// (M x)_i = e[phase_i] x_{sigma(i)}. Indices are zero-based.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(std::vector<int> sigma, std::vector<Rational> phase);

  static GroupElement identity(int nvars);
  static GroupElement diagonal(std::vector<Rational> phase);
  /// Cycle notation (c1 c2 ... ck): sigma(c1) = c2, ..., sigma(ck) = c1.
  static GroupElement permutation(int nvars, const std::vector<std::vector<int>>& cycles);

  int nvars() const noexcept { return static_cast<int>(sigma_.size()); }
  const std::vector<int>& sigma() const noexcept { return sigma_; }
  const std::vector<Rational>& phase() const noexcept { return phase_; }

  bool is_identity() const;
  bool is_diagonal() const;
  int permutation_sign() const;

  /// Matrix product this * o.
  GroupElement compose(const GroupElement& o) const;
  GroupElement inverse() const;
  GroupElement pow(long k) const;
  long order() const;

  std::vector<PermutationCycle> cycles() const;
  /// Eigenvalue phases in [0, 1), grouped by cycle (cycle order, then ascending).
  std::vector<Rational> eigenphases() const;
  /// Smallest n such that the matrix, its eigenvalues and eigenvectors live in Q(zeta_n).
  long conductor() const;

  CycMatrix matrix(int conductor) const;
  std::string to_string() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.sigma_ == b.sigma_ && a.phase_ == b.phase_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) { return a.compose(b); }

 private:
  std::vector<int> sigma_;
  std::vector<Rational> phase_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

/// h g h^{-1}
GroupElement conjugate(const GroupElement& h, const GroupElement& g);

bool is_symmetry(const Polynomial& f, const GroupElement& g);

/// sign(sigma) e[sum of phases]; `conductor` must be divisible by the phase denominators.
CycNum determinant(const GroupElement& g, int conductor);
bool is_sl(const GroupElement& g);
Rational age(const GroupElement& g);

/// (1,...,1) E^{-1} (E gbar); throws NotInGraphGroup if E gbar is not integral.
Rational age_via_matrix(const std::vector<Rational>& gbar, const ExponentMatrix& e);

/// Finite abelian group {v in (Q/Z)^N : A v in Z^m} for an integer matrix A.
struct DiagonalGroup {
  int nvars = 0;
  std::vector<std::vector<Rational>> generators;  // one per nontrivial invariant factor
  std::vector<long> invariant_factors;            // the nontrivial ones, s_1 | s_2 | ...
  long order = 1;
  std::vector<std::vector<long>> relations;  // the rows of A

  std::vector<std::vector<Rational>> elements() const;
  bool contains(const std::vector<Rational>& v) const;
};

DiagonalGroup diagonal_group_from_relations(int nvars, const std::vector<std::vector<long>>& rows);
/// G_f^d: phases preserving every monomial of f.
DiagonalGroup diagonal_symmetries(const Polynomial& f);
/// G_f^gr: phases preserving the graph monomials (rows of E).
DiagonalGroup graph_group(const ExponentMatrix& e);
/// G_f^d intersected with SL.
DiagonalGroup diagonal_sl_symmetries(const Polynomial& f);

/// rho_i = i-th column of E^{-1} reduced mod 1.
std::vector<std::vector<Rational>> krawitz_generators(const ExponentMatrix& e);

GroupElement make_jf(const WeightSystem& w);

struct GroupOptions {
  long cap = 100000;
  bool require_j = false;
  bool require_sl = false;
};

class FiniteGroup {
 public:
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }

  /// -1 when g is not in the group.
  int index_of(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index_of(g) >= 0; }
  int identity_index() const noexcept { return 0; }
  int inverse_index(int i) const { return inverse_[i]; }
  int product_index(int a, int b) const;
  /// Index of h g h^{-1}.
  int conjugate_index(int h, int g) const;

  const std::vector<std::vector<int>>& conjugacy_classes() const noexcept { return classes_; }
  int class_of(int i) const { return class_of_[i]; }
  /// lcm of the conductors of all elements.
  long conductor() const noexcept { return conductor_; }

 private:
  friend FiniteGroup generate_group(const std::vector<GroupElement>&, const Polynomial&, const WeightSystem&,
                                    const GroupOptions&);
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, int, GroupElementHash> index_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  long conductor_ = 1;
};

/// Closure of the generators, element 0 is the identity. Elements are listed in
/// breadth-first order over the generator list.
FiniteGroup generate_group(const std::vector<GroupElement>& generators, const Polynomial& f,
                           const WeightSystem& w, const GroupOptions& options = {});

struct FixedLocus {
  GroupElement g;
  int conductor = 1;
  /// N x N_g, columns span Fix(g); column j has a 1 in row fixed_rows[j].
  CycMatrix basis;
  /// Minimal index of the cycle carrying each fixed column (the index set I_g).
  std::vector<int> fixed_rows;
  /// Weight of each fixed column.
  std::vector<Rational> fixed_weights;
  /// N x d_g eigenbasis of the non-fixed eigenvalues, ordered by cycle then phase.
  CycMatrix complement;
  std::vector<Rational> complement_phases;

  int n_fixed() const { return basis.cols(); }
  int codim() const { return complement.cols(); }
};

/// Eigen-data at the given conductor, which must be a multiple of g.conductor().
FixedLocus fixed_locus(const GroupElement& g, const WeightSystem& w, int conductor);

/// f^g in N_g variables (the zero polynomial in 0 variables when N_g = 0).
Polynomial restrict(const Polynomial& f, const FixedLocus& fl);

/// Determinant of the map Lambda(g) -> Lambda(h g h^{-1}) induced by h.
CycNum rho_constant(const GroupElement& h, const FixedLocus& source, const FixedLocus& target);
CycNum rho_constant(const GroupElement& h, const GroupElement& g, const WeightSystem& w, int conductor);

}  // namespace lgo
