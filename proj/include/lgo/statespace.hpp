#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lgo/jacobian.hpp"
#include "lgo/symmetry.hpp"

namespace lgo {

struct Charges {
  Rational left;
  Rational right;

  bool integral() const { return is_integer(left) && is_integer(right); }
  std::string to_string() const;
  friend bool operator==(const Charges& a, const Charges& b) { return a.left == b.left && a.right == b.right; }
  friend bool operator<(const Charges& a, const Charges& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  }
};

/// The summand Jac(f^g) xi_g. Polynomials live in the coordinates of fixed.basis.
struct Sector {
  int element = 0;  // index into the group
  FixedLocus fixed;
  Polynomial restricted;
  std::shared_ptr<const JacobianRing> ring;
  Rational age;
  Rational inverse_age;
  /// Sum of the weights of the directions moved by g.
  Rational moved_weight;
  std::vector<Charges> charges;  // one per ring basis element

  int dimension() const { return ring->mu(); }
};

/// Basis element [m] xi_g of B_tot: sector position and index of m in the sector ring basis.
struct BlockEntry {
  int sector = 0;
  int basis = 0;
  friend bool operator==(const BlockEntry& a, const BlockEntry& b) {
    return a.sector == b.sector && a.basis == b.basis;
  }
  friend bool operator<(const BlockEntry& a, const BlockEntry& b) {
    return a.sector != b.sector ? a.sector < b.sector : a.basis < b.basis;
  }
};

/// All basis elements of one bidegree together with their G-invariants.
struct Block {
  Charges charges;
  std::vector<BlockEntry> entries;
  /// Positions in `entries`, grouped by the conjugacy class of the sector element.
  std::vector<std::vector<int>> orbits;
  /// entries.size() x dim; columns are invariant vectors.
  CycMatrix invariants;
  long oracle_dimension = 0;

  int dimension() const { return invariants.cols(); }
  int position(const BlockEntry& e) const;
};

struct StateSpaceOptions {
  /// 0 means hardware concurrency.
  int threads = 0;
  /// Re-apply the generators to every invariant vector.
  bool check_invariance = true;
  /// When false only sectors, charges and blocks are built.
  bool compute_invariants = true;
};

class StateSpace {
 public:
  const Polynomial& f() const noexcept { return f_; }
  const WeightSystem& weights() const noexcept { return weights_; }
  const FiniteGroup& group() const noexcept { return *group_; }
  int conductor() const noexcept { return conductor_; }
  const std::vector<Sector>& sectors() const noexcept { return sectors_; }
  /// Sector of group element i (sectors are stored in group order).
  const Sector& sector_of(int element) const { return sectors_[element]; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// nullptr when no basis element has these charges.
  const Block* block(const Charges& c) const;
  long total_dimension() const;
  long invariant_dimension() const;

 private:
  friend StateSpace build_state_space(const Polynomial&, const WeightSystem&, std::shared_ptr<const FiniteGroup>,
                                      const StateSpaceOptions&);
  Polynomial f_;
  WeightSystem weights_;
  std::shared_ptr<const FiniteGroup> group_;
  int conductor_ = 1;
  std::vector<Sector> sectors_;
  std::vector<Block> blocks_;
  std::map<Charges, int> block_index_;
};

/// B(f,G): every sector, its ring and charges, and the invariants of every bidegree.
StateSpace build_state_space(const Polynomial& f, const WeightSystem& w, std::shared_ptr<const FiniteGroup> group,
                             const StateSpaceOptions& options = {});

/// Charges of [p] xi_g for p homogeneous in the fixed-locus coordinates; throws NonHomogeneous.
Charges charges(const Polynomial& p, const Sector& sector);

/// Matrix of h* on the span of `entries`, which must be stable under h*.
CycMatrix action_matrix(const StateSpace& space, int h, const std::vector<BlockEntry>& entries);
/// Throws NotInGroup if h is not an element of the group.
CycMatrix action_matrix(const StateSpace& space, const GroupElement& h, const std::vector<BlockEntry>& entries);

/// (1/|G|) sum_h h* on the span of `entries`.
CycMatrix reynolds_operator(const StateSpace& space, const std::vector<BlockEntry>& entries);

/// Columns span the image of the Reynolds operator.
CycMatrix invariant_basis(const StateSpace& space, const std::vector<BlockEntry>& entries);

/// Number of invariants in a block from the character formula over conjugacy classes:
/// for each class representative g, the average trace of the centralizer on the g-sector.
long invariants_dim_oracle(const StateSpace& space, const Block& block);

/// Psi([p] xi_g) = [p] xi_{g^{-1}} as a matrix from `source` entries to `target` entries.
CycMatrix psi_matrix(const StateSpace& space, const std::vector<BlockEntry>& source,
                     const std::vector<BlockEntry>& target);

/// Residue pairing between the spans of two entry lists, sector by sector, each sector
/// normalized by the volume letter xi_g.
CycMatrix pairing_matrix(const StateSpace& space, const std::vector<BlockEntry>& left,
                         const std::vector<BlockEntry>& right);

struct Diamond {
  int D = 0;
  /// h[a][b] for 0 <= a, b <= D.
  std::vector<std::vector<long>> h;
  /// Invariant bidegrees outside [0, D]^2 with their dimensions.
  std::vector<std::pair<Charges, long>> outside;
  long total = 0;

  long at(int a, int b) const;
};

/// Throws NonIntegerCharge when an invariant has a fractional charge.
Diamond assemble_diamond(const StateSpace& space);

struct VerificationCheck {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_pass() const;
};

/// Throws PreconditionFailed unless f is Calabi-Yau and J is contained in G, G in SL_f.
void check_theorem_preconditions(const WeightSystem& w, const FiniteGroup& group);

/// The six diamond properties: integral charges, support in [0,D]^2, the two corner
/// pairs with their generators, Psi symmetry and Phi duality.
VerificationReport verify_theorem(const StateSpace& space, const Diamond& diamond);

/// The same six checks without the preconditions, for groups outside SL_f.
VerificationReport diamond_checks(const StateSpace& space, const Diamond& diamond);

}  // namespace lgo
