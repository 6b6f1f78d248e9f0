#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "lgo/polynomial.hpp"

namespace lgo {

/// Graded reverse lexicographic order: a < b.
struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Reduced Groebner basis under grevlex, generators monic.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  int nvars() const noexcept { return nvars_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  const std::vector<Monomial>& leading_monomials() const noexcept { return leading_; }
  /// True iff m is divisible by no leading monomial.
  bool is_standard(const Monomial& m) const;

 private:
  friend GroebnerBasis groebner(const std::vector<Polynomial>& gens);
  int nvars_ = 0;
  std::vector<Polynomial> generators_;
  std::vector<Monomial> leading_;
};

GroebnerBasis groebner(const std::vector<Polynomial>& gens);

/// Fully reduced remainder of p modulo the basis.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

Monomial leading_monomial(const Polynomial& p);

/// Graded dimension table: weighted degree -> dimension.
using GradedDimensions = std::map<Rational, long>;

struct JacobianRing {
  Polynomial f;
  WeightSystem weights;
  GroebnerBasis gb;
  /// Standard monomials ordered by weighted degree, then graded lex.
  std::vector<Monomial> basis;
  std::vector<Rational> degrees;
  std::map<Monomial, int, GradedLexLess> index;
  Rational c_hat;
  int top_index = 0;
  /// Normal form of hess(f); equal to hess_coefficient times the top monomial.
  Polynomial hess_class;
  CycNum hess_coefficient;

  int mu() const { return static_cast<int>(basis.size()); }
  GradedDimensions graded_dimensions() const;
  /// Coordinates of the class of p in the standard basis, at the given conductor.
  std::vector<CycNum> coordinates(const Polynomial& p, int conductor) const;
  /// Nonzero coordinates only, as (basis index, value) in ascending index order.
  std::vector<std::pair<int, CycNum>> sparse_coordinates(const Polynomial& p, int conductor) const;
};

/// Jac(f) = C[x] / (df/dx_1, ..., df/dx_N). The zero polynomial gives C with basis {1}.
/// Throws NotIsolated when the quotient is infinite-dimensional.
JacobianRing quotient_ring(const Polynomial& f, const WeightSystem& w);

/// Shared memo of quotient_ring keyed by (f, weights); safe for concurrent use.
std::shared_ptr<const JacobianRing> cached_quotient_ring(const Polynomial& f, const WeightSystem& w);

/// Coefficients of prod_k (t^{d0-d_k} - 1)/(t^{d_k} - 1), keyed by degree in units of 1.
GradedDimensions poincare_oracle(const WeightSystem& w);

/// Coefficient of the top class of u*v relative to [hess(f)].
CycNum residue_pairing(const Polynomial& u, const Polynomial& v, const JacobianRing& ring);

}  // namespace lgo
