#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lgo/cyclotomic.hpp"
#include "lgo/linalg.hpp"
#include "lgo/rational.hpp"

namespace lgo {

/// Exponent vector x_1^{a_1} ... x_N^{a_N}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  static Monomial one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }
  static Monomial variable(int nvars, int index, int power = 1);

  int nvars() const noexcept { return static_cast<int>(exps_.size()); }
  int operator[](int i) const { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  int total_degree() const noexcept { return degree_; }
  /// Number of variables with a nonzero exponent.
  int support_size() const;

  bool divides(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  /// Quotient; requires o | *this.
  Monomial operator/(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded lexicographic order with x_1 > x_2 > ... (storage and printing order).
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Reduced weights q_k = d_k / d0 of a quasihomogeneous polynomial.
struct WeightSystem {
  long d0 = 1;
  std::vector<long> d;
  std::vector<Rational> q;

  int nvars() const { return static_cast<int>(q.size()); }
  Rational sum() const;
  /// Restriction of the system to a subset of variables (same d0).
  WeightSystem subset(const std::vector<int>& indices) const;
  static WeightSystem from_integer(long d0, std::vector<long> d);
};

Rational weighted_degree(const Monomial& m, const WeightSystem& w);

/// Sparse polynomial over Q(zeta_n) with a fixed number of variables.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, CycNum, GradedLexLess>;

  Polynomial() : Polynomial(0, 1) {}
  Polynomial(int nvars, int conductor);

  static Polynomial constant(int nvars, const CycNum& c);
  static Polynomial term(const Monomial& m, const CycNum& c);
  static Polynomial variable(int nvars, int index, int conductor);

  int nvars() const noexcept { return nvars_; }
  int conductor() const noexcept { return conductor_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;

  CycNum coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const CycNum& c);

  Polynomial lift(int conductor) const;
  Polynomial pow(int e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const CycNum& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const CycNum& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Terms printed in descending graded-lex order; default names x1..xN.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const Polynomial& o) const;

  int nvars_;
  int conductor_;
  TermMap terms_;
};

std::vector<std::string> default_variable_names(int nvars);

struct ParseOptions {
  bool allow_mixed_quadratic = false;
};

/// Parses sums of products of rationals, roots of unity e[p/q], variables,
/// parenthesised subexpressions and non-negative integer powers.
Polynomial parse_poly(std::string_view text, const std::vector<std::string>& variables,
                      ParseOptions options = {});

/// Variable names occurring in text, sorted by name prefix then numeric suffix.
std::vector<std::string> infer_variables(std::string_view text);

Polynomial partial_derivative(const Polynomial& p, int index);

/// p(L y): L has p.nvars() rows (old variables) and M columns (new variables).
Polynomial substitute_linear(const Polynomial& p, const CycMatrix& linear_map);

/// Determinant of the matrix of second partial derivatives; 1 for zero variables.
Polynomial hessian(const Polynomial& f);

/// Brings two polynomials into the same field.
int common_conductor(const Polynomial& a, const Polynomial& b);

}  // namespace lgo
