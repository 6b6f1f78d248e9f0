#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lgo/rational.hpp"

namespace lgo {

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first (monic).
const std::vector<long>& cyclotomic_polynomial(int n);

int euler_phi(int n);

/// Exact element of Q(zeta_n), stored as the reduced representative
/// sum_i c_i zeta_n^i with 0 <= i < phi(n).
///
/// All binary operations require equal conductors; mixing fields is a
/// programming error reported as ConductorMismatch. Use lift() to move a value
/// into a larger field Q(zeta_m) with n | m.
class CycNum {
 public:
  /// Zero of Q (conductor 1).
  CycNum();
  /// Rational value embedded in Q(zeta_n).
  CycNum(int conductor, const Rational& value);

  static CycNum zero(int conductor) { return CycNum(conductor, Rational(0)); }
  static CycNum one(int conductor) { return CycNum(conductor, Rational(1)); }

  /// e[alpha] = exp(2 pi i alpha). The denominator of alpha must divide the conductor.
  static CycNum root_of_unity(int conductor, const Rational& alpha);

  int conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  std::optional<Rational> as_rational() const;

  CycNum lift(int conductor) const;
  CycNum inverse() const;
  CycNum pow(long e) const;

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator*=(const Rational& q);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator*(CycNum a, const Rational& q) { return a *= q; }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }
  CycNum operator-() const;

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Human readable form, e.g. "1/2 - 3*z^2" where z = e[1/n].
  std::string to_string() const;

 private:
  CycNum(int conductor, std::vector<Rational> coeffs);
  void check_same_field(const CycNum& o) const;

  int conductor_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

}  // namespace lgo
