#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgo/cyclotomic.hpp"
#include "lgo/rational.hpp"

namespace lgo {

/// Dense row-major matrix over Q(zeta_n).
class CycMatrix {
 public:
  CycMatrix() : CycMatrix(0, 0, 1) {}
  CycMatrix(int rows, int cols, int conductor);

  static CycMatrix identity(int n, int conductor);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int conductor() const noexcept { return conductor_; }

  CycNum& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const CycNum& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  CycMatrix column(int j) const;
  CycMatrix transpose() const;
  CycMatrix lift(int conductor) const;
  bool is_zero() const;

  CycMatrix operator*(const CycMatrix& o) const;
  CycMatrix operator+(const CycMatrix& o) const;
  CycMatrix operator-(const CycMatrix& o) const;
  CycMatrix& operator*=(const CycNum& s);
  friend bool operator==(const CycMatrix& a, const CycMatrix& b);

 private:
  int rows_;
  int cols_;
  int conductor_;
  std::vector<CycNum> data_;
};

/// Reduced row echelon form (in place); returns the pivot column of each pivot row.
std::vector<int> row_reduce(CycMatrix& m);

int rank(CycMatrix m);

/// Indices of columns forming a basis of the column space (the pivot columns).
std::vector<int> column_basis(const CycMatrix& m);

CycNum determinant(CycMatrix m);

/// Solves A X = B for X when A has full column rank; nullopt if inconsistent.
std::optional<CycMatrix> solve(const CycMatrix& a, const CycMatrix& b);

// Small helpers over Q used by the weight and exponent-matrix code.
using RationalMatrix = std::vector<std::vector<Rational>>;

Rational determinant(RationalMatrix m);
/// Throws Error(kSingularMatrix) when m is singular.
RationalMatrix inverse(const RationalMatrix& m);
std::vector<Rational> multiply(const RationalMatrix& m, const std::vector<Rational>& v);
RationalMatrix transpose(const RationalMatrix& m);

}  // namespace lgo
