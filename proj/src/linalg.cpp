#include "lgo/linalg.hpp"

#include "lgo/error.hpp"

namespace lgo {

CycMatrix::CycMatrix(int rows, int cols, int conductor)
    : rows_(rows),
      cols_(cols),
      conductor_(conductor),
      data_(static_cast<std::size_t>(rows) * cols, CycNum::zero(conductor)) {}

CycMatrix CycMatrix::identity(int n, int conductor) {
  CycMatrix m(n, n, conductor);
  for (int i = 0; i < n; ++i) m(i, i) = CycNum::one(conductor);
  return m;
}

CycMatrix CycMatrix::column(int j) const {
  CycMatrix c(rows_, 1, conductor_);
  for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix t(cols_, rows_, conductor_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CycMatrix CycMatrix::lift(int conductor) const {
  if (conductor == conductor_) return *this;
  CycMatrix m(rows_, cols_, conductor);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].lift(conductor);
  return m;
}

bool CycMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
  if (cols_ != o.rows_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix product " + std::to_string(rows_) + "x" +
                                                   std::to_string(cols_) + " * " +
                                                   std::to_string(o.rows_) + "x" +
                                                   std::to_string(o.cols_));
  }
  if (conductor_ != o.conductor_) throw Error(ErrorCode::kConductorMismatch, "matrix product");
  CycMatrix r(rows_, o.cols_, conductor_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const CycNum& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const CycNum& b = o(k, j);
        if (b.is_zero()) continue;
        r(i, j) += a * b;
      }
    }
  }
  return r;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix sum");
  CycMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix difference");
  CycMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

CycMatrix& CycMatrix::operator*=(const CycNum& s) {
  for (auto& x : data_) {
    if (!x.is_zero()) x *= s;
  }
  return *this;
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<int> row_reduce(CycMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows(); ++i) {
      if (!m(i, col).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const CycNum inv = m(row, col).inverse();
    for (int j = col; j < m.cols(); ++j) {
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const CycNum factor = m(i, col);
      for (int j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(CycMatrix m) { return static_cast<int>(row_reduce(m).size()); }

std::vector<int> column_basis(const CycMatrix& m) {
  CycMatrix copy = m;
  return row_reduce(copy);
}

CycNum determinant(CycMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  const int n = m.rows();
  CycNum det = CycNum::one(m.conductor());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (!m(i, col).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return CycNum::zero(m.conductor());
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const CycNum inv = m(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const CycNum factor = m(i, col) * inv;
      for (int j = col; j < n; ++j) {
        if (!m(col, j).is_zero()) m(i, j) -= factor * m(col, j);
      }
    }
  }
  return det;
}

std::optional<CycMatrix> solve(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "solve: row counts differ");
  const int n = a.cols();
  CycMatrix aug(a.rows(), n + b.cols(), a.conductor());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  auto pivots = row_reduce(aug);
  if (static_cast<int>(pivots.size()) > n || (pivots.size() > 0 && pivots.back() >= n)) {
    return std::nullopt;
  }
  if (static_cast<int>(pivots.size()) != n) {
    throw Error(ErrorCode::kSingularMatrix, "solve: coefficient matrix lacks full column rank");
  }
  CycMatrix x(n, b.cols(), a.conductor());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i) {
      if (sgn(m[i][col]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(m[i][col]) == 0) continue;
      Rational factor = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i) {
      if (sgn(aug[i][col]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) throw Error(ErrorCode::kSingularMatrix, "rational matrix is singular");
    std::swap(aug[pivot], aug[col]);
    Rational inv = 1 / aug[col][col];
    for (auto& x : aug[col]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(aug[i][col]) == 0) continue;
      Rational factor = aug[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= factor * aug[col][j];
    }
  }
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

std::vector<Rational> multiply(const RationalMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> r(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

RationalMatrix transpose(const RationalMatrix& m) {
  if (m.empty()) return {};
  RationalMatrix t(m[0].size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace lgo
