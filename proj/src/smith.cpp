#include "lgo/smith.hpp"

#include <utility>

#include "lgo/error.hpp"

namespace lgo {

namespace {

IntegerMatrix identity(std::size_t n) {
  IntegerMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct Work {
  IntegerMatrix a, u, v;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += k * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] += k * u[j][c];
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t r = 0; r < rows; ++r) a[r][i] += k * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] += k * v[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

}  // namespace

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  if (a[0].size() != k) throw Error(ErrorCode::kDimensionMismatch, "integer matrix product");
  IntegerMatrix r(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

SmithNormalForm smith_normal_form(const IntegerMatrix& input) {
  Work w;
  w.rows = input.size();
  w.cols = input.empty() ? 0 : input[0].size();
  w.a = input;
  w.u = identity(w.rows);
  w.v = identity(w.cols);

  const std::size_t steps = std::min(w.rows, w.cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pr = w.rows, pc = w.cols;
      for (std::size_t i = t; i < w.rows; ++i)
        for (std::size_t j = t; j < w.cols; ++j) {
          if (w.a[i][j] == 0) continue;
          if (pr == w.rows || abs(w.a[i][j]) < abs(w.a[pr][pc])) {
            pr = i;
            pc = j;
          }
        }
      if (pr == w.rows) break;  // trailing block is zero
      if (pr != t) w.swap_rows(pr, t);
      if (pc != t) w.swap_cols(pc, t);

      bool dirty = false;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (w.a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
        w.add_row(i, t, -q);
        if (w.a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < w.cols; ++j) {
        if (w.a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
        w.add_col(j, t, -q);
        if (w.a[t][j] != 0) dirty = true;
      }
      if (dirty) continue;

      // Row and column are clear; enforce divisibility of the remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < w.rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < w.cols; ++j) {
          if (w.a[i][j] % w.a[t][t] != 0) {
            w.add_row(t, i, 1);
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    if (w.a[t][t] < 0) w.negate_row(t);
  }

  SmithNormalForm out;
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(w.a[t][t]);
  out.s = std::move(w.a);
  return out;
}

}  // namespace lgo
