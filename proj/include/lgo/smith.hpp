#pragma once

#include <vector>

#include "lgo/rational.hpp"

namespace lgo {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ... .
struct SmithNormalForm {
  IntegerMatrix u;
  IntegerMatrix s;
  IntegerMatrix v;
  /// Diagonal entries of S (min(rows, cols) of them, non-negative).
  std::vector<Integer> diagonal;
};

SmithNormalForm smith_normal_form(const IntegerMatrix& a);

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

}  // namespace lgo
