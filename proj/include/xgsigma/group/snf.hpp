#pragma once

#include "xgsigma/matrix.hpp"

namespace xgs::group {

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // diagonal, d_i >= 0, d_i | d_{i+1}
  IntMatrix V;  // cols x cols, unimodular
};

/// U * A * V = D. A zero matrix leaves U and V as identities.
SmithForm smith_normal_form(const IntMatrix& A);

}  // namespace xgs::group
