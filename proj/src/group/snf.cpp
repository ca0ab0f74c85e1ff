#include "xgsigma/group/snf.hpp"

#include <utility>

namespace xgs::group {

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < m.rows(); ++k) std::swap(m(k, i), m(k, j));
}

// row_i += f * row_j
void add_row(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& f) {
  for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) += f * m(j, k);
}

// col_i += f * col_j
void add_col(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& f) {
  for (std::size_t k = 0; k < m.rows(); ++k) m(k, i) += f * m(k, j);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t r = A.rows(), c = A.cols();
  SmithForm s{IntMatrix::identity(r), A, IntMatrix::identity(c)};
  IntMatrix& D = s.D;

  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (sgn(D(i, j)) == 0) continue;
          if (!found || abs(D(i, j)) < abs(D(pi, pj))) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) return s;
      swap_rows(D, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(D(i, t)) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        add_row(D, i, t, -q);
        add_row(s.U, i, t, -q);
        if (sgn(D(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(D(t, j)) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        add_col(D, j, t, -q);
        add_col(s.V, j, t, -q);
        if (sgn(D(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j) {
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            add_row(D, t, i, BigInt(1));
            add_row(s.U, t, i, BigInt(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (sgn(D(t, t)) < 0) {
      for (std::size_t k = 0; k < c; ++k) D(t, k) = -D(t, k);
      for (std::size_t k = 0; k < r; ++k) s.U(t, k) = -s.U(t, k);
    }
  }
  return s;
}

}  // namespace xgs::group
