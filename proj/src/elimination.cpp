#include "fisherkit/elimination.hpp"

#include <vector>

namespace fisher {

std::optional<BigIntVector> left_kernel_by_elimination(const IntMatrix& X) {
  const Index m = X.rows();  // unknowns: one per row of X
  const Index n = X.cols();  // equations: one per column of X
  if (m == 0) return std::nullopt;

  DenseMatrix<Rational> A(n, m);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < m; ++c) A(r, c) = Rational(X(c, r));

  // Reduced row echelon form with exact fractions.
  std::vector<Index> pivot_col;
  Index row = 0;
  for (Index col = 0; col < m && row < n; ++col) {
    Index pr = -1;
    for (Index r = row; r < n; ++r) {
      if (A(r, col) != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != row) A.row(pr).swap(A.row(row));
    const Rational pivot = A(row, col);
    A.row(row) /= pivot;
    for (Index r = 0; r < n; ++r) {
      if (r == row || A(r, col) == 0) continue;
      const Rational factor = A(r, col);
      A.row(r) -= factor * A.row(row);
    }
    pivot_col.push_back(col);
    ++row;
  }
  const Index rank = row;
  if (rank == m) return std::nullopt;

  std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
  for (Index c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  Index free_col = -1;
  for (Index c = 0; c < m; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) {
      free_col = c;
      break;
    }
  }

  // Back-substitute the basis vector for the first free unknown.
  RationalVector v = RationalVector::Zero(m);
  v[free_col] = 1;
  for (Index r = 0; r < rank; ++r) v[pivot_col[static_cast<std::size_t>(r)]] = -A(r, free_col);

  // Clear denominators, divide out the content, fix the sign.
  BigInt scale = 1;
  for (Index i = 0; i < m; ++i)
    scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v[i]));
  BigIntVector tau(m);
  for (Index i = 0; i < m; ++i)
    tau[i] = boost::multiprecision::numerator(v[i]) *
             (scale / boost::multiprecision::denominator(v[i]));
  BigInt content = 0;
  for (Index i = 0; i < m; ++i)
    content = boost::multiprecision::gcd(content, boost::multiprecision::abs(tau[i]));
  if (content > 1)
    for (Index i = 0; i < m; ++i) tau[i] /= content;
  for (Index i = 0; i < m; ++i) {
    if (tau[i] == 0) continue;
    if (tau[i] < 0)
      for (Index j = 0; j < m; ++j) tau[j] = -tau[j];
    break;
  }
  return tau;
}

bool oracle_nullspace_trivial(const IntMatrix& X) {
  return !left_kernel_by_elimination(X).has_value();
}

}  // namespace fisher
