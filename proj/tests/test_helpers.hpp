#ifndef QLRA_TEST_HELPERS_HPP
#define QLRA_TEST_HELPERS_HPP

#include <vector>

#include "qlra/qmatrix.hpp"
#include "qlra/sketching.hpp"

namespace qlra::testing {

inline QMatrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  return gen_test_matrix({TestMatrixKind::kGaussian, rows, cols, seed, 1.0});
}

inline double rel_diff(const QMatrix& a, const QMatrix& b) {
  const double nb = b.fro_norm();
  return nb > 0 ? (a - b).fro_norm() / nb : (a - b).fro_norm();
}

inline double orthonormality_defect(const QMatrix& m) {
  return (qmat_mul(m.adjoint(), m) - QMatrix::identity(m.cols())).fro_norm();
}

// 1x1 quaternion matrix.
inline QMatrix scalar(double w, double x = 0, double y = 0, double z = 0) {
  QMatrix m(1, 1);
  m.set(0, 0, {w, x, y, z});
  return m;
}

inline QMatrix diag_real(const std::vector<double>& d) {
  const auto n = static_cast<Index>(d.size());
  QMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m.w(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

}  // namespace qlra::testing

#endif
