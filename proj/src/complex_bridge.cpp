#include "qlra/complex_bridge.hpp"

#include "qlra/errors.hpp"

namespace qlra {

namespace {
constexpr double kSingularRcond = 1e-14;
}

CMatrix to_compact(const QMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  CMatrix c(2 * m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) {
      c(i, j) = std::complex<double>(a.w(i, j), a.x(i, j));
      c(m + i, j) = std::complex<double>(-a.y(i, j), a.z(i, j));
    }
  return c;
}

CMatrix to_full(const QMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  CMatrix c(2 * m, 2 * n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) {
      const std::complex<double> q0(a.w(i, j), a.x(i, j));
      const std::complex<double> q1(a.y(i, j), a.z(i, j));
      c(i, j) = q0;
      c(i, n + j) = q1;
      c(m + i, j) = -std::conj(q1);
      c(m + i, n + j) = std::conj(q0);
    }
  return c;
}

QMatrix from_compact(const CMatrix& z) {
  if (z.rows() % 2 != 0) throw ShapeError("from_compact: odd row count");
  const Index m = z.rows() / 2, n = z.cols();
  QMatrix a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto z0 = z(i, j);
      const auto z1 = z(m + i, j);
      // Q0 = z0, Q1 = -conj(z1)
      a.w(i, j) = z0.real();
      a.x(i, j) = z0.imag();
      a.y(i, j) = -z1.real();
      a.z(i, j) = z1.imag();
    }
  return a;
}

CMatrix j_mul_conj(const CMatrix& u) {
  if (u.rows() % 2 != 0) throw ShapeError("j_mul_conj: odd row count");
  const Index m = u.rows() / 2;
  CMatrix r(u.rows(), u.cols());
  r.topRows(m) = -u.bottomRows(m).conjugate();
  r.bottomRows(m) = u.topRows(m).conjugate();
  return r;
}

QMatrix solve_quaternion_linear(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("solve_quaternion_linear: row mismatch");
  if (a.rows() < a.cols())
    throw ShapeError("solve_quaternion_linear: underdetermined system not supported");

  const CMatrix chi = to_full(a);
  const CMatrix bc = to_compact(b);

  CMatrix z;
  if (a.rows() == a.cols()) {
    Eigen::PartialPivLU<CMatrix> lu(chi);
    const double rc = lu.rcond();
    if (!(rc > kSingularRcond))
      throw SingularMatrixError("solve_quaternion_linear: singular system",
                                rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity());
    z = lu.solve(bc);
  } else {
    Eigen::ColPivHouseholderQR<CMatrix> qr(chi);
    const auto& r = qr.matrixR();
    const double rmax = std::abs(r(0, 0));
    const double rmin = std::abs(r(chi.cols() - 1, chi.cols() - 1));
    if (!(rmin > kSingularRcond * rmax))
      throw SingularMatrixError("solve_quaternion_linear: rank-deficient system",
                                rmin > 0 ? rmax / rmin : std::numeric_limits<double>::infinity());
    z = qr.solve(bc);
  }
  return from_compact(z);
}

}  // namespace qlra
