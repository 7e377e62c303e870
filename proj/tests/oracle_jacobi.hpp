#ifndef QLRA_TESTS_ORACLE_JACOBI_HPP
#define QLRA_TESTS_ORACLE_JACOBI_HPP

// Brute-force cyclic Jacobi eigensolver for small Hermitian complex matrices.
// Test oracle only: independent of the SVD route used by the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace qlra::testing {

inline std::vector<double> hermitian_eigenvalues_jacobi(Eigen::MatrixXcd a,
                                                        int max_sweeps = 80) {
  const Eigen::Index n = a.rows();
  a = ((a + a.adjoint().eval()) / 2.0).eval();
  const double scale = std::max(1.0, a.norm());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) < 1e-15 * scale) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = tau >= 0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const std::complex<double> phase = apq / mag;
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n, n);
        g(p, p) = c;
        g(p, q) = s * phase;
        g(q, p) = -s * std::conj(phase);
        g(q, q) = c;
        a = (g.adjoint() * a * g).eval();
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace qlra::testing

#endif
