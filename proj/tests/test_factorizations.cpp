#include <doctest.h>

#include <cmath>

#include "oracle_jacobi.hpp"
#include "qlra/errors.hpp"
#include "qlra/factorizations.hpp"
#include "qlra/synthetic.hpp"
#include "test_helpers.hpp"

using namespace qlra;
using namespace qlra::testing;

TEST_SUITE_BEGIN("factorizations");

TEST_CASE("jacobi oracle self-check on hand matrices") {
  Eigen::MatrixXcd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  auto ev = hermitian_eigenvalues_jacobi(a);
  CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));

  a << std::complex<double>(1, 0), std::complex<double>(0, 1),
      std::complex<double>(0, -1), std::complex<double>(1, 0);
  ev = hermitian_eigenvalues_jacobi(a);
  CHECK(ev[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("complex_qr: identity and single column") {
  const auto qi = complex_qr(CMatrix::Identity(3, 3));
  CHECK((qi.q - CMatrix::Identity(3, 3)).norm() < 1e-14);
  CHECK((qi.r - CMatrix::Identity(3, 3)).norm() < 1e-14);

  CMatrix e(4, 1);
  e.setZero();
  e(0, 0) = 2.0;
  const auto q1 = complex_qr(e);
  CHECK(std::abs(q1.q(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(q1.r(0, 0) - 2.0) < 1e-14);
}

TEST_CASE("complex_qr: reconstruction, orthonormality, phase convention") {
  const CMatrix m = to_compact(random_gaussian(4, 3, 31));  // 8 x 3
  const auto f = complex_qr(m);
  CHECK((f.q.adjoint() * f.q - CMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((f.q * f.r - m).norm() < 1e-12 * m.norm());
  for (int k = 0; k < 3; ++k) {
    CHECK(f.r(k, k).imag() == doctest::Approx(0.0).scale(1.0));
    CHECK(f.r(k, k).real() >= 0.0);
  }
  CHECK_THROWS_AS(complex_qr(CMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("complex_svd: hand values and reconstruction") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  auto f = complex_svd(d);
  CHECK(f.s(0) == doctest::Approx(3.0));
  CHECK(f.s(1) == doctest::Approx(1.0));

  f = complex_svd(CMatrix::Zero(2, 2));
  CHECK(f.s(0) == 0.0);
  CHECK(f.s(1) == 0.0);

  const CMatrix m = to_compact(random_gaussian(5, 4, 32));  // 10 x 4
  f = complex_svd(m);
  const CMatrix recon = f.u * f.s.asDiagonal() * f.v.adjoint();
  CHECK((recon - m).norm() <= 1e-12 * m.norm());
}

TEST_CASE("qsvd: real diagonal gives exact factors") {
  const auto f = qsvd(diag_real({2, 1}));
  CHECK(f.sigma[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.sigma[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_diff(f.u, QMatrix::identity(2)) < 1e-12);
  CHECK(rel_diff(f.v, QMatrix::identity(2)) < 1e-12);
}

TEST_CASE("qsvd: unit-modulus scalar") {
  const auto f = qsvd(scalar(0, 1, 0, 0));
  CHECK(f.sigma[0] == doctest::Approx(1.0).epsilon(1e-14));
  const QMatrix uv = qmat_mul(f.u, f.v.adjoint());
  CHECK(rel_diff(uv, scalar(0, 1, 0, 0)) < 1e-13);
}

TEST_CASE("qsvd: reconstruction at condition 1e10") {
  const QMatrix a = planted_conditioned_matrix(6, 4, 1e10, 33);
  const auto f = qsvd(a);
  CHECK((a - qsvd_reconstruct(f)).fro_norm() <= 1e-10 * a.fro_norm());
  CHECK(orthonormality_defect(f.u) < 1e-10);
  CHECK(orthonormality_defect(f.v) < 1e-10);
  for (std::size_t i = 1; i < f.sigma.size(); ++i) CHECK(f.sigma[i] <= f.sigma[i - 1]);
}

TEST_CASE("qsvd: wide matrices via the adjoint") {
  const QMatrix a = random_gaussian(3, 6, 34);
  const auto f = qsvd(a);
  CHECK(f.u.rows() == 3);
  CHECK(f.v.rows() == 6);
  CHECK(f.sigma.size() == 3);
  CHECK((a - qsvd_reconstruct(f)).fro_norm() <= 1e-12 * a.fro_norm());
}

TEST_CASE("qsvd: duplicated singular values repaired") {
  const QMatrix a = planted_matrix_with_sigma(10, {2, 2, 1, 1, 1}, 35);
  const auto f = qsvd(a);
  CHECK((a - qsvd_reconstruct(f)).fro_norm() <= 1e-10 * a.fro_norm());
  CHECK(orthonormality_defect(f.u) < 1e-10);
  CHECK(orthonormality_defect(f.v) < 1e-10);
}

TEST_CASE("duplication of chi singular values") {
  const QMatrix a = random_gaussian(6, 4, 36);
  const ComplexSvd f = complex_svd(to_full(a));
  for (Eigen::Index i = 0; i + 1 < f.s.size(); i += 2)
    CHECK(std::abs(f.s(i) - f.s(i + 1)) <= 1e-8 * f.s(0));
}

TEST_CASE("qsvd singular values match the jacobi oracle on the gram matrix") {
  const QMatrix a = random_gaussian(5, 3, 37);
  const CMatrix chi = to_full(a);
  const auto ev = hermitian_eigenvalues_jacobi(chi.adjoint() * chi);
  const auto f = qsvd(a);
  // chi eigenvalues duplicate each quaternion value: take every other one.
  for (std::size_t i = 0; i < f.sigma.size(); ++i) {
    const double oracle = std::sqrt(std::max(0.0, ev[2 * i]));
    CHECK(f.sigma[i] == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("qmat_pinv: hand values and Penrose identities") {
  const QMatrix p = qmat_pinv(diag_real({2, 0}));
  CHECK(p.w(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.w(1, 1) == doctest::Approx(0.0).scale(1.0));

  const QMatrix q = orthonormal_range(random_gaussian(6, 3, 38));
  CHECK(rel_diff(qmat_pinv(q), q.adjoint()) < 1e-9);

  const QMatrix a = planted_matrix_with_sigma(5, {2, 1, 0}, 39);
  const QMatrix api = qmat_pinv(a);
  CHECK(rel_diff(qmat_mul(qmat_mul(a, api), a), a) < 1e-9);
}

TEST_CASE("pinv of pinv returns the original") {
  const QMatrix a = random_gaussian(4, 3, 40);
  CHECK(rel_diff(qmat_pinv(qmat_pinv(a)), a) < 1e-9);
}

TEST_CASE("spectral_norm and condition_number") {
  const QMatrix d = diag_real({2, 1});
  CHECK(spectral_norm(d) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(condition_number(d) == doctest::Approx(2.0).epsilon(1e-12));

  const QMatrix q = orthonormal_range(random_gaussian(7, 3, 41));
  CHECK(condition_number(q) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(condition_number(diag_real({1, 0})) == std::numeric_limits<double>::infinity());
}

TEST_CASE("condition via qsvd equals condition of the complex representation") {
  const QMatrix a = random_gaussian(8, 3, 42);
  const auto f = qsvd(a);
  const ComplexSvd cf = complex_svd(to_full(a));
  const double k_q = f.sigma.front() / f.sigma.back();
  const double k_chi = cf.s(0) / cf.s(cf.s.size() - 1);
  CHECK(k_q == doctest::Approx(k_chi).epsilon(1e-10));
}

TEST_CASE("frobenius energy equals singular value energy") {
  const QMatrix a = random_gaussian(6, 5, 43);
  const auto f = qsvd(a);
  double e = 0.0;
  for (double s : f.sigma) e += s * s;
  CHECK(a.fro_norm() * a.fro_norm() == doctest::Approx(e).epsilon(1e-10));
}

TEST_SUITE_END();
