#include <doctest.h>

#include "qlra/complex_bridge.hpp"
#include "qlra/errors.hpp"
#include "qlra/factorizations.hpp"
#include "test_helpers.hpp"

using namespace qlra;
using namespace qlra::testing;
using Complex = std::complex<double>;

TEST_SUITE_BEGIN("complex-bridge");

TEST_CASE("to_compact: scalar i and j") {
  const CMatrix ci = to_compact(scalar(0, 1, 0, 0));
  CHECK(ci(0, 0) == Complex(0, 1));
  CHECK(ci(1, 0) == Complex(0, 0));

  const CMatrix cj = to_compact(scalar(0, 0, 1, 0));
  CHECK(cj(0, 0) == Complex(0, 0));
  CHECK(cj(1, 0) == Complex(-1, 0));
}

TEST_CASE("to_compact preserves the Frobenius norm") {
  const QMatrix a = random_gaussian(4, 3, 5);
  CHECK(to_compact(a).norm() == doctest::Approx(a.fro_norm()).epsilon(1e-14));
}

TEST_CASE("from_compact inverts to_compact") {
  CHECK(from_compact(to_compact(scalar(1)))(0, 0) == Quaternion{1, 0, 0, 0});
  CMatrix z(2, 1);
  z << Complex(0, 0), Complex(-1, 0);
  CHECK(from_compact(z)(0, 0) == Quaternion{0, 0, 1, 0});

  const QMatrix a = random_gaussian(4, 3, 6);
  CHECK(rel_diff(from_compact(to_compact(a)), a) == 0.0);

  CHECK_THROWS_AS(from_compact(CMatrix::Zero(3, 2)), ShapeError);
}

TEST_CASE("to_full: scalar cases") {
  const CMatrix xi = to_full(scalar(0, 1, 0, 0));
  CHECK(xi(0, 0) == Complex(0, 1));
  CHECK(xi(0, 1) == Complex(0, 0));
  CHECK(xi(1, 0) == Complex(0, 0));
  CHECK(xi(1, 1) == Complex(0, -1));

  CHECK((to_full(scalar(1)) - CMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("to_full is a ring homomorphism") {
  const QMatrix a = random_gaussian(3, 4, 7);
  const QMatrix b = random_gaussian(4, 2, 8);
  const CMatrix lhs = to_full(qmat_mul(a, b));
  const CMatrix rhs = to_full(a) * to_full(b);
  CHECK((lhs - rhs).norm() < 1e-13 * rhs.norm());
}

TEST_CASE("to_full second block column is J conj of the compact part") {
  const QMatrix a = random_gaussian(3, 2, 9);
  const CMatrix chi = to_full(a);
  const CMatrix qc = to_compact(a);
  CHECK((chi.leftCols(2) - qc).norm() == 0.0);
  CHECK((chi.rightCols(2) - j_mul_conj(qc)).norm() == 0.0);
  // ||chi||_F = sqrt(2) ||A||_F
  CHECK(chi.norm() == doctest::Approx(std::sqrt(2.0) * a.fro_norm()).epsilon(1e-14));
}

TEST_CASE("j_mul_conj: block swap, sign, involution up to -1") {
  CMatrix e1 = CMatrix::Zero(4, 1);
  e1(0, 0) = 1.0;
  CMatrix r = j_mul_conj(e1);
  CHECK(r(2, 0) == Complex(1, 0));
  CHECK(r.norm() == doctest::Approx(1.0));

  const QMatrix a = random_gaussian(3, 2, 10);
  const CMatrix u = to_compact(a);
  CHECK((j_mul_conj(j_mul_conj(u)) + u).norm() < 1e-15);
  CHECK_THROWS_AS(j_mul_conj(CMatrix::Zero(5, 1)), ShapeError);
}

TEST_CASE("every column is orthogonal to its J-conjugate") {
  const QMatrix a = random_gaussian(4, 3, 11);
  const CMatrix u = to_compact(a);
  const CMatrix ju = j_mul_conj(u);
  for (Eigen::Index c = 0; c < u.cols(); ++c)
    CHECK(std::abs(u.col(c).dot(ju.col(c))) < 1e-14 * u.col(c).squaredNorm());
}

TEST_CASE("solve_quaternion_linear: scalar systems") {
  const QMatrix x1 = solve_quaternion_linear(scalar(1), scalar(0, 1, 0, 0));
  CHECK(rel_diff(x1, scalar(0, 1, 0, 0)) < 1e-14);

  // j * (-i) = k
  const QMatrix x2 = solve_quaternion_linear(scalar(0, 0, 1, 0), scalar(0, 0, 0, 1));
  CHECK(rel_diff(x2, scalar(0, -1, 0, 0)) < 1e-14);
}

TEST_CASE("solve_quaternion_linear: consistent overdetermined system") {
  const QMatrix a = random_gaussian(6, 4, 12);
  const QMatrix x0 = random_gaussian(4, 3, 13);
  const QMatrix b = qmat_mul(a, x0);
  const QMatrix x = solve_quaternion_linear(a, b);
  CHECK(rel_diff(x, x0) < 1e-10);
}

TEST_CASE("solve_quaternion_linear: residual scales with conditioning") {
  const QMatrix a = random_gaussian(5, 5, 14);
  const QMatrix b = random_gaussian(5, 2, 15);
  const QMatrix x = solve_quaternion_linear(a, b);
  const double kappa_chi = condition_number(a);
  CHECK((qmat_mul(a, x) - b).fro_norm() <= 1e-10 * kappa_chi * b.fro_norm());
}

TEST_CASE("solve_quaternion_linear: singular and shape errors") {
  CHECK_THROWS_AS(solve_quaternion_linear(QMatrix(3, 3), random_gaussian(3, 1, 16)),
                  SingularMatrixError);
  try {
    solve_quaternion_linear(QMatrix(3, 3), random_gaussian(3, 1, 16));
    CHECK(false);
  } catch (const SingularMatrixError& e) {
    CHECK(e.estimated_condition > 1e14);
  }
  CHECK_THROWS_AS(
      solve_quaternion_linear(random_gaussian(2, 4, 17), random_gaussian(2, 1, 18)),
      ShapeError);
}

TEST_CASE("chi commutes with adjoint") {
  const QMatrix a = random_gaussian(4, 3, 19);
  CHECK((to_full(a.adjoint()) - to_full(a).adjoint()).norm() == 0.0);
}

TEST_CASE("chi commutes with the pseudoinverse (Penrose equations)") {
  const QMatrix a = random_gaussian(5, 3, 20);
  const CMatrix m = to_full(a);
  const CMatrix x = to_full(qmat_pinv(a));
  const double na = m.norm(), nx = x.norm();
  CHECK((m * x * m - m).norm() < 1e-10 * na);
  CHECK((x * m * x - x).norm() < 1e-10 * nx);
  CHECK(((m * x).adjoint() - m * x).norm() < 1e-10);
  CHECK(((x * m).adjoint() - x * m).norm() < 1e-10);
}

TEST_CASE("J P J* = conj(P) for projectors of J-paired bases") {
  const QMatrix a = random_gaussian(4, 2, 21);
  const CMatrix u = to_compact(a);  // 8 x 2
  CMatrix m(8, 4);
  m.leftCols(2) = u;
  m.rightCols(2) = j_mul_conj(u);
  const ComplexSvd svd = complex_svd(m);
  Eigen::Index rank = 0;
  while (rank < svd.s.size() && svd.s(rank) > 1e-12 * svd.s(0)) ++rank;
  const CMatrix basis = svd.u.leftCols(rank);
  const CMatrix p = basis * basis.adjoint();

  // J P J^* assembled blockwise from P's quadrants.
  const Eigen::Index h = 4;
  CMatrix jp(8, 8);
  jp.topRows(h) = -p.bottomRows(h);
  jp.bottomRows(h) = p.topRows(h);
  CMatrix jpjs(8, 8);
  jpjs.leftCols(h) = -jp.rightCols(h);
  jpjs.rightCols(h) = jp.leftCols(h);
  CHECK((jpjs - p.conjugate()).norm() < 1e-12);
}

TEST_SUITE_END();
