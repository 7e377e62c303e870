#include <doctest.h>

#include "qlra/errors.hpp"
#include "qlra/factorizations.hpp"
#include "qlra/qmatrix.hpp"
#include "test_helpers.hpp"

using namespace qlra;
using namespace qlra::testing;

TEST_SUITE_BEGIN("quaternion-core");

TEST_CASE("unit products follow the defining relations") {
  const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK((i * i) == Quaternion{-1, 0, 0, 0});
  CHECK((i * j) == k);
  CHECK((j * i) == Quaternion{0, 0, 0, -1});
  CHECK((i * j * k) == Quaternion{-1, 0, 0, 0});
}

TEST_CASE("qmat_mul: 1x1 defining relation i*j = k") {
  const QMatrix p = qmat_mul(scalar(0, 1, 0, 0), scalar(0, 0, 1, 0));
  CHECK(p(0, 0) == Quaternion{0, 0, 0, 1});
}

TEST_CASE("qmat_mul: (1+i)(1+j) = 1+i+j+k") {
  const QMatrix p = qmat_mul(scalar(1, 1, 0, 0), scalar(1, 0, 1, 0));
  CHECK(p(0, 0) == Quaternion{1, 1, 1, 1});
}

TEST_CASE("qmat_mul: identity acts trivially") {
  const QMatrix b = random_gaussian(2, 5, 42);
  CHECK(rel_diff(qmat_mul(QMatrix::identity(2), b), b) == doctest::Approx(0.0));
}

TEST_CASE("qmat_mul: shape mismatch rejected") {
  CHECK_THROWS_AS(qmat_mul(random_gaussian(2, 3, 1), random_gaussian(4, 2, 2)), ShapeError);
}

TEST_CASE("qmat_adjoint: scalar conjugation and real transpose") {
  CHECK(qmat_adjoint(scalar(0, 1, 0, 0))(0, 0) == Quaternion{0, -1, 0, 0});

  QMatrix a(2, 3);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j) a.w(i, j) = static_cast<double>(i * 3 + j);
  const QMatrix at = qmat_adjoint(a);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j) CHECK(at.w(j, i) == a.w(i, j));
  CHECK(rel_diff(qmat_adjoint(at), a) == doctest::Approx(0.0));
}

TEST_CASE("qmat_adjoint: (PQ)* = Q* P* on random shapes") {
  const QMatrix p = random_gaussian(3, 4, 7);
  const QMatrix q = random_gaussian(4, 2, 8);
  const QMatrix lhs = qmat_adjoint(qmat_mul(p, q));
  const QMatrix rhs = qmat_mul(qmat_adjoint(q), qmat_adjoint(p));
  CHECK(rel_diff(lhs, rhs) < 1e-14);
}

TEST_CASE("qmat_fro_norm: hand values") {
  CHECK(qmat_fro_norm(scalar(1, 1, 1, 1)) == doctest::Approx(2.0));
  CHECK(qmat_fro_norm(QMatrix(3, 4)) == 0.0);
}

TEST_CASE("qmat_fro_norm: matches singular value energy") {
  const QMatrix a = random_gaussian(5, 3, 99);
  const auto f = qsvd(a);
  double energy = 0.0;
  for (double s : f.sigma) energy += s * s;
  CHECK(a.fro_norm() * a.fro_norm() == doctest::Approx(energy).epsilon(1e-10));
}

TEST_CASE("associativity and distributivity on random conforming triples") {
  const QMatrix a = random_gaussian(3, 4, 1);
  const QMatrix b = random_gaussian(4, 5, 2);
  const QMatrix c = random_gaussian(5, 2, 3);
  CHECK(rel_diff(qmat_mul(qmat_mul(a, b), c), qmat_mul(a, qmat_mul(b, c))) < 1e-12);

  const QMatrix b2 = random_gaussian(4, 5, 4);
  CHECK(rel_diff(qmat_mul(a, b + b2), qmat_mul(a, b) + qmat_mul(a, b2)) < 1e-12);
}

TEST_CASE("submultiplicativity ||AB||_F <= ||A||_2 ||B||_F") {
  const QMatrix a = random_gaussian(4, 4, 11);
  const QMatrix b = random_gaussian(4, 3, 12);
  CHECK(qmat_mul(a, b).fro_norm() <= spectral_norm(a) * b.fro_norm() + 1e-12);
}

TEST_CASE("non-commutativity witness") {
  QMatrix a(2, 2), b(2, 2);
  a.set(0, 0, {0, 1, 0, 0});  // diag(i, 1)
  a.set(1, 1, {1, 0, 0, 0});
  b.set(0, 0, {0, 0, 1, 0});  // diag(j, 1)
  b.set(1, 1, {1, 0, 0, 0});
  CHECK((qmat_mul(a, b) - qmat_mul(b, a)).fro_norm() > 0.1);
}

TEST_CASE("ordered kernel agrees with the plane-GEMM product") {
  const QMatrix a = random_gaussian(7, 9, 21);
  const QMatrix b = random_gaussian(9, 4, 22);
  CHECK(rel_diff(qmat_mul_ordered(a, b), qmat_mul(a, b)) < 1e-13);
}

TEST_CASE("products are reproducible bit for bit") {
  const QMatrix a = random_gaussian(6, 5, 31);
  const QMatrix b = random_gaussian(5, 6, 32);
  CHECK(qmat_mul(a, b).bit_equal(qmat_mul(a, b)));
  CHECK(qmat_mul_ordered(a, b).bit_equal(qmat_mul_ordered(a, b)));
}

TEST_SUITE_END();
