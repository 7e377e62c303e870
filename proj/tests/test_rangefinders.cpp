#include <doctest.h>

#include <cmath>

#include "oracle_jacobi.hpp"
#include "qlra/analysis.hpp"
#include "qlra/complex_bridge.hpp"
#include "qlra/errors.hpp"
#include "qlra/rangefinders.hpp"
#include "qlra/synthetic.hpp"
#include "test_helpers.hpp"

using namespace qlra;
using namespace qlra::testing;

TEST_SUITE_BEGIN("rangefinders");

TEST_CASE("pseudo_qr: orthonormal sketch passes through unchanged") {
  const QMatrix y = orthonormal_range(random_gaussian(20, 5, 51));
  const auto rep = pseudo_qr(y);
  CHECK(rel_diff(rep.h, y) < 1e-12);
  CHECK(rep.correction_steps_used == 0);
  CHECK(rep.kappa_after == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pseudo_qr: single column normalizes") {
  QMatrix y(2, 1);
  y.w(0, 0) = 3.0;
  const auto rep = pseudo_qr(y);
  CHECK(rep.h(0, 0) == Quaternion{1, 0, 0, 0});
  CHECK(rep.h(1, 0) == Quaternion{0, 0, 0, 0});
  CHECK(rep.kappa_after == doctest::Approx(1.0));
}

TEST_CASE("pseudo_qr: kappa 1e6 sketch lands under 10 with preserved range") {
  const QMatrix y = planted_conditioned_matrix(200, 20, 1e6, 52);
  const auto rep = pseudo_qr(y);
  CHECK(rep.kappa_after < 10.0);
  CHECK(rep.correction_steps_used <= 3);
  CHECK(range_distance(rep.h, y) < 1e-8);
}

TEST_CASE("pseudo_qr: rank-deficient sketch refused with advice") {
  QMatrix y = random_gaussian(12, 3, 53);
  QMatrix yy(12, 4);
  for (Index i = 0; i < 12; ++i) {
    for (Index j = 0; j < 3; ++j) yy.set(i, j, y(i, j));
    yy.set(i, 3, y(i, 1));  // duplicated column
  }
  CHECK_THROWS_AS(pseudo_qr(yy), RankError);
  CHECK_THROWS_AS(pseudo_qr(random_gaussian(3, 5, 54)), ParameterError);
}

TEST_CASE("correction_step: fixed point at orthonormal H") {
  const QMatrix h = orthonormal_range(random_gaussian(15, 4, 55));
  CHECK(rel_diff(correction_step(h, 0.3), h) < 1e-12);
}

TEST_CASE("correction_step: scalar formula") {
  const QMatrix h1 = correction_step(scalar(2), 0.5);
  CHECK(h1(0, 0).w == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("correction_step: diag(1, 0.01) with eps=0.01") {
  const QMatrix h = diag_real({1.0, 0.01});
  const QMatrix hn = correction_step(h, 0.01);
  // f(x) = (1-eps)x + eps/x at both singular values
  CHECK(hn.w(0, 0) == doctest::Approx(0.99 + 0.01).epsilon(1e-12));
  CHECK(hn.w(1, 1) == doctest::Approx(0.99 * 0.01 + 1.0).epsilon(1e-12));
  CHECK(condition_number(hn) < 10.0);
}

TEST_CASE("correction_step: epsilon domain enforced") {
  CHECK_THROWS_AS(correction_step(scalar(2), 0.0), ParameterError);
  CHECK_THROWS_AS(correction_step(scalar(2), 1.0), ParameterError);
}

TEST_CASE("estimate_epsilon: known smallest singular value") {
  const double eps = estimate_epsilon(diag_real({2.0, 0.5}), 3);
  CHECK(eps >= 0.5 - 1e-9);
  CHECK(eps <= 0.6);
}

TEST_CASE("estimate_epsilon: orthonormal input clamps just below 1") {
  const QMatrix h = orthonormal_range(random_gaussian(12, 3, 56));
  const double eps = estimate_epsilon(h, 3);
  CHECK(eps == doctest::Approx(0.999));
}

TEST_CASE("estimate_epsilon: planted 1e-3 floor recovered within budget") {
  const QMatrix h = planted_matrix_with_sigma(50, {1.0, 0.7, 0.1, 1e-3}, 57);
  const double eps = estimate_epsilon(h, 3);
  CHECK(eps >= 1e-3 - 1e-12);
  CHECK(eps <= 1.2e-3);
}

TEST_CASE("pseudo_svd: single column normalizes") {
  QMatrix y(2, 1);
  y.w(0, 0) = 3.0;
  const auto rep = pseudo_svd(y);
  CHECK(rel_diff(rep.h, pseudo_qr(y).h) < 1e-14);
  CHECK_THROWS_AS(pseudo_svd(random_gaussian(3, 3, 58)), ParameterError);
}

TEST_CASE("pseudo_svd: distinct spectrum goes through the good path") {
  std::vector<double> sigma(10);
  for (int i = 0; i < 10; ++i) sigma[static_cast<std::size_t>(i)] = std::pow(0.7, i);
  const QMatrix y = planted_matrix_with_sigma(100, sigma, 59);
  const auto rep = pseudo_svd(y);
  CHECK(orthonormality_defect(rep.h) < 1e-10);
  // Same range: the planted Y is reconstructed by projecting onto H.
  const QMatrix proj = qmat_mul(rep.h, qmat_mul(rep.h.adjoint(), y));
  CHECK((proj - y).fro_norm() < 1e-10 * y.fro_norm());
  // Good path keeps the QSVD usable for reconstruction.
  const auto f = qsvd(y);
  CHECK((y - qsvd_reconstruct(f)).fro_norm() < 1e-10 * y.fro_norm());
}

TEST_CASE("pseudo_svd: ill-conditioned duplicated spectrum takes the bad path") {
  std::vector<double> sigma{1, 1, 0.5, 0.3, 0.1, 1e-6, 1e-10, 1e-14, 1e-14, 1e-14};
  const QMatrix y = planted_matrix_with_sigma(100, sigma, 60);
  const auto rep = pseudo_svd(y);
  CHECK(orthonormality_defect(rep.h) < 1e-8);
  const QMatrix proj = qmat_mul(rep.h, qmat_mul(rep.h.adjoint(), y));
  CHECK((proj - y).fro_norm() <= 1e-6 * y.fro_norm());
}

TEST_CASE("pseudo_svd: both bad-block branches produce orthonormal bases") {
  // Small bad block: one duplicated pair inside s=8 (t=2 <= ceil(s/2)).
  const QMatrix y_svd_path =
      planted_matrix_with_sigma(80, {1, 1, 0.5, 0.4, 0.3, 0.2, 0.15, 0.1}, 61);
  CHECK(orthonormality_defect(pseudo_svd(y_svd_path).h) < 1e-8);

  // Large cluster: six duplicated ones out of s=8 (t=6 > ceil(s/2)).
  const QMatrix y_mgs_path =
      planted_matrix_with_sigma(80, {1, 1, 1, 1, 1, 1, 0.5, 0.25}, 62);
  const auto rep = pseudo_svd(y_mgs_path);
  CHECK(orthonormality_defect(rep.h) < 1e-8);
  const QMatrix proj = qmat_mul(rep.h, qmat_mul(rep.h.adjoint(), y_mgs_path));
  CHECK((proj - y_mgs_path).fro_norm() < 1e-8 * y_mgs_path.fro_norm());
}

TEST_CASE("pre-correction spectrum structure with jacobi cross-check") {
  PseudoQrConfig raw;
  raw.max_correction_steps = 0;
  for (Index s = 3; s <= 8; ++s) {
    const QMatrix y =
        planted_conditioned_matrix(12 * s, s, 1e4, 63 + static_cast<std::uint64_t>(s));
    const auto rep = pseudo_qr(y, raw);
    const auto sv = singular_values(rep.h);
    CHECK(sv.front() <= std::sqrt(2.0) + 1e-10);
    double energy = 0.0;
    for (double v : sv) energy += v * v;
    CHECK(energy == doctest::Approx(static_cast<double>(s)).epsilon(1e-10));
    for (Index i = 0; i < s; ++i) {
      const double pair = sv[static_cast<std::size_t>(i)] * sv[static_cast<std::size_t>(i)] +
                          sv[static_cast<std::size_t>(s - 1 - i)] * sv[static_cast<std::size_t>(s - 1 - i)];
      CHECK(pair == doctest::Approx(2.0).epsilon(1e-6));
    }
    // Brute-force eigenvalues of chi_H^* chi_H agree with the squared values.
    const CMatrix chi = to_full(rep.h);
    const auto ev = hermitian_eigenvalues_jacobi(chi.adjoint() * chi);
    for (Index i = 0; i < s; ++i)
      CHECK(sv[static_cast<std::size_t>(i)] ==
            doctest::Approx(std::sqrt(std::max(0.0, ev[2 * static_cast<std::size_t>(i)])))
                .epsilon(1e-8));
  }
}

TEST_CASE("correction contracts kappa below its square root") {
  PseudoQrConfig raw;
  raw.max_correction_steps = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const double kappa_y = std::pow(10.0, 3 + trial);
    QMatrix h =
        pseudo_qr(planted_conditioned_matrix(120, 12, kappa_y, 70 + static_cast<std::uint64_t>(trial)), raw)
            .h;
    double kappa = condition_number(h);
    for (int step = 0; step < 3 && kappa > 10.0; ++step) {
      const double eps = estimate_epsilon(h, 3);
      h = correction_step(h, eps);
      const double next = condition_number(h);
      if (kappa > 4.0) CHECK(next < std::sqrt(kappa) + 1e-9);
      kappa = next;
    }
    CHECK(kappa < 10.0);
  }
}

TEST_CASE("range preserved by both rangefinders across conditioning") {
  for (double kappa : {1e2, 1e6}) {
    const QMatrix y = planted_conditioned_matrix(150, 15, kappa, 80);
    CHECK(range_distance(pseudo_qr(y).h, y) <= 1e-7);
    CHECK(range_distance(pseudo_svd(y).h, y) <= 1e-7);
  }
  const QMatrix hard = planted_conditioned_matrix(150, 15, 1e12, 81);
  CHECK(range_distance(pseudo_svd(hard).h, hard) <= 1e-7);
}

TEST_CASE("reports carry the condition bookkeeping") {
  const QMatrix y = planted_conditioned_matrix(100, 10, 1e5, 82);
  const auto rep = pseudo_qr(y);
  CHECK(rep.kappa_before >= rep.kappa_after);
  CHECK(rep.kappa_after >= 1.0);
  CHECK(rep.method == RangefinderMethod::kPseudoQr);
  const auto rep2 = pseudo_svd(y);
  CHECK(rep2.kappa_before == doctest::Approx(1e5).epsilon(1e-6));
  CHECK(rep2.method == RangefinderMethod::kPseudoSvd);
}

TEST_SUITE_END();
