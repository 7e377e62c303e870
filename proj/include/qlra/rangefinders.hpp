#ifndef QLRA_RANGEFINDERS_HPP
#define QLRA_RANGEFINDERS_HPP

#include <cstdint>
#include <optional>

#include "qlra/factorizations.hpp"
#include "qlra/qmatrix.hpp"

namespace qlra {

enum class RangefinderMethod { kPseudoQr, kPseudoSvd };

struct RangefinderReport {
  QMatrix h;
  double kappa_before = 0.0;  // pseudo-QR: cond. of H before correction; pseudo-SVD: cond. of Y
  double kappa_after = 0.0;
  int correction_steps_used = 0;
  RangefinderMethod method = RangefinderMethod::kPseudoQr;
  std::optional<double> range_distance;  // ||HH^+ - YY^+||_F, filled on request
};

struct PseudoQrConfig {
  int max_correction_steps = 3;
  int power_iters_for_epsilon = 3;
  double delta_budget = 1.2;  // admissible inexactness of the sigma_min estimate, in [1, sqrt(7)/2]
};

constexpr std::uint64_t kDefaultRangefinderSeed = 0x9E3779B9;

// Non-orthonormal but well-conditioned rangefinder. H is read off the thin QR
// of the compact representation of Y, so the compact columns of H are exactly
// orthonormal and all singular values of H lie in (0, sqrt(2)]. Each
// correction step H <- (1-eps)H + eps*(H^+)* contracts kappa below its square
// root while kappa > 4; three steps bring kappa under 10 from anywhere below
// 1e8. Steps stop early once kappa <= 10.
//
// Throws RankError when Y is numerically rank-deficient (pseudo_svd handles
// that regime).
RangefinderReport pseudo_qr(const QMatrix& y, const PseudoQrConfig& cfg = {});

// One correction step; requires epsilon in (0,1) and full-column-rank H.
// (H^+)* is obtained by solving the small system chi_{H*H} Z = (H*)_c rather
// than by any orthogonalization.
QMatrix correction_step(const QMatrix& h, double epsilon);

// Estimate of sigma_min(H) from above via power iteration on (H*H)^{-1},
// applied through linear solves; clamped to (0, 0.999].
double estimate_epsilon(const QMatrix& h, int power_iters);

// Orthonormal rangefinder built from the complex SVD of the full
// representation of Y. Singular-value pairs that survive rounding give
// columns directly; clustered or tiny values are repaired through the
// perturbed-SVD or Gram-Schmidt bad-block routes. Always returns an
// orthonormal H; for rank-deficient Y, range(H) contains range(Y).
RangefinderReport pseudo_svd(const QMatrix& y,
                             std::uint64_t seed = kDefaultRangefinderSeed);

// pseudo_svd's pipeline without the m > s requirement (square inputs
// allowed); used where an orthonormal basis of a full-size matrix is needed.
QMatrix orthonormal_range(const QMatrix& y,
                          std::uint64_t seed = kDefaultRangefinderSeed);

}  // namespace qlra

#endif
