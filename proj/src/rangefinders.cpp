#include "qlra/rangefinders.hpp"

#include <cmath>

#include "qlra/complex_bridge.hpp"
#include "qlra/errors.hpp"

namespace qlra {

namespace {

constexpr double kKappaTarget = 10.0;
constexpr double kEpsilonClamp = 0.999;
const double kDeltaMax = std::sqrt(7.0) / 2.0;

CMatrix jconj(const CMatrix& u) { return j_mul_conj(u); }

QMatrix assemble_orthonormal_basis(const QMatrix& y, std::uint64_t seed) {
  const Index s = y.cols();
  const CMatrix chi = to_full(y);
  const ComplexSvd svd = complex_svd(chi);
  const detail::PairSplit split = detail::split_singular_pairs(svd.s);

  CMatrix compact(chi.rows(), s);
  CMatrix good(chi.rows(), 2 * static_cast<Eigen::Index>(split.good.size()));
  Eigen::Index filled = 0;
  for (std::size_t i = 0; i < split.good.size(); ++i) {
    compact.col(filled) = svd.u.col(split.good[i]);
    good.col(2 * static_cast<Eigen::Index>(i)) = svd.u.col(split.good[i]);
    good.col(2 * static_cast<Eigen::Index>(i) + 1) = jconj(svd.u.col(split.good[i]).eval());
    ++filled;
  }
  if (!split.bad.empty()) {
    CMatrix ub(chi.rows(), static_cast<Eigen::Index>(split.bad.size()));
    for (std::size_t i = 0; i < split.bad.size(); ++i)
      ub.col(static_cast<Eigen::Index>(i)) = svd.u.col(split.bad[i]);
    SequentialRng rng(CounterRng(seed).substream(0x6261645F626C6BULL));
    const CMatrix cu = detail::select_bad_representatives(ub, s, good, rng);
    compact.rightCols(cu.cols()) = cu;
    filled += cu.cols();
  }

  // Polish pass: strip the eps/gap cross-pair leakage so H is orthonormal to
  // machine precision. Columns arrive in descending sigma order, so the
  // corrections land on the least significant directions.
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(2 * static_cast<std::size_t>(s));
  for (Eigen::Index c = 0; c < s; ++c) {
    Eigen::VectorXcd u = compact.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) u -= q * q.dot(u);
    u /= u.norm();
    compact.col(c) = u;
    Eigen::VectorXcd v(u.size());
    const Eigen::Index half = u.size() / 2;
    v.head(half) = -u.tail(half).conjugate();
    v.tail(half) = u.head(half).conjugate();
    basis.push_back(std::move(u));
    basis.push_back(std::move(v));
  }
  return from_compact(compact);
}

}  // namespace

double estimate_epsilon(const QMatrix& h, int power_iters) {
  if (power_iters < 1) throw ParameterError("estimate_epsilon: power_iters must be >= 1");
  const QMatrix gram = qmat_mul(h.adjoint(), h);
  const CMatrix chi_g = to_full(gram);

  Eigen::PartialPivLU<CMatrix> lu(chi_g);
  const double rc = lu.rcond();
  if (!(rc > 1e-15))
    throw SingularMatrixError("estimate_epsilon: H*H numerically singular",
                              rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity());

  // Deterministic start vector; the Rayleigh quotient of (H*H)^{-1} at a unit
  // vector never exceeds 1/sigma_min^2, so the estimate approaches sigma_min
  // from above.
  SequentialRng rng(CounterRng(0x455053ULL).substream(static_cast<std::uint64_t>(chi_g.rows())));
  Eigen::VectorXcd z(chi_g.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    z(i) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  z /= z.norm();

  double rho = 0.0;
  for (int it = 0; it < power_iters; ++it) {
    Eigen::VectorXcd w = lu.solve(z);
    rho = z.dot(w).real();
    const double nw = w.norm();
    if (!(nw > 0.0)) break;
    z = w / nw;
  }
  if (!(rho > 0.0)) throw SingularMatrixError("estimate_epsilon: breakdown", 0.0);
  const double eps = 1.0 / std::sqrt(rho);
  return std::min(eps, kEpsilonClamp);
}

QMatrix correction_step(const QMatrix& h, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ParameterError("correction_step: epsilon must lie in (0,1)");
  const QMatrix gram = qmat_mul(h.adjoint(), h);
  const QMatrix pinv = solve_quaternion_linear(gram, h.adjoint());  // = H^+
  return (1.0 - epsilon) * h + epsilon * pinv.adjoint();
}

RangefinderReport pseudo_qr(const QMatrix& y, const PseudoQrConfig& cfg) {
  if (y.rows() <= y.cols())
    throw ParameterError("pseudo_qr: sketch must be tall (rows > cols)");
  if (cfg.max_correction_steps < 0)
    throw ParameterError("pseudo_qr: negative correction step count");
  if (!(cfg.delta_budget >= 1.0 && cfg.delta_budget <= kDeltaMax + 1e-12))
    throw ParameterError("pseudo_qr: delta_budget outside [1, sqrt(7)/2]");

  const ComplexQr qr = complex_qr(to_compact(y));
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < qr.r.rows(); ++k) {
    const double d = std::abs(qr.r(k, k));
    rmax = std::max(rmax, d);
    rmin = std::min(rmin, d);
  }
  if (!(rmin > 1e-14 * rmax))
    throw RankError("pseudo_qr: sketch numerically rank-deficient; use pseudo_svd");

  RangefinderReport rep;
  rep.method = RangefinderMethod::kPseudoQr;
  rep.h = from_compact(qr.q);
  rep.kappa_before = condition_number(rep.h);

  double kappa = rep.kappa_before;
  try {
    while (rep.correction_steps_used < cfg.max_correction_steps && kappa > kKappaTarget) {
      const double eps = estimate_epsilon(rep.h, cfg.power_iters_for_epsilon);
      rep.h = correction_step(rep.h, eps);
      kappa = condition_number(rep.h);
      ++rep.correction_steps_used;
    }
  } catch (const SingularMatrixError&) {
    throw RankError("pseudo_qr: sketch numerically rank-deficient; use pseudo_svd");
  }

  if (rep.correction_steps_used > 0) {
    // The Gram systems behind the correction steps carry kappa(H)^2, and
    // their solve error has a component outside range(H). Project the result
    // back onto the J-closed span of the initial QR basis; the condition
    // numbers are unaffected while the range becomes exact again.
    CMatrix paired(qr.q.rows(), 2 * y.cols());
    paired.leftCols(y.cols()) = qr.q;
    paired.rightCols(y.cols()) = jconj(qr.q);
    const ComplexQr basis = complex_qr(paired);
    const CMatrix hc = to_compact(rep.h);
    rep.h = from_compact(basis.q * (basis.q.adjoint() * hc));
    rep.kappa_after = condition_number(rep.h);
  } else {
    rep.kappa_after = kappa;
  }
  return rep;
}

QMatrix orthonormal_range(const QMatrix& y, std::uint64_t seed) {
  if (y.rows() < y.cols())
    throw ParameterError("orthonormal_range: requires rows >= cols");
  return assemble_orthonormal_basis(y, seed);
}

RangefinderReport pseudo_svd(const QMatrix& y, std::uint64_t seed) {
  if (y.rows() <= y.cols())
    throw ParameterError("pseudo_svd: sketch must be tall (rows > cols)");
  RangefinderReport rep;
  rep.method = RangefinderMethod::kPseudoSvd;
  rep.kappa_before = condition_number(y);
  rep.h = assemble_orthonormal_basis(y, seed);
  rep.kappa_after = condition_number(rep.h);
  rep.correction_steps_used = 0;
  return rep;
}

}  // namespace qlra
