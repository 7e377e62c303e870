#include "qlra/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qlra/errors.hpp"
#include "qlra/factorizations.hpp"
#include "qlra/rng.hpp"

namespace qlra {

namespace {

// Independent substream per trial keeps results order-independent.
std::uint64_t trial_seed(std::uint64_t seed, Index trial) {
  return CounterRng(seed).substream(static_cast<std::uint64_t>(trial)).key();
}

struct MeanStdErr {
  double mean = 0.0;
  double std_err = 0.0;
};

MeanStdErr mean_std_err(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : xs) var += (v - mean) * (v - mean);
  var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

double quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  double pos = std::ceil(q * static_cast<double>(xs.size())) - 1.0;
  pos = std::clamp(pos, 0.0, static_cast<double>(xs.size()) - 1.0);
  return xs[static_cast<std::size_t>(pos)];
}

// Orthonormal basis of the numerical range (columns with sigma above the
// pseudoinverse cutoff).
QMatrix range_basis(const QMatrix& m, const char* who) {
  const QsvdFactors f = qsvd(m);
  const double smax = f.sigma.empty() ? 0.0 : f.sigma.front();
  const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                     std::numeric_limits<double>::epsilon() * smax;
  Index rank = 0;
  while (rank < static_cast<Index>(f.sigma.size()) &&
         f.sigma[static_cast<std::size_t>(rank)] > tol)
    ++rank;
  if (rank < m.cols())
    throw RankError(std::string(who) + ": input lacks full column rank");
  return f.u;
}

}  // namespace

SpectrumTail spectrum_tail(std::vector<double> sigma, Index r) {
  SpectrumTail out;
  out.r = r;
  double acc = 0.0;
  for (Index i = r; i < static_cast<Index>(sigma.size()); ++i)
    acc += sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)];
  out.tail_fro = std::sqrt(acc);
  out.tail_spec =
      r < static_cast<Index>(sigma.size()) ? sigma[static_cast<std::size_t>(r)] : 0.0;
  out.sigma = std::move(sigma);
  return out;
}

double relative_error(const QMatrix& a, const ApproxResult& approx) {
  const double na = a.fro_norm();
  if (!(na > 0.0)) throw ParameterError("relative_error: zero reference matrix");
  return (a - approx_reconstruct(approx)).fro_norm() / na;
}

double range_distance(const QMatrix& h, const QMatrix& y) {
  if (h.rows() != y.rows()) throw ShapeError("range_distance: row mismatch");
  const QMatrix uh = range_basis(h, "range_distance");
  const QMatrix uy = range_basis(y, "range_distance");
  const QMatrix ph = qmat_mul(uh, uh.adjoint());
  const QMatrix py = qmat_mul(uy, uy.adjoint());
  return (ph - py).fro_norm();
}

double f_ratio(Index n, Index m) {
  return 4.0 * static_cast<double>(n) / (4.0 * static_cast<double>(m - n) + 2.0);
}

double gaussian_qb_bound(Index r, Index s, Index l, double tail_fro) {
  if (!(l > s && s > r && r >= 0))
    throw ParameterError("gaussian_qb_bound: need l > s > r");
  const double via_f = (1.0 + f_ratio(s, l)) * (1.0 + f_ratio(r, s));
  const double closed = (2.0 * static_cast<double>(l) + 1.0) /
                        (2.0 * static_cast<double>(l - s) + 1.0) *
                        (2.0 * static_cast<double>(s) + 1.0) /
                        (2.0 * static_cast<double>(s - r) + 1.0);
  if (std::abs(via_f - closed) > 1e-12 * closed)
    throw Error("gaussian_qb_bound: internal form mismatch");
  return closed * tail_fro * tail_fro;
}

double fixed_rank_bound(Index r, Index s, Index l, double kappa_h, double tail_fro) {
  if (!(l > s && s > r && r >= 0))
    throw ParameterError("fixed_rank_bound: need l > s > r");
  if (!(kappa_h >= 1.0)) throw ParameterError("fixed_rank_bound: kappa must be >= 1");
  const double coeff = (1.0 + f_ratio(s, l)) * (1.0 + f_ratio(r, s));
  return ((1.0 + kappa_h) * std::sqrt(coeff) + kappa_h) * tail_fro;
}

std::string bound_report_csv_header() { return "metric,theory,empirical,std_err,trials,pass"; }

std::string to_csv_row(const BoundReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << r.metric << ',' << r.theory << ',' << r.empirical << ',' << r.std_err << ','
     << r.trials << ',' << (r.pass ? 1 : 0);
  return os.str();
}

BoundReport mc_check_sgt(const QMatrix& s_mat, const QMatrix& t_mat, Index trials,
                         std::uint64_t seed) {
  if (trials < 100) throw ParameterError("mc_check_sgt: trials must be >= 100");
  const Index g_rows = s_mat.cols(), g_cols = t_mat.rows();
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(trials));
  for (Index t = 0; t < trials; ++t) {
    const TestMatrixSpec spec{TestMatrixKind::kGaussian, g_rows, g_cols,
                              trial_seed(seed, t), 1.0};
    const QMatrix g = gen_test_matrix(spec);
    const double v = qmat_mul(qmat_mul(s_mat, g), t_mat).fro_norm();
    vals.push_back(v * v);
  }
  const auto [mean, se] = mean_std_err(vals);
  const double sn = s_mat.fro_norm(), tn = t_mat.fro_norm();
  BoundReport rep;
  rep.metric = "sgt_fro_sq";
  rep.theory = 4.0 * sn * sn * tn * tn;
  rep.empirical = mean;
  rep.std_err = se;
  rep.trials = trials;
  rep.pass = std::abs(mean - rep.theory) <= 3.0 * se;
  return rep;
}

BoundReport mc_check_pinv_norm(Index m, Index n, Index trials, std::uint64_t seed) {
  if (!(m < n)) throw ParameterError("mc_check_pinv_norm: requires m < n");
  if (trials < 200) throw ParameterError("mc_check_pinv_norm: trials must be >= 200");
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(trials));
  for (Index t = 0; t < trials; ++t) {
    const TestMatrixSpec spec{TestMatrixKind::kGaussian, m, n, trial_seed(seed, t), 1.0};
    const std::vector<double> sv = singular_values(gen_test_matrix(spec));
    double acc = 0.0;
    for (double s : sv) acc += 1.0 / (s * s);
    vals.push_back(acc);
  }
  const auto [mean, se] = mean_std_err(vals);
  BoundReport rep;
  rep.metric = "pinv_fro_sq_" + std::to_string(m) + "x" + std::to_string(n);
  rep.theory = static_cast<double>(m) / (4.0 * static_cast<double>(n - m) + 2.0);
  rep.empirical = mean;
  rep.std_err = se;
  rep.trials = trials;
  rep.pass = std::abs(mean - rep.theory) <= 3.0 * se;
  return rep;
}

std::vector<BoundReport> ExtremeSingvalReport::rows() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : min_ratio) lo = std::min(lo, v);
  for (double v : max_ratio) hi = std::max(hi, v);
  BoundReport rmin{"singval_min_ratio", envelope_lo, lo, 0.0, trials, lo >= envelope_lo};
  BoundReport rmax{"singval_max_ratio", envelope_hi, hi, 0.0, trials, hi <= envelope_hi};
  return {rmin, rmax};
}

ExtremeSingvalReport mc_extreme_singvals(Index n_rows, Index n_cols, Index trials,
                                         std::uint64_t seed, TestMatrixKind kind) {
  if (!(n_rows > 4 * n_cols))
    throw ParameterError("mc_extreme_singvals: requires N > 4n");
  ExtremeSingvalReport rep;
  rep.trials = trials;
  const double scale = 2.0 * std::sqrt(static_cast<double>(n_rows));
  const double fit = 2.0 * std::sqrt(static_cast<double>(n_cols) /
                                     static_cast<double>(n_rows));
  rep.envelope_lo = 1.0 - fit - 0.1;
  rep.envelope_hi = 1.0 + fit + 0.1;
  bool ok = true;
  for (Index t = 0; t < trials; ++t) {
    const TestMatrixSpec spec{kind, n_rows, n_cols, trial_seed(seed, t), 1.0};
    const std::vector<double> sv = singular_values(gen_test_matrix(spec));
    const double rmin = sv.back() / scale;
    const double rmax = sv.front() / scale;
    rep.min_ratio.push_back(rmin);
    rep.max_ratio.push_back(rmax);
    ok = ok && rmin >= rep.envelope_lo && rmax <= rep.envelope_hi;
  }
  rep.pass = ok;
  return rep;
}

std::vector<BoundReport> AvOmegaReport::rows() const {
  BoundReport row{"avomega_q99_s" + std::to_string(sketch_cols), 0.0, q99, 0.0, trials,
                  true};
  return {row};
}

AvOmegaReport mc_check_avomega(const QMatrix& a, const QMatrix& v, Index s,
                               Index trials, std::uint64_t seed) {
  if (a.cols() != v.rows()) throw ShapeError("mc_check_avomega: A and V do not conform");
  const QMatrix gram = qmat_mul(v, v.adjoint());
  double defect = 0.0;
  for (Index i = 0; i < gram.rows(); ++i)
    for (Index j = 0; j < gram.cols(); ++j) {
      Quaternion g = gram(i, j);
      if (i == j) g.w -= 1.0;
      defect += g.norm_sq();
    }
  if (std::sqrt(defect) > 1e-8)
    throw PreconditionError("mc_check_avomega: V is not row-orthonormal");

  const double na = a.fro_norm();
  const double denom = 2.0 * std::sqrt(static_cast<double>(s)) * na;
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(trials));
  for (Index t = 0; t < trials; ++t) {
    const TestMatrixSpec spec{TestMatrixKind::kGaussian, v.cols(), s,
                              trial_seed(seed, t), 1.0};
    const double num = qmat_mul(a, qmat_mul(v, gen_test_matrix(spec))).fro_norm();
    ratios.push_back(na > 0.0 ? num / denom : 0.0);
  }
  AvOmegaReport rep;
  rep.trials = trials;
  rep.sketch_cols = s;
  rep.q50 = quantile(ratios, 0.50);
  rep.q99 = quantile(ratios, 0.99);
  return rep;
}

}  // namespace qlra
