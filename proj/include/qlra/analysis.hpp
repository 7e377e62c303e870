#ifndef QLRA_ANALYSIS_HPP
#define QLRA_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlra/qmatrix.hpp"
#include "qlra/sketching.hpp"

namespace qlra {

// Singular-value tail beyond a cut index r.
struct SpectrumTail {
  std::vector<double> sigma;
  Index r = 0;
  double tail_fro = 0.0;   // sqrt(sum_{i>r} sigma_i^2)
  double tail_spec = 0.0;  // sigma_{r+1}, 0 when r >= length
};

SpectrumTail spectrum_tail(std::vector<double> sigma, Index r);

// ||A - H diag(sigma) V*||_F / ||A||_F. Rejects a zero A.
double relative_error(const QMatrix& a, const ApproxResult& approx);

// Frobenius distance between the orthogonal projectors onto range(H) and
// range(Y). Rejects inputs without full column rank numerically.
double range_distance(const QMatrix& h, const QMatrix& y);

// f(n,m) = 4n / (4(m-n) + 2); the expected squared pseudoinverse norm of an
// m x n quaternion Gaussian matrix is f(n,m)/4.
double f_ratio(Index n, Index m);

// Expected squared QB error coefficient times the squared tail:
// (1+f(s,l)) (1+f(r,s)) tail^2 = (2l+1)/(2(l-s)+1) * (2s+1)/(2(s-r)+1) tail^2.
// The two algebraic forms are evaluated and cross-checked internally.
double gaussian_qb_bound(Index r, Index s, Index l, double tail_fro);

// Expected fixed-rank error coefficient times the tail:
// ((1+kappa) sqrt((1+f(s,l))(1+f(r,s))) + kappa) * tail.
double fixed_rank_bound(Index r, Index s, Index l, double kappa_h, double tail_fro);

struct BoundReport {
  std::string metric;
  double theory = 0.0;
  double empirical = 0.0;
  double std_err = 0.0;
  Index trials = 0;
  bool pass = false;
};

std::string bound_report_csv_header();
std::string to_csv_row(const BoundReport& r);

// Empirical mean of ||S G T||_F^2 over quaternion Gaussian G against the
// exact value 4 ||S||_F^2 ||T||_F^2; passes within a 3-sigma band.
BoundReport mc_check_sgt(const QMatrix& s_mat, const QMatrix& t_mat, Index trials,
                         std::uint64_t seed);

// Empirical mean of ||G^+||_F^2 for m x n quaternion Gaussian G (m < n)
// against m / (4(n-m) + 2); 3-sigma band.
BoundReport mc_check_pinv_norm(Index m, Index n, Index trials, std::uint64_t seed);

// Extreme singular values of N x n quaternion Gaussian/Rademacher samples,
// normalized by 2 sqrt(N). The envelopes use the empirically fitted constant
// 2 and slack 0.1 on sqrt(n/N).
struct ExtremeSingvalReport {
  std::vector<double> min_ratio;  // sigma_min / (2 sqrt N), one per trial
  std::vector<double> max_ratio;
  double envelope_lo = 0.0;
  double envelope_hi = 0.0;
  Index trials = 0;
  bool pass = false;

  std::vector<BoundReport> rows() const;
};

ExtremeSingvalReport mc_extreme_singvals(Index n_rows, Index n_cols, Index trials,
                                         std::uint64_t seed, TestMatrixKind kind);

// Distribution of ||A V Omega||_F / (2 sqrt(s) ||A||_F) over Gaussian Omega.
// V must be row-orthonormal within 1e-8.
struct AvOmegaReport {
  double q50 = 0.0;
  double q99 = 0.0;
  Index trials = 0;
  Index sketch_cols = 0;

  std::vector<BoundReport> rows() const;
};

AvOmegaReport mc_check_avomega(const QMatrix& a, const QMatrix& v, Index s,
                               Index trials, std::uint64_t seed);

}  // namespace qlra

#endif
