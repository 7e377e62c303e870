#ifndef QLRA_SKETCHING_HPP
#define QLRA_SKETCHING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlra/qmatrix.hpp"
#include "qlra/rangefinders.hpp"

namespace qlra {

enum class TestMatrixKind { kGaussian, kRademacher, kSparseGaussian, kSparseRademacher };

std::string to_string(TestMatrixKind kind);
TestMatrixKind test_matrix_kind_from_string(const std::string& name);

// All four real planes draw from independent substreams keyed by
// (seed, plane); entries are addressable by counter, so any row or column
// slice regenerates bit-identically to the full matrix.
struct TestMatrixSpec {
  TestMatrixKind kind = TestMatrixKind::kGaussian;
  Index rows = 0;
  Index cols = 0;
  std::uint64_t seed = 0;
  double density = 1.0;  // sparse kinds only, in (0,1]
};

QMatrix gen_test_matrix(const TestMatrixSpec& spec);
QMatrix gen_test_matrix_rows(const TestMatrixSpec& spec, Index r0, Index r1);
QMatrix gen_test_matrix_cols(const TestMatrixSpec& spec, Index c0, Index c1);

// Two-sketch state: Y = A*Omega (range sketch) and W = Psi*A (co-range
// sketch), with r <= s <= l << min(m,n). Updates are linear in A, so chunks
// of A can be folded in as they stream by and the assembled state matches the
// monolithic sketch bit for bit when chunks arrive in row order.
struct SketchState {
  QMatrix y;  // m x s
  QMatrix w;  // l x n
  TestMatrixSpec omega_spec;  // n x s
  TestMatrixSpec psi_spec;    // l x m
  Index r = 0, s = 0, l = 0;

  Index data_rows() const { return y.rows(); }
  Index data_cols() const { return w.cols(); }
};

SketchState empty_sketch(Index m, Index n, Index r, Index s, Index l,
                         std::uint64_t omega_seed, std::uint64_t psi_seed,
                         TestMatrixKind kind = TestMatrixKind::kGaussian,
                         double density = 1.0);

SketchState make_sketch(const QMatrix& a, Index r, Index s, Index l,
                        std::uint64_t omega_seed, std::uint64_t psi_seed,
                        TestMatrixKind kind = TestMatrixKind::kGaussian,
                        double density = 1.0);

// Additive update A <- A + delta (delta full-shape).
void sketch_update(SketchState& state, const QMatrix& delta);

// Folds in rows [row0, row0 + block.rows()) of A (or an additive update to
// them). Only the matching rows of Y and the matching column slice of Psi
// participate; A never needs to be resident.
void sketch_update_rows(SketchState& state, Index row0, const QMatrix& block);

// Streaming data source; the sketch builder is the only reader.
class MatrixSource {
 public:
  virtual ~MatrixSource() = default;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual QMatrix read_rows(Index r0, Index r1) const = 0;
};

SketchState sketch_from_source(const MatrixSource& source, Index r, Index s, Index l,
                               std::uint64_t omega_seed, std::uint64_t psi_seed,
                               TestMatrixKind kind = TestMatrixKind::kGaussian,
                               double density = 1.0, Index block_rows = 256);

struct StageTimes {
  double sketch_s = 0.0;
  double rangefinder_s = 0.0;
  double solve_s = 0.0;
  double truncate_s = 0.0;
};

struct QbResult {
  QMatrix h;  // m x s
  QMatrix x;  // s x n
  RangefinderReport report;
  double rangefinder_s = 0.0;
  double solve_s = 0.0;
};

// Rank-s stage: H from the rangefinder, then X as the least-squares solution
// of (Psi H) X ~ W. The data matrix is never touched; Psi is regenerated from
// its spec.
QbResult qb_stage(const SketchState& state, RangefinderMethod method,
                  std::uint64_t rangefinder_seed = kDefaultRangefinderSeed,
                  const PseudoQrConfig& qr_cfg = {});

// Same, with an explicitly supplied Psi (tests inject structured ones).
QbResult qb_stage_with_psi(const SketchState& state, const QMatrix& psi,
                           RangefinderMethod method,
                           std::uint64_t rangefinder_seed = kDefaultRangefinderSeed,
                           const PseudoQrConfig& qr_cfg = {});

struct ApproxDiagnostics {
  double kappa_h = 0.0;
  double kappa_before = 0.0;
  int correction_steps = 0;
  std::optional<double> qb_residual;     // ||A - H X||_F, when A was available
  std::optional<double> relative_error;  // ||A - H S V*||_F / ||A||_F, when A was available
  StageTimes times;
};

struct ApproxResult {
  QMatrix h;                  // m x r
  std::vector<double> sigma;  // length r, nonincreasing
  QMatrix v;                  // n x r
  ApproxDiagnostics diagnostics;
};

QMatrix approx_reconstruct(const ApproxResult& res);

// Fixed-rank stage: QSVD of X, keep the leading r triple, fold U_r into H.
ApproxResult truncate_stage(const QMatrix& h, const QMatrix& x, Index r);

struct OnePassOptions {
  Index r = 0;
  Index s = -1;  // defaults to r + 5
  Index l = -1;  // defaults to 2 s
  RangefinderMethod rangefinder = RangefinderMethod::kPseudoQr;
  TestMatrixKind embedding = TestMatrixKind::kGaussian;
  double density = 1.0;
  std::uint64_t omega_seed = 1;
  std::uint64_t psi_seed = 2;
  std::uint64_t rangefinder_seed = kDefaultRangefinderSeed;
  PseudoQrConfig qr_cfg{};
};

ApproxResult one_pass_approx(const QMatrix& a, const OnePassOptions& opts);
ApproxResult one_pass_approx(const SketchState& state, const OnePassOptions& opts);

}  // namespace qlra

#endif
