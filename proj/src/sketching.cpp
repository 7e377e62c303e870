#include "qlra/sketching.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qlra/complex_bridge.hpp"
#include "qlra/errors.hpp"
#include "qlra/rng.hpp"

namespace qlra {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void validate_spec(const TestMatrixSpec& spec) {
  if (spec.rows < 0 || spec.cols < 0) throw ParameterError("test matrix: negative dims");
  if (!(spec.density > 0.0 && spec.density <= 1.0))
    throw ParameterError("test matrix: density must lie in (0,1]");
}

// Four counters per entry: (g1, g2) feed the Gaussian draw, +2 the keep
// decision of sparse kinds, +3 the Rademacher sign.
double entry_value(const CounterRng& stream, TestMatrixKind kind, double density,
                   std::uint64_t idx) {
  const std::uint64_t base = 4 * idx;
  switch (kind) {
    case TestMatrixKind::kGaussian: {
      const double u1 = stream.uniform_at(base);
      const double u2 = stream.uniform_at(base + 1);
      return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
    }
    case TestMatrixKind::kRademacher:
      return (stream.u64_at(base + 3) & 1u) ? 1.0 : -1.0;
    case TestMatrixKind::kSparseGaussian: {
      if (stream.uniform_at(base + 2) >= density) return 0.0;
      const double u1 = stream.uniform_at(base);
      const double u2 = stream.uniform_at(base + 1);
      return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2) /
             std::sqrt(density);
    }
    case TestMatrixKind::kSparseRademacher: {
      if (stream.uniform_at(base + 2) >= density) return 0.0;
      return ((stream.u64_at(base + 3) & 1u) ? 1.0 : -1.0) / std::sqrt(density);
    }
  }
  throw ParameterError("test matrix: unknown kind");
}

QMatrix gen_block(const TestMatrixSpec& spec, Index r0, Index r1, Index c0, Index c1) {
  validate_spec(spec);
  if (r0 < 0 || r1 > spec.rows || c0 < 0 || c1 > spec.cols || r0 > r1 || c0 > c1)
    throw ShapeError("test matrix: block out of range");
  QMatrix m(r1 - r0, c1 - c0);
  const CounterRng root(spec.seed);
  for (int p = 0; p < 4; ++p) {
    const CounterRng stream = root.substream(static_cast<std::uint64_t>(p));
    auto& plane = m.plane(static_cast<QMatrix::Plane>(p));
    std::size_t out = 0;
    for (Index i = r0; i < r1; ++i)
      for (Index j = c0; j < c1; ++j)
        plane[out++] = entry_value(
            stream, spec.kind, spec.density,
            static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(spec.cols) +
                static_cast<std::uint64_t>(j));
  }
  return m;
}

void validate_sketch_sizes(Index m, Index n, Index r, Index s, Index l) {
  if (r < 1 || !(r <= s && s <= l && l <= std::min(m, n)))
    throw ParameterError("sketch sizes must satisfy 1 <= r <= s <= l <= min(m,n)");
}

}  // namespace

std::string to_string(TestMatrixKind kind) {
  switch (kind) {
    case TestMatrixKind::kGaussian: return "gaussian";
    case TestMatrixKind::kRademacher: return "rademacher";
    case TestMatrixKind::kSparseGaussian: return "sparse-gaussian";
    case TestMatrixKind::kSparseRademacher: return "sparse-rademacher";
  }
  return "?";
}

TestMatrixKind test_matrix_kind_from_string(const std::string& name) {
  if (name == "gaussian") return TestMatrixKind::kGaussian;
  if (name == "rademacher") return TestMatrixKind::kRademacher;
  if (name == "sparse-gaussian") return TestMatrixKind::kSparseGaussian;
  if (name == "sparse-rademacher") return TestMatrixKind::kSparseRademacher;
  throw ParameterError("unknown embedding kind: " + name);
}

QMatrix gen_test_matrix(const TestMatrixSpec& spec) {
  return gen_block(spec, 0, spec.rows, 0, spec.cols);
}

QMatrix gen_test_matrix_rows(const TestMatrixSpec& spec, Index r0, Index r1) {
  return gen_block(spec, r0, r1, 0, spec.cols);
}

QMatrix gen_test_matrix_cols(const TestMatrixSpec& spec, Index c0, Index c1) {
  return gen_block(spec, 0, spec.rows, c0, c1);
}

SketchState empty_sketch(Index m, Index n, Index r, Index s, Index l,
                         std::uint64_t omega_seed, std::uint64_t psi_seed,
                         TestMatrixKind kind, double density) {
  validate_sketch_sizes(m, n, r, s, l);
  SketchState st;
  st.y = QMatrix(m, s);
  st.w = QMatrix(l, n);
  st.omega_spec = {kind, n, s, omega_seed, density};
  st.psi_spec = {kind, l, m, psi_seed, density};
  st.r = r;
  st.s = s;
  st.l = l;
  return st;
}

void sketch_update_rows(SketchState& state, Index row0, const QMatrix& block) {
  const Index m = state.data_rows(), n = state.data_cols();
  if (block.cols() != n) throw ShapeError("sketch_update_rows: column count mismatch");
  if (row0 < 0 || row0 + block.rows() > m)
    throw ShapeError("sketch_update_rows: row range out of bounds");
  if (block.rows() == 0) return;

  const QMatrix omega = gen_test_matrix(state.omega_spec);
  QMatrix y_rows = state.y.row_block(row0, row0 + block.rows());
  qmat_mul_accumulate_ordered(y_rows, block, omega);
  state.y.set_row_block(row0, y_rows);

  const QMatrix psi_cols = gen_test_matrix_cols(state.psi_spec, row0, row0 + block.rows());
  qmat_mul_accumulate_ordered(state.w, psi_cols, block);
}

void sketch_update(SketchState& state, const QMatrix& delta) {
  if (delta.rows() != state.data_rows())
    throw ShapeError("sketch_update: row count mismatch");
  sketch_update_rows(state, 0, delta);
}

SketchState make_sketch(const QMatrix& a, Index r, Index s, Index l,
                        std::uint64_t omega_seed, std::uint64_t psi_seed,
                        TestMatrixKind kind, double density) {
  SketchState st = empty_sketch(a.rows(), a.cols(), r, s, l, omega_seed, psi_seed,
                                kind, density);
  sketch_update_rows(st, 0, a);
  return st;
}

SketchState sketch_from_source(const MatrixSource& source, Index r, Index s, Index l,
                               std::uint64_t omega_seed, std::uint64_t psi_seed,
                               TestMatrixKind kind, double density, Index block_rows) {
  if (block_rows < 1) throw ParameterError("sketch_from_source: block_rows must be >= 1");
  SketchState st = empty_sketch(source.rows(), source.cols(), r, s, l, omega_seed,
                                psi_seed, kind, density);
  for (Index r0 = 0; r0 < source.rows(); r0 += block_rows) {
    const Index r1 = std::min(source.rows(), r0 + block_rows);
    sketch_update_rows(st, r0, source.read_rows(r0, r1));
  }
  return st;
}

QbResult qb_stage_with_psi(const SketchState& state, const QMatrix& psi,
                           RangefinderMethod method, std::uint64_t rangefinder_seed,
                           const PseudoQrConfig& qr_cfg) {
  if (psi.rows() != state.l || psi.cols() != state.data_rows())
    throw ShapeError("qb_stage: Psi shape mismatch");

  QbResult out;
  auto t0 = std::chrono::steady_clock::now();
  out.report = method == RangefinderMethod::kPseudoQr
                   ? pseudo_qr(state.y, qr_cfg)
                   : pseudo_svd(state.y, rangefinder_seed);
  out.h = out.report.h;
  out.rangefinder_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const QMatrix psi_h = qmat_mul(psi, out.h);  // l x s, overdetermined
  out.x = solve_quaternion_linear(psi_h, state.w);
  out.solve_s = seconds_since(t0);
  return out;
}

QbResult qb_stage(const SketchState& state, RangefinderMethod method,
                  std::uint64_t rangefinder_seed, const PseudoQrConfig& qr_cfg) {
  return qb_stage_with_psi(state, gen_test_matrix(state.psi_spec), method,
                           rangefinder_seed, qr_cfg);
}

ApproxResult truncate_stage(const QMatrix& h, const QMatrix& x, Index r) {
  if (h.cols() != x.rows()) throw ShapeError("truncate_stage: H and X do not conform");
  if (r < 1 || r > x.rows()) throw ParameterError("truncate_stage: need 1 <= r <= s");

  const QsvdFactors f = qsvd(x);
  ApproxResult out;
  QMatrix ur(x.rows(), r), vr(x.cols(), r);
  out.sigma.assign(f.sigma.begin(), f.sigma.begin() + r);
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < x.rows(); ++i) ur.set(i, j, f.u(i, j));
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < x.cols(); ++i) vr.set(i, j, f.v(i, j));
  out.h = qmat_mul(h, ur);
  out.v = std::move(vr);
  return out;
}

QMatrix approx_reconstruct(const ApproxResult& res) {
  QMatrix hs = res.h;
  for (Index j = 0; j < hs.cols(); ++j)
    hs.scale_col(j, res.sigma[static_cast<std::size_t>(j)]);
  return qmat_mul(hs, res.v.adjoint());
}

namespace {

OnePassOptions resolve_defaults(OnePassOptions opts) {
  if (opts.r < 1) throw ParameterError("one_pass_approx: rank must be >= 1");
  if (opts.s < 0) opts.s = opts.r + 5;
  if (opts.l < 0) opts.l = 2 * opts.s;
  return opts;
}

ApproxResult run_pipeline(const SketchState& state, const OnePassOptions& opts) {
  QbResult qb = qb_stage(state, opts.rangefinder, opts.rangefinder_seed, opts.qr_cfg);
  const auto t0 = std::chrono::steady_clock::now();
  ApproxResult res = truncate_stage(qb.h, qb.x, opts.r);
  res.diagnostics.times.truncate_s = seconds_since(t0);
  res.diagnostics.times.rangefinder_s = qb.rangefinder_s;
  res.diagnostics.times.solve_s = qb.solve_s;
  res.diagnostics.kappa_h = qb.report.kappa_after;
  res.diagnostics.kappa_before = qb.report.kappa_before;
  res.diagnostics.correction_steps = qb.report.correction_steps_used;
  return res;
}

}  // namespace

ApproxResult one_pass_approx(const SketchState& state, const OnePassOptions& opts_in) {
  OnePassOptions opts = resolve_defaults(opts_in);
  if (opts.r > state.s) throw ParameterError("one_pass_approx: rank exceeds sketch size s");
  return run_pipeline(state, opts);
}

ApproxResult one_pass_approx(const QMatrix& a, const OnePassOptions& opts_in) {
  OnePassOptions opts = resolve_defaults(opts_in);
  const auto t0 = std::chrono::steady_clock::now();
  const SketchState state = make_sketch(a, opts.r, opts.s, opts.l, opts.omega_seed,
                                        opts.psi_seed, opts.embedding, opts.density);
  const double t_sketch = seconds_since(t0);

  // Rebuild HX once for the residual diagnostics; the pipeline itself never
  // touches A.
  QbResult qb = qb_stage(state, opts.rangefinder, opts.rangefinder_seed, opts.qr_cfg);
  const auto t1 = std::chrono::steady_clock::now();
  ApproxResult res = truncate_stage(qb.h, qb.x, opts.r);
  res.diagnostics.times.truncate_s = seconds_since(t1);
  res.diagnostics.times.sketch_s = t_sketch;
  res.diagnostics.times.rangefinder_s = qb.rangefinder_s;
  res.diagnostics.times.solve_s = qb.solve_s;
  res.diagnostics.kappa_h = qb.report.kappa_after;
  res.diagnostics.kappa_before = qb.report.kappa_before;
  res.diagnostics.correction_steps = qb.report.correction_steps_used;

  const double na = a.fro_norm();
  res.diagnostics.qb_residual = (a - qmat_mul(qb.h, qb.x)).fro_norm();
  const double diff = (a - approx_reconstruct(res)).fro_norm();
  res.diagnostics.relative_error = na > 0.0 ? diff / na : (diff > 0.0 ? INFINITY : 0.0);
  return res;
}

}  // namespace qlra
