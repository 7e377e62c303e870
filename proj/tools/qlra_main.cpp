// Command-line front end: synthetic benchmarks, sketching workflows,
// verification suites, and image compression. Reports are CSV/JSON.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qlra/analysis.hpp"
#include "qlra/errors.hpp"
#include "qlra/io.hpp"
#include "qlra/rangefinders.hpp"
#include "qlra/sketching.hpp"
#include "qlra/synthetic.hpp"

namespace {

using namespace qlra;

constexpr const char* kApproxCsvHeader =
    "rank,rangefinder,seed,rel_error,qb_residual,kappa_h,correction_steps,"
    "t_sketch_s,t_rangefinder_s,t_solve_s,t_truncate_s";

constexpr const char* kCompressCsvHeader =
    "image,rows,cols,rank,rangefinder,seed,rel_error,psnr_db,compression_ratio,"
    "kappa_h,clamped,t_sketch_s,t_rangefinder_s,t_solve_s,t_truncate_s";

void apply_thread_cap(bool serial) {
  int cap = 1;
  if (!serial) {
    if (const char* env = std::getenv("QLRA_THREADS")) cap = std::max(1, std::atoi(env));
  }
  Eigen::setNbThreads(cap);
}

std::ostream& open_report(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw IoError("cannot open report file: " + path);
  return file;
}

RangefinderMethod method_from_string(const std::string& name) {
  if (name == "pseudo-qr") return RangefinderMethod::kPseudoQr;
  if (name == "pseudo-svd") return RangefinderMethod::kPseudoSvd;
  throw ParameterError("unknown rangefinder: " + name);
}

std::string method_name(RangefinderMethod m) {
  return m == RangefinderMethod::kPseudoQr ? "pseudo-qr" : "pseudo-svd";
}

// ---------------------------------------------------------------- synth ----

struct SynthArgs {
  std::string spectrum = "pds";
  Index rows = 0, cols = 0, plateau = 1;
  double param = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_synth(const SynthArgs& a) {
  SpectrumSpec spec{spectrum_kind_from_string(a.spectrum), a.rows, a.cols, a.plateau,
                    a.param, a.seed};
  const SynthResult res = synth_matrix(spec);
  write_qmat(a.out, res.a);

  nlohmann::json meta;
  meta["kind"] = a.spectrum;
  meta["rows"] = a.rows;
  meta["cols"] = a.cols;
  meta["plateau"] = a.plateau;
  meta["param"] = a.param;
  meta["seed"] = a.seed;
  meta["sigma"] = res.truth.sigma;
  std::ofstream js(a.out + ".json");
  if (!js) throw IoError("cannot write metadata: " + a.out + ".json");
  js << meta.dump(2) << '\n';
  std::cerr << "wrote " << a.out << " (" << a.rows << "x" << a.cols << ") and truth metadata\n";
  return 0;
}

// --------------------------------------------------------------- sketch ----

struct SketchArgs {
  std::string input;
  Index rank = 0;
  Index s = -1, l = -1;
  std::string embedding = "gaussian";
  double density = 0.1;
  std::uint64_t seed = 1;
  Index block_rows = 256;
  std::string out;
};

int run_sketch(const SketchArgs& a) {
  const QmatFileSource source(a.input);
  Index s = a.s < 0 ? a.rank + 5 : a.s;
  Index l = a.l < 0 ? 2 * s : a.l;
  const SketchState st = sketch_from_source(
      source, a.rank, s, l, a.seed, a.seed + 1,
      test_matrix_kind_from_string(a.embedding), a.density, a.block_rows);
  write_sketch(a.out, st);
  std::cerr << "sketched " << source.rows() << "x" << source.cols() << " -> Y "
            << st.y.rows() << "x" << st.y.cols() << ", W " << st.w.rows() << "x"
            << st.w.cols() << "\n";
  return 0;
}

struct UpdateArgs {
  std::string sketch;
  std::string input;
  Index row0 = -1;  // < 0 means additive full-shape update
  std::string out;
};

int run_update(const UpdateArgs& a) {
  SketchState st = read_sketch(a.sketch);
  const QMatrix block = read_qmat(a.input);
  if (a.row0 < 0)
    sketch_update(st, block);
  else
    sketch_update_rows(st, a.row0, block);
  write_sketch(a.out, st);
  return 0;
}

// --------------------------------------------------------------- approx ----

struct ApproxArgs {
  std::string input;   // QMAT1 path
  std::string sketch;  // QSKT1 path
  std::vector<Index> ranks;
  Index s = -1, l = -1;
  std::string rangefinder = "pseudo-qr";
  std::string embedding = "gaussian";
  double density = 0.1;
  std::uint64_t seed = 1;
  Index trials = 1;
  std::string out;
};

void emit_approx_row(std::ostream& os, Index rank, RangefinderMethod method,
                     std::uint64_t seed, const ApproxResult& res) {
  const auto& d = res.diagnostics;
  os.precision(12);
  os << rank << ',' << method_name(method) << ',' << seed << ','
     << (d.relative_error ? *d.relative_error : std::nan("")) << ','
     << (d.qb_residual ? *d.qb_residual : std::nan("")) << ',' << d.kappa_h << ','
     << d.correction_steps << ',' << d.times.sketch_s << ',' << d.times.rangefinder_s
     << ',' << d.times.solve_s << ',' << d.times.truncate_s << '\n';
}

int run_approx(const ApproxArgs& a) {
  if (a.input.empty() == a.sketch.empty())
    throw ParameterError("approx: pass exactly one of --input or --sketch");
  std::ofstream file;
  std::ostream& os = open_report(file, a.out);
  os << kApproxCsvHeader << '\n';

  std::vector<RangefinderMethod> methods;
  if (a.rangefinder == "both")
    methods = {RangefinderMethod::kPseudoQr, RangefinderMethod::kPseudoSvd};
  else
    methods = {method_from_string(a.rangefinder)};

  if (!a.sketch.empty()) {
    // One-pass from a checkpoint: the data matrix is never opened.
    const SketchState st = read_sketch(a.sketch);
    for (Index rank : a.ranks)
      for (auto method : methods) {
        OnePassOptions opts;
        opts.r = rank;
        opts.rangefinder = method;
        opts.rangefinder_seed = a.seed;
        const ApproxResult res = one_pass_approx(st, opts);
        emit_approx_row(os, rank, method, a.seed, res);
      }
    return 0;
  }

  const QMatrix mat = read_qmat(a.input);
  for (Index rank : a.ranks)
    for (auto method : methods)
      for (Index t = 0; t < a.trials; ++t) {
        const std::uint64_t seed = a.seed + 2 * static_cast<std::uint64_t>(t);
        OnePassOptions opts;
        opts.r = rank;
        opts.s = a.s;
        opts.l = a.l;
        opts.rangefinder = method;
        opts.embedding = test_matrix_kind_from_string(a.embedding);
        opts.density = a.density;
        opts.omega_seed = seed;
        opts.psi_seed = seed + 1;
        opts.rangefinder_seed = seed;
        const ApproxResult res = one_pass_approx(mat, opts);
        emit_approx_row(os, rank, method, seed, res);
      }
  return 0;
}

// --------------------------------------------------------------- verify ----

struct VerifyArgs {
  std::string suite;
  Index trials = 0;  // 0 = suite default
  std::uint64_t seed = 1;
  double kappa = 1e6;
  std::string out;
};

std::vector<BoundReport> suite_gaussian_bounds(Index trials, std::uint64_t seed) {
  if (trials <= 0) trials = 500;
  std::vector<BoundReport> rows;
  const QMatrix one = [] {
    QMatrix q(1, 1);
    q.w(0, 0) = 1.0;
    return q;
  }();
  rows.push_back(mc_check_sgt(one, one, trials, seed));
  const CounterRng root(seed);
  const QMatrix s34 = gen_test_matrix({TestMatrixKind::kGaussian, 3, 4, root.substream(11).key(), 1.0});
  const QMatrix t52 = gen_test_matrix({TestMatrixKind::kGaussian, 5, 2, root.substream(12).key(), 1.0});
  rows.push_back(mc_check_sgt(s34, t52, trials, seed + 1));
  const QMatrix s26 = gen_test_matrix({TestMatrixKind::kGaussian, 2, 6, root.substream(13).key(), 1.0});
  const QMatrix t33 = gen_test_matrix({TestMatrixKind::kGaussian, 3, 3, root.substream(14).key(), 1.0});
  rows.push_back(mc_check_sgt(s26, t33, trials, seed + 2));
  rows.push_back(mc_check_pinv_norm(3, 5, trials, seed + 3));
  rows.push_back(mc_check_pinv_norm(2, 10, trials, seed + 4));
  rows.push_back(mc_check_pinv_norm(5, 12, trials, seed + 5));
  return rows;
}

std::vector<BoundReport> suite_rangefinder(double kappa_max, std::uint64_t seed) {
  std::vector<BoundReport> rows;
  std::vector<double> kappas{1e2, 1e4};
  if (kappa_max > 1e4) kappas.push_back(kappa_max);
  for (double kappa : kappas) {
    const QMatrix y = planted_conditioned_matrix(400, 40, kappa, seed++);
    if (kappa <= 1e8) {
      const RangefinderReport qr = pseudo_qr(y);
      const double dist = range_distance(qr.h, y);
      rows.push_back({"pseudo_qr_range_dist_kappa" + std::to_string(static_cast<long>(std::log10(kappa))),
                      1e-7, dist, 0.0, 1, dist <= 1e-7});
      rows.push_back({"pseudo_qr_kappa_h_kappa" + std::to_string(static_cast<long>(std::log10(kappa))),
                      10.0, qr.kappa_after, 0.0, 1, qr.kappa_after < 10.0});
    }
    const RangefinderReport sv = pseudo_svd(y, seed);
    const double dist = range_distance(sv.h, y);
    rows.push_back({"pseudo_svd_range_dist_kappa" + std::to_string(static_cast<long>(std::log10(kappa))),
                    1e-7, dist, 0.0, 1, dist <= 1e-7});
    const QMatrix gram = qmat_mul(sv.h.adjoint(), sv.h) - QMatrix::identity(y.cols());
    rows.push_back({"pseudo_svd_orth_defect_kappa" + std::to_string(static_cast<long>(std::log10(kappa))),
                    1e-8, gram.fro_norm(), 0.0, 1, gram.fro_norm() <= 1e-8});
  }
  return rows;
}

std::vector<BoundReport> suite_extreme_singvals(Index trials, std::uint64_t seed) {
  if (trials <= 0) trials = 50;
  std::vector<BoundReport> rows;
  for (auto kind : {TestMatrixKind::kGaussian, TestMatrixKind::kRademacher}) {
    const auto rep = mc_extreme_singvals(400, 10, trials, seed, kind);
    for (auto row : rep.rows()) {
      row.metric += "_" + to_string(kind);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<BoundReport> suite_avomega(Index trials, std::uint64_t seed) {
  if (trials <= 0) trials = 1000;
  std::vector<BoundReport> rows;
  const QMatrix one = [] {
    QMatrix q(1, 1);
    q.w(0, 0) = 1.0;
    return q;
  }();
  const auto scalar = mc_check_avomega(one, one, 1, trials, seed);
  rows.push_back({"avomega_scalar_q99", 4.0, scalar.q99, 0.0, trials, scalar.q99 < 4.0});

  const QMatrix a = gen_test_matrix({TestMatrixKind::kGaussian, 20, 12,
                                     CounterRng(seed).substream(77).key(), 1.0});
  const QMatrix v = orthonormal_range(
      gen_test_matrix({TestMatrixKind::kGaussian, 12, 12,
                       CounterRng(seed).substream(78).key(), 1.0})).adjoint();
  const auto r8 = mc_check_avomega(a, v, 8, trials, seed + 1);
  const auto r16 = mc_check_avomega(a, v, 16, trials, seed + 2);
  const double growth = r16.q99 / r8.q99;
  rows.push_back({"avomega_q99_growth_s8_to_s16", 1.5, growth, 0.0, trials, growth < 1.5});
  return rows;
}

int run_verify(const VerifyArgs& a) {
  std::vector<BoundReport> rows;
  if (a.suite == "gaussian-bounds")
    rows = suite_gaussian_bounds(a.trials, a.seed);
  else if (a.suite == "rangefinder")
    rows = suite_rangefinder(a.kappa, a.seed);
  else if (a.suite == "extreme-singvals")
    rows = suite_extreme_singvals(a.trials, a.seed);
  else if (a.suite == "avomega")
    rows = suite_avomega(a.trials, a.seed);
  else if (a.suite == "all") {
    rows = suite_gaussian_bounds(a.trials, a.seed);
    auto more = suite_rangefinder(a.kappa, a.seed);
    rows.insert(rows.end(), more.begin(), more.end());
    more = suite_extreme_singvals(a.trials, a.seed);
    rows.insert(rows.end(), more.begin(), more.end());
    more = suite_avomega(a.trials, a.seed);
    rows.insert(rows.end(), more.begin(), more.end());
  } else {
    throw CLI::ValidationError("verify", "unknown suite: " + a.suite);
  }

  std::ofstream file;
  std::ostream& os = open_report(file, a.out);
  os << bound_report_csv_header() << '\n';
  bool all_pass = true;
  for (const auto& r : rows) {
    os << to_csv_row(r) << '\n';
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

// ------------------------------------------------------- compress-image ----

struct CompressArgs {
  std::string input;
  Index rank = 0;
  Index s = -1, l = -1;
  std::string rangefinder = "pseudo-qr";
  std::uint64_t seed = 1;
  Index block_rows = 64;
  std::string out;
  std::string report;
};

class ImageRowSource final : public MatrixSource {
 public:
  explicit ImageRowSource(const ImageRgb& img) : img_(img) {}
  Index rows() const override { return img_.rows; }
  Index cols() const override { return img_.cols; }
  QMatrix read_rows(Index r0, Index r1) const override {
    QMatrix block(r1 - r0, img_.cols);
    for (Index i = r0; i < r1; ++i)
      for (Index j = 0; j < img_.cols; ++j) {
        block.x(i - r0, j) = img_.at(i, j, 0);
        block.y(i - r0, j) = img_.at(i, j, 1);
        block.z(i - r0, j) = img_.at(i, j, 2);
      }
    return block;
  }

 private:
  const ImageRgb& img_;
};

double psnr_8bit(const ImageRgb& a, const ImageRgb& b) {
  double mse = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double da = std::lround(std::clamp(a.data[i], 0.0, 1.0) * 255.0);
    const double db = std::lround(std::clamp(b.data[i], 0.0, 1.0) * 255.0);
    mse += (da - db) * (da - db);
  }
  mse /= static_cast<double>(a.data.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

int run_compress(const CompressArgs& a) {
  const ImageRgb img = read_ppm(a.input);
  const ImageRowSource source(img);
  Index s = a.s < 0 ? a.rank + 5 : a.s;
  Index l = a.l < 0 ? 2 * s : a.l;

  const auto t0 = std::chrono::steady_clock::now();
  const SketchState st = sketch_from_source(source, a.rank, s, l, a.seed, a.seed + 1,
                                            TestMatrixKind::kGaussian, 1.0, a.block_rows);
  const double t_sketch =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  OnePassOptions opts;
  opts.r = a.rank;
  opts.rangefinder = method_from_string(a.rangefinder);
  opts.rangefinder_seed = a.seed;
  ApproxResult res = one_pass_approx(st, opts);
  res.diagnostics.times.sketch_s = t_sketch;

  const QMatrix recon = approx_reconstruct(res);
  const ImageFromQ back = qmatrix_to_image(recon);
  write_ppm(a.out, back.image);

  const QMatrix original = image_to_qmatrix(img);
  const double rel = (original - recon).fro_norm() / original.fro_norm();
  const double psnr = psnr_8bit(img, back.image);
  const double raw_bytes = 3.0 * static_cast<double>(img.rows) * static_cast<double>(img.cols);
  const double factor_bytes =
      32.0 * static_cast<double>(a.rank) * static_cast<double>(img.rows + img.cols) +
      8.0 * static_cast<double>(a.rank);
  const double ratio = 1.0 - factor_bytes / raw_bytes;

  std::ofstream file;
  std::ostream& os = open_report(file, a.report);
  os << kCompressCsvHeader << '\n';
  os.precision(10);
  os << a.input << ',' << img.rows << ',' << img.cols << ',' << a.rank << ','
     << a.rangefinder << ',' << a.seed << ',' << rel << ',' << psnr << ',' << ratio << ','
     << res.diagnostics.kappa_h << ',' << back.clamped << ','
     << res.diagnostics.times.sketch_s << ',' << res.diagnostics.times.rangefinder_s
     << ',' << res.diagnostics.times.solve_s << ',' << res.diagnostics.times.truncate_s
     << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quaternion randomized low-rank approximation toolkit"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "single-threaded, bit-reproducible execution");

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate a benchmark matrix with known spectrum");
  cmd_synth->add_option("--spectrum", synth.spectrum, "lrpn|pds|eds")->required();
  cmd_synth->add_option("--rows", synth.rows)->required();
  cmd_synth->add_option("--cols", synth.cols)->required();
  cmd_synth->add_option("--plateau", synth.plateau, "number of leading unit singular values")->required();
  cmd_synth->add_option("--param", synth.param, "xi / p / q decay parameter")->required();
  cmd_synth->add_option("--seed", synth.seed);
  cmd_synth->add_option("--out", synth.out, "output QMAT1 path (truth JSON lands beside it)")->required();

  SketchArgs sketch;
  auto* cmd_sketch = app.add_subcommand("sketch", "build a two-sketch checkpoint from a matrix file");
  cmd_sketch->add_option("--input", sketch.input)->required();
  cmd_sketch->add_option("--rank,-r", sketch.rank)->required();
  cmd_sketch->add_option("--sketch-s", sketch.s);
  cmd_sketch->add_option("--sketch-l", sketch.l);
  cmd_sketch->add_option("--embedding", sketch.embedding,
                         "gaussian|rademacher|sparse-gaussian|sparse-rademacher");
  cmd_sketch->add_option("--density", sketch.density);
  cmd_sketch->add_option("--seed", sketch.seed);
  cmd_sketch->add_option("--block-rows", sketch.block_rows);
  cmd_sketch->add_option("--out", sketch.out)->required();

  UpdateArgs update;
  auto* cmd_update = app.add_subcommand("update", "fold a linear update into a sketch checkpoint");
  cmd_update->add_option("--sketch", update.sketch)->required();
  cmd_update->add_option("--input", update.input, "update block (QMAT1)")->required();
  cmd_update->add_option("--row0", update.row0, "first row of a row-block update; omit for additive");
  cmd_update->add_option("--out", update.out)->required();

  ApproxArgs approx;
  auto* cmd_approx = app.add_subcommand("approx", "one-pass rank-r approximation");
  cmd_approx->add_option("--input", approx.input, "data matrix (QMAT1)");
  cmd_approx->add_option("--sketch", approx.sketch, "sketch checkpoint (QSKT1)");
  cmd_approx->add_option("--rank,-r", approx.ranks)->required();
  cmd_approx->add_option("--sketch-s", approx.s);
  cmd_approx->add_option("--sketch-l", approx.l);
  cmd_approx->add_option("--rangefinder", approx.rangefinder, "pseudo-qr|pseudo-svd|both");
  cmd_approx->add_option("--embedding", approx.embedding);
  cmd_approx->add_option("--density", approx.density);
  cmd_approx->add_option("--seed", approx.seed);
  cmd_approx->add_option("--trials", approx.trials);
  cmd_approx->add_option("--out", approx.out, "CSV report path (default stdout)");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "run statistical/invariant verification suites");
  cmd_verify->add_option("--suite", verify.suite,
                         "gaussian-bounds|rangefinder|extreme-singvals|avomega|all")->required();
  cmd_verify->add_option("--trials", verify.trials);
  cmd_verify->add_option("--seed", verify.seed);
  cmd_verify->add_option("--kappa", verify.kappa, "largest sketch condition number to test");
  cmd_verify->add_option("--out", verify.out);

  CompressArgs compress;
  auto* cmd_compress = app.add_subcommand("compress-image", "streamed low-rank image compression");
  cmd_compress->add_option("--input", compress.input, "PPM (P6) image")->required();
  cmd_compress->add_option("--rank,-r", compress.rank)->required();
  cmd_compress->add_option("--sketch-s", compress.s);
  cmd_compress->add_option("--sketch-l", compress.l);
  cmd_compress->add_option("--rangefinder", compress.rangefinder);
  cmd_compress->add_option("--seed", compress.seed);
  cmd_compress->add_option("--block-rows", compress.block_rows);
  cmd_compress->add_option("--out", compress.out, "reconstructed PPM path")->required();
  cmd_compress->add_option("--report", compress.report, "CSV report path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  apply_thread_cap(serial);

  try {
    if (cmd_synth->parsed()) return run_synth(synth);
    if (cmd_sketch->parsed()) return run_sketch(sketch);
    if (cmd_update->parsed()) return run_update(update);
    if (cmd_approx->parsed()) return run_approx(approx);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_compress->parsed()) return run_compress(compress);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
