#include "qlra/synthetic.hpp"

#include <cmath>

#include "qlra/errors.hpp"
#include "qlra/rangefinders.hpp"
#include "qlra/rng.hpp"
#include "qlra/sketching.hpp"

namespace qlra {

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::kLowRankPlusNoise: return "lrpn";
    case SpectrumKind::kPolyDecay: return "pds";
    case SpectrumKind::kExpDecay: return "eds";
  }
  return "?";
}

SpectrumKind spectrum_kind_from_string(const std::string& name) {
  if (name == "lrpn") return SpectrumKind::kLowRankPlusNoise;
  if (name == "pds") return SpectrumKind::kPolyDecay;
  if (name == "eds") return SpectrumKind::kExpDecay;
  throw ParameterError("unknown spectrum kind: " + name);
}

std::vector<double> spectrum_values(const SpectrumSpec& spec) {
  if (!(spec.plateau >= 0 && spec.plateau <= spec.n && spec.n <= spec.m))
    throw ParameterError("spectrum: need plateau <= n <= m");
  if (!(spec.param > 0.0)) throw ParameterError("spectrum: parameter must be positive");
  std::vector<double> sv(static_cast<std::size_t>(spec.n), 1.0);
  for (Index i = spec.plateau; i < spec.n; ++i) {
    const double k = static_cast<double>(i - spec.plateau);
    switch (spec.kind) {
      case SpectrumKind::kLowRankPlusNoise:
        sv[static_cast<std::size_t>(i)] = 0.0;
        break;
      case SpectrumKind::kPolyDecay:
        sv[static_cast<std::size_t>(i)] = std::pow(k + 2.0, -spec.param);
        break;
      case SpectrumKind::kExpDecay:
        sv[static_cast<std::size_t>(i)] = std::pow(10.0, -spec.param * (k + 1.0));
        break;
    }
  }
  return sv;
}

SynthResult synth_matrix(const SpectrumSpec& spec) {
  const std::vector<double> sv = spectrum_values(spec);
  const CounterRng root(spec.seed);

  const QMatrix gu = gen_test_matrix(
      {TestMatrixKind::kGaussian, spec.m, spec.n, root.substream(1).key(), 1.0});
  const QMatrix gv = gen_test_matrix(
      {TestMatrixKind::kGaussian, spec.n, spec.n, root.substream(2).key(), 1.0});
  const QMatrix u = orthonormal_range(gu, root.substream(3).key());
  const QMatrix v = orthonormal_range(gv, root.substream(4).key());

  QMatrix core(spec.n, spec.n);
  for (Index i = 0; i < spec.n; ++i) core.w(i, i) = sv[static_cast<std::size_t>(i)];
  if (spec.kind == SpectrumKind::kLowRankPlusNoise) {
    // Noise rides inside the planted bases so the truth subspaces stay exact.
    const QMatrix noise = gen_test_matrix(
        {TestMatrixKind::kGaussian, spec.n, spec.n, root.substream(5).key(), 1.0});
    core += (spec.param / static_cast<double>(spec.n)) * noise;
  }

  SynthResult out;
  out.a = qmat_mul(qmat_mul(u, core), v.adjoint());
  out.truth.u = u;
  out.truth.v = v;
  out.truth.sigma = sv;
  return out;
}

QMatrix planted_matrix_with_sigma(Index m, const std::vector<double>& sigma,
                                  std::uint64_t seed) {
  const Index s = static_cast<Index>(sigma.size());
  if (m < s) throw ParameterError("planted_matrix_with_sigma: need m >= #sigma");
  const CounterRng root(seed);
  const QMatrix gu =
      gen_test_matrix({TestMatrixKind::kGaussian, m, s, root.substream(1).key(), 1.0});
  const QMatrix gv =
      gen_test_matrix({TestMatrixKind::kGaussian, s, s, root.substream(2).key(), 1.0});
  QMatrix us = orthonormal_range(gu, root.substream(3).key());
  const QMatrix v = orthonormal_range(gv, root.substream(4).key());
  for (Index j = 0; j < s; ++j) us.scale_col(j, sigma[static_cast<std::size_t>(j)]);
  return qmat_mul(us, v.adjoint());
}

QMatrix planted_conditioned_matrix(Index m, Index s, double kappa, std::uint64_t seed) {
  if (!(kappa >= 1.0)) throw ParameterError("planted_conditioned_matrix: kappa >= 1");
  std::vector<double> sigma(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i)
    sigma[static_cast<std::size_t>(i)] =
        s > 1 ? std::pow(kappa, -static_cast<double>(i) / static_cast<double>(s - 1))
              : 1.0;
  return planted_matrix_with_sigma(m, sigma, seed);
}

QMatrix image_to_qmatrix(const ImageRgb& img) {
  if (static_cast<Index>(img.data.size()) != img.rows * img.cols * 3)
    throw ShapeError("image_to_qmatrix: raster must carry exactly three channels");
  QMatrix q(img.rows, img.cols);
  for (Index i = 0; i < img.rows; ++i)
    for (Index j = 0; j < img.cols; ++j) {
      q.x(i, j) = img.at(i, j, 0);
      q.y(i, j) = img.at(i, j, 1);
      q.z(i, j) = img.at(i, j, 2);
    }
  return q;
}

ImageFromQ qmatrix_to_image(const QMatrix& q) {
  ImageFromQ out;
  out.image = ImageRgb(q.rows(), q.cols());
  for (Index i = 0; i < q.rows(); ++i)
    for (Index j = 0; j < q.cols(); ++j)
      for (int c = 0; c < 3; ++c) {
        const double v = q.at(static_cast<QMatrix::Plane>(c + 1), i, j);
        double clamped = v;
        if (v < 0.0) clamped = 0.0;
        if (v > 1.0) clamped = 1.0;
        if (clamped != v) ++out.clamped;
        out.image.at(i, j, c) = clamped;
      }
  return out;
}

}  // namespace qlra
