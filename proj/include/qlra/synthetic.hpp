#ifndef QLRA_SYNTHETIC_HPP
#define QLRA_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlra/factorizations.hpp"
#include "qlra/qmatrix.hpp"

namespace qlra {

enum class SpectrumKind { kLowRankPlusNoise, kPolyDecay, kExpDecay };

std::string to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(const std::string& name);

// Benchmark spectra: a plateau of `plateau` ones followed by
//   kLowRankPlusNoise  zeros, with dense noise (xi/n) U E V* added afterwards
//   kPolyDecay         2^-p, 3^-p, ..., (n-plateau+1)^-p
//   kExpDecay          10^-q, 10^-2q, ..., 10^-(n-plateau)q
// where param is xi, p or q respectively.
struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::kPolyDecay;
  Index m = 0;
  Index n = 0;
  Index plateau = 1;  // number of leading ones
  double param = 1.0;
  std::uint64_t seed = 0;
};

std::vector<double> spectrum_values(const SpectrumSpec& spec);

struct SynthResult {
  QMatrix a;
  QsvdFactors truth;  // planted factors (noise excluded for kLowRankPlusNoise)
};

// A = U diag(sigma) V* with U, V orthonormalized quaternion Gaussian factors.
SynthResult synth_matrix(const SpectrumSpec& spec);

// m x sigma.size() matrix with the given singular values planted between
// orthonormalized quaternion Gaussian factors.
QMatrix planted_matrix_with_sigma(Index m, const std::vector<double>& sigma,
                                  std::uint64_t seed);

// Geometrically spaced spectrum from 1 down to 1/kappa.
QMatrix planted_conditioned_matrix(Index m, Index s, double kappa, std::uint64_t seed);

// Interleaved RGB raster with channel values in [0,1].
struct ImageRgb {
  Index rows = 0;
  Index cols = 0;
  std::vector<double> data;  // rows*cols*3, row-major, channel-interleaved

  ImageRgb() = default;
  ImageRgb(Index r, Index c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c * 3), 0.0) {}
  double& at(Index i, Index j, int c) { return data[static_cast<std::size_t>((i * cols + j) * 3 + c)]; }
  double at(Index i, Index j, int c) const { return data[static_cast<std::size_t>((i * cols + j) * 3 + c)]; }
};

// Pure quaternion encoding: R, G, B land in the x, y, z planes, w stays zero.
QMatrix image_to_qmatrix(const ImageRgb& img);

struct ImageFromQ {
  ImageRgb image;
  Index clamped = 0;  // entries pushed back into [0,1]
};

ImageFromQ qmatrix_to_image(const QMatrix& q);

}  // namespace qlra

#endif
