#include "qlra/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qlra/errors.hpp"

namespace qlra {

namespace {

using Eigen::VectorXcd;

VectorXcd j_mul_conj_vec(const VectorXcd& v) {
  const Eigen::Index m = v.size() / 2;
  VectorXcd r(v.size());
  r.head(m) = -v.tail(m).conjugate();
  r.tail(m) = v.head(m).conjugate();
  return r;
}

// Two-pass modified Gram-Schmidt projection of v against the columns of basis.
VectorXcd orthogonalize(VectorXcd v, const std::vector<VectorXcd>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) v -= q * q.dot(v);
  return v;
}

}  // namespace

ComplexQr complex_qr(const CMatrix& m) {
  if (m.rows() < m.cols()) throw ShapeError("complex_qr: requires rows >= cols");
  const Eigen::Index q = m.cols();
  Eigen::HouseholderQR<CMatrix> qr(m);
  ComplexQr out;
  out.q = qr.householderQ() * CMatrix::Identity(m.rows(), q);
  out.r = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>();
  // Phase convention: rotate so diag(R) is real and nonnegative.
  for (Eigen::Index k = 0; k < q; ++k) {
    const std::complex<double> d = out.r(k, k);
    const double ad = std::abs(d);
    if (ad > 0.0) {
      const std::complex<double> phase = d / ad;
      out.r.row(k) *= std::conj(phase);
      out.q.col(k) *= phase;
    }
  }
  return out;
}

ComplexSvd complex_svd(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

namespace detail {

PairSplit split_singular_pairs(const Eigen::VectorXd& svals) {
  PairSplit out;
  const Eigen::Index n = svals.size();
  if (n == 0) return out;
  const double s1 = svals(0);
  const double gap = kPairGapRel * s1;
  const double floor_tol = kPairFloorRel * s1;

  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const bool boundary = (i == n) || (svals(i - 1) - svals(i) > gap);
    if (!boundary) continue;
    const Eigen::Index len = i - start;
    if (len == 2 && svals(start + 1) > floor_tol) {
      out.good.push_back(start);
    } else {
      for (Eigen::Index c = start; c < i; ++c) out.bad.push_back(c);
    }
    start = i;
  }
  return out;
}

CMatrix select_via_mgs(const CMatrix& ub, Index count, const CMatrix& context) {
  const Eigen::Index dim = ub.rows();
  std::vector<VectorXcd> basis;
  basis.reserve(static_cast<std::size_t>(context.cols() + 2 * count));
  for (Eigen::Index j = 0; j < context.cols(); ++j) basis.push_back(context.col(j));

  std::vector<bool> used(static_cast<std::size_t>(ub.cols()), false);
  CMatrix chosen(dim, count);
  for (Index step = 0; step < count; ++step) {
    double best_norm = -1.0;
    Eigen::Index best = -1;
    VectorXcd best_vec;
    for (Eigen::Index c = 0; c < ub.cols(); ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      VectorXcd r = orthogonalize(ub.col(c), basis);
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = c;
        best_vec = std::move(r);
      }
    }
    if (best_norm < 1e-8) {
      // Degenerate candidate set; complete from canonical directions.
      for (Eigen::Index e = 0; e < dim; ++e) {
        VectorXcd cand = VectorXcd::Zero(dim);
        cand(e) = 1.0;
        cand = orthogonalize(std::move(cand), basis);
        if (cand.norm() > 0.5) {
          best_vec = std::move(cand);
          best_norm = best_vec.norm();
          best = -1;
          break;
        }
      }
    }
    if (best >= 0) used[static_cast<std::size_t>(best)] = true;
    best_vec /= best_vec.norm();
    chosen.col(step) = best_vec;
    basis.push_back(best_vec);
    basis.push_back(j_mul_conj_vec(best_vec));
  }
  return chosen;
}

CMatrix select_bad_representatives(const CMatrix& ub, Index s_total,
                                   const CMatrix& context, SequentialRng& rng) {
  const Eigen::Index b = ub.cols();
  if (b == 0) return CMatrix(ub.rows(), 0);
  const Index t = b / 2;

  if (t <= (s_total + 1) / 2) {
    // Perturbed-SVD route. Column scaling by random factors in [1,2) breaks
    // ties so the quaternion-level singular values become distinct.
    QMatrix hb = from_compact(ub);
    for (Eigen::Index j = 0; j < b; ++j) hb.scale_col(j, 1.0 + rng.next_uniform());
    const ComplexSvd svd = complex_svd(to_full(hb));
    const PairSplit split = split_singular_pairs(svd.s);
    std::vector<Eigen::Index> reps;
    for (Eigen::Index g : split.good)
      if (svd.s(g) > 1e-10 * svd.s(0)) reps.push_back(g);
    if (static_cast<Index>(reps.size()) == t) {
      CMatrix chosen(ub.rows(), t);
      for (Index i = 0; i < t; ++i) chosen.col(i) = svd.u.col(reps[static_cast<std::size_t>(i)]);
      return chosen;
    }
    // Perturbation did not separate the pairs cleanly; fall through.
  }
  return select_via_mgs(ub, t, context);
}

}  // namespace detail

namespace {

struct SingularColumn {
  double sigma;
  VectorXcd u;
  VectorXcd v;
};

}  // namespace

QsvdFactors qsvd(const QMatrix& a) {
  if (a.rows() < a.cols()) {
    QsvdFactors f = qsvd(a.adjoint());
    return {std::move(f.v), std::move(f.sigma), std::move(f.u)};
  }
  const Index m = a.rows(), n = a.cols(), k = n;
  if (k == 0) return {QMatrix(m, 0), {}, QMatrix(n, 0)};

  const CMatrix chi = to_full(a);
  const ComplexSvd svd = complex_svd(chi);
  const detail::PairSplit split = detail::split_singular_pairs(svd.s);

  std::vector<SingularColumn> cols;
  cols.reserve(static_cast<std::size_t>(k));

  CMatrix good_u(chi.rows(), 2 * static_cast<Eigen::Index>(split.good.size()));
  CMatrix good_v(2 * n, 2 * static_cast<Eigen::Index>(split.good.size()));
  for (std::size_t i = 0; i < split.good.size(); ++i) {
    const Eigen::Index g = split.good[i];
    // Left/right vectors correspond by column index in the complex SVD.
    cols.push_back({svd.s(g), svd.u.col(g), svd.v.col(g)});
    good_u.col(2 * static_cast<Eigen::Index>(i)) = svd.u.col(g);
    good_u.col(2 * static_cast<Eigen::Index>(i) + 1) = j_mul_conj_vec(svd.u.col(g));
    good_v.col(2 * static_cast<Eigen::Index>(i)) = svd.v.col(g);
    good_v.col(2 * static_cast<Eigen::Index>(i) + 1) = j_mul_conj_vec(svd.v.col(g));
  }

  if (!split.bad.empty()) {
    const double s1 = svd.s(0);
    const double tiny = 1e-10 * s1;
    CMatrix ub(chi.rows(), static_cast<Eigen::Index>(split.bad.size()));
    CMatrix vb(2 * n, static_cast<Eigen::Index>(split.bad.size()));
    for (std::size_t i = 0; i < split.bad.size(); ++i) {
      ub.col(static_cast<Eigen::Index>(i)) = svd.u.col(split.bad[i]);
      vb.col(static_cast<Eigen::Index>(i)) = svd.v.col(split.bad[i]);
    }
    SequentialRng rng(CounterRng(0x715D).substream(static_cast<std::uint64_t>(m * 131 + n)));
    const CMatrix cu = detail::select_bad_representatives(ub, k, good_u, rng);

    // Right vectors follow the chosen left vectors where the scale permits;
    // below the tiny threshold they are selected independently, which keeps V
    // orthonormal while contributing nothing to the reconstruction.
    std::vector<VectorXcd> chosen_v;
    std::vector<Eigen::Index> pending;
    std::vector<SingularColumn> bad_cols(static_cast<std::size_t>(cu.cols()));
    for (Eigen::Index i = 0; i < cu.cols(); ++i) {
      const VectorXcd w = chi.adjoint() * cu.col(i);
      const double nrm = w.norm();
      auto& sc = bad_cols[static_cast<std::size_t>(i)];
      sc.sigma = nrm;
      sc.u = cu.col(i);
      if (nrm > tiny) {
        sc.v = w / nrm;
        chosen_v.push_back(sc.v);
      } else {
        pending.push_back(i);
      }
    }
    if (!pending.empty()) {
      CMatrix vctx(2 * n, good_v.cols() + 2 * static_cast<Eigen::Index>(chosen_v.size()));
      vctx.leftCols(good_v.cols()) = good_v;
      for (std::size_t i = 0; i < chosen_v.size(); ++i) {
        vctx.col(good_v.cols() + 2 * static_cast<Eigen::Index>(i)) = chosen_v[i];
        vctx.col(good_v.cols() + 2 * static_cast<Eigen::Index>(i) + 1) =
            j_mul_conj_vec(chosen_v[i]);
      }
      const CMatrix vsel =
          detail::select_via_mgs(vb, static_cast<Index>(pending.size()), vctx);
      for (std::size_t i = 0; i < pending.size(); ++i)
        bad_cols[static_cast<std::size_t>(pending[i])].v = vsel.col(static_cast<Eigen::Index>(i));
    }
    for (auto& sc : bad_cols) cols.push_back(std::move(sc));
  }

  std::stable_sort(cols.begin(), cols.end(),
                   [](const SingularColumn& a_, const SingularColumn& b_) {
                     return a_.sigma > b_.sigma;
                   });

  // Polish in descending-sigma order: strip the cross-pair leakage the finite
  // gaps leave behind, so the quaternion factors are orthonormal to machine
  // precision rather than to eps/gap.
  std::vector<VectorXcd> ubasis, vbasis;
  ubasis.reserve(2 * static_cast<std::size_t>(k));
  vbasis.reserve(2 * static_cast<std::size_t>(k));
  for (auto& sc : cols) {
    sc.u = orthogonalize(std::move(sc.u), ubasis);
    sc.u /= sc.u.norm();
    sc.v = orthogonalize(std::move(sc.v), vbasis);
    sc.v /= sc.v.norm();
    ubasis.push_back(sc.u);
    ubasis.push_back(j_mul_conj_vec(sc.u));
    vbasis.push_back(sc.v);
    vbasis.push_back(j_mul_conj_vec(sc.v));
  }

  CMatrix uc(chi.rows(), k), vc(2 * n, k);
  QsvdFactors out;
  out.sigma.resize(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    uc.col(i) = cols[static_cast<std::size_t>(i)].u;
    vc.col(i) = cols[static_cast<std::size_t>(i)].v;
    out.sigma[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)].sigma;
  }
  out.u = from_compact(uc);
  out.v = from_compact(vc);

  // Phase convention: rotate each column pair so the largest entry of the V
  // column is positive real. A = U S V* is invariant under (u q, v q) for
  // unit q, and this pins the representative deterministically.
  for (Index j = 0; j < k; ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double ns = out.v(i, j).norm_sq();
      if (ns > best) {
        best = ns;
        arg = i;
      }
    }
    const Quaternion e = out.v(arg, j);
    const double ae = e.norm();
    if (ae > 0.0) {
      const Quaternion p = e.conj() * (1.0 / ae);
      out.u.scale_col(j, p);
      out.v.scale_col(j, p);
    }
  }
  return out;
}

QMatrix qsvd_reconstruct(const QsvdFactors& f) {
  QMatrix us = f.u;
  for (Index j = 0; j < us.cols(); ++j) us.scale_col(j, f.sigma[static_cast<std::size_t>(j)]);
  return qmat_mul(us, f.v.adjoint());
}

QMatrix qmat_pinv(const QMatrix& a) {
  const QsvdFactors f = qsvd(a);
  const double smax = f.sigma.empty() ? 0.0 : f.sigma.front();
  const double tol = static_cast<double>(std::max(a.rows(), a.cols())) *
                     std::numeric_limits<double>::epsilon() * smax;
  QMatrix vs = f.v;
  for (Index j = 0; j < vs.cols(); ++j) {
    const double s = f.sigma[static_cast<std::size_t>(j)];
    vs.scale_col(j, s > tol ? 1.0 / s : 0.0);
  }
  return qmat_mul(vs, f.u.adjoint());
}

std::vector<double> singular_values(const QMatrix& a) {
  const Index k = std::min(a.rows(), a.cols());
  if (k == 0) return {};
  const ComplexSvd svd = complex_svd(to_full(a));
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = svd.s(2 * i);
  return out;
}

double spectral_norm(const QMatrix& a) {
  if (a.size() == 0) return 0.0;
  return complex_svd(to_full(a)).s(0);
}

double condition_number(const QMatrix& a) {
  const Index k = std::min(a.rows(), a.cols());
  if (k == 0) return std::numeric_limits<double>::infinity();
  const ComplexSvd svd = complex_svd(to_full(a));
  const double smin = svd.s(2 * k - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return svd.s(0) / smin;
}

}  // namespace qlra
