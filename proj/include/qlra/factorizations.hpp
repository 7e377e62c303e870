#ifndef QLRA_FACTORIZATIONS_HPP
#define QLRA_FACTORIZATIONS_HPP

#include <Eigen/Dense>
#include <vector>

#include "qlra/complex_bridge.hpp"
#include "qlra/qmatrix.hpp"
#include "qlra/rng.hpp"

namespace qlra {

// Thin QR with a real-nonnegative-diagonal phase convention on R, which makes
// the factorization deterministic. Rank-deficient input still yields a valid
// factorization; rank handling is the caller's concern.
struct ComplexQr {
  CMatrix q;  // p x q, column-orthonormal
  CMatrix r;  // q x q, upper triangular, real nonnegative diagonal
};
ComplexQr complex_qr(const CMatrix& m);

// Compact SVD, singular values nonincreasing.
struct ComplexSvd {
  CMatrix u;
  Eigen::VectorXd s;
  CMatrix v;
};
ComplexSvd complex_svd(const CMatrix& m);

// Quaternion singular value decomposition A = U diag(sigma) V*.
struct QsvdFactors {
  QMatrix u;                  // m x k, partially unitary
  std::vector<double> sigma;  // length k = min(m,n), nonincreasing, >= 0
  QMatrix v;                  // n x k, partially unitary
};

// Computed from the complex SVD of the full representation, whose singular
// values appear in duplicate pairs; one representative per pair is kept. When
// numerical duplication fails (clustered or tiny values) the bad block is
// repaired so U and V stay orthonormal. Each quaternion-level singular value
// is reported once.
QsvdFactors qsvd(const QMatrix& a);

QMatrix qsvd_reconstruct(const QsvdFactors& f);

// Moore-Penrose pseudoinverse via the QSVD; singular values at or below
// max(m,n) * eps * sigma_max are treated as zero.
QMatrix qmat_pinv(const QMatrix& a);

double spectral_norm(const QMatrix& a);

// sigma_max / sigma_min; +infinity when the matrix has no full column rank
// numerically or is empty/zero.
double condition_number(const QMatrix& a);

// All singular values of A (each reported once), nonincreasing.
std::vector<double> singular_values(const QMatrix& a);

namespace detail {

// Tolerances for deciding whether two consecutive singular values of a full
// complex representation form one quaternion-level pair.
constexpr double kPairGapRel = 1e-8;
constexpr double kPairFloorRel = 1e-13;

struct PairSplit {
  std::vector<Eigen::Index> good;  // first column index of each clean pair
  std::vector<Eigen::Index> bad;   // every column of a failed cluster
};

// Clusters the sorted values by relative gap. Clusters of size exactly two
// above the floor are clean pairs; everything else is bad.
PairSplit split_singular_pairs(const Eigen::VectorXd& svals);

// Given columns ub spanning a subspace closed under u -> J*conj(u)
// (dimension = ub.cols(), even), returns ub.cols()/2 columns C such that
// [C, J*conj(C)] is an orthonormal basis of span(ub). Columns of `context`
// (may be empty) are treated as already-taken basis directions: fallback
// vectors are orthogonalized against them too.
//
// Two routes: a perturbed-SVD route (scale by random factors in [1,2), take
// one representative per recovered pair) used when t <= ceil(s_total/2), and
// a modified Gram-Schmidt selection otherwise or when the SVD route fails to
// produce clean pairs.
CMatrix select_bad_representatives(const CMatrix& ub, Index s_total,
                                   const CMatrix& context, SequentialRng& rng);

CMatrix select_via_mgs(const CMatrix& ub, Index count, const CMatrix& context);

}  // namespace detail

}  // namespace qlra

#endif
