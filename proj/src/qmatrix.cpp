#include "qlra/qmatrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstring>

#include "qlra/errors.hpp"

namespace qlra {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using Map = Eigen::Map<RowMat>;

ConstMap map_of(const QMatrix& m, QMatrix::Plane p) {
  return ConstMap(m.plane(p).data(), m.rows(), m.cols());
}

Map map_of(QMatrix& m, QMatrix::Plane p) {
  return Map(m.plane(p).data(), m.rows(), m.cols());
}

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (!a.same_shape(b)) throw ShapeError(std::string(op) + ": shape mismatch");
}

}  // namespace

QMatrix::QMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  const auto n = static_cast<std::size_t>(rows * cols);
  for (auto& p : planes_) p.assign(n, 0.0);
}

QMatrix QMatrix::identity(Index n) {
  QMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m.w(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix r(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) {
      r.w(j, i) = w(i, j);
      r.x(j, i) = -x(i, j);
      r.y(j, i) = -y(i, j);
      r.z(j, i) = -z(i, j);
    }
  return r;
}

QMatrix QMatrix::conjugate() const {
  QMatrix r = *this;
  for (auto p : {kX, kY, kZ})
    for (auto& v : r.planes_[p]) v = -v;
  return r;
}

double QMatrix::fro_norm() const {
  // ||Q||_F^2 is the sum of the squared plane norms.
  double s = 0.0;
  for (const auto& p : planes_)
    for (double v : p) s += v * v;
  return std::sqrt(s);
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_shape(*this, o, "add");
  for (int p = 0; p < 4; ++p)
    for (std::size_t i = 0; i < planes_[p].size(); ++i) planes_[p][i] += o.planes_[p][i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_shape(*this, o, "sub");
  for (int p = 0; p < 4; ++p)
    for (std::size_t i = 0; i < planes_[p].size(); ++i) planes_[p][i] -= o.planes_[p][i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& p : planes_)
    for (auto& v : p) v *= s;
  return *this;
}

QMatrix QMatrix::row_block(Index r0, Index r1) const {
  if (r0 < 0 || r1 < r0 || r1 > rows_) throw ShapeError("row_block: bad range");
  QMatrix r(r1 - r0, cols_);
  const auto offset = static_cast<std::size_t>(r0 * cols_);
  const auto count = static_cast<std::size_t>((r1 - r0) * cols_);
  for (int p = 0; p < 4; ++p)
    std::memcpy(r.planes_[p].data(), planes_[p].data() + offset, count * sizeof(double));
  return r;
}

void QMatrix::set_row_block(Index r0, const QMatrix& block) {
  if (block.cols_ != cols_ || r0 < 0 || r0 + block.rows_ > rows_)
    throw ShapeError("set_row_block: bad range");
  const auto offset = static_cast<std::size_t>(r0 * cols_);
  const auto count = static_cast<std::size_t>(block.rows_ * cols_);
  for (int p = 0; p < 4; ++p)
    std::memcpy(planes_[p].data() + offset, block.planes_[p].data(), count * sizeof(double));
}

QMatrix QMatrix::col_block(Index c0, Index c1) const {
  if (c0 < 0 || c1 < c0 || c1 > cols_) throw ShapeError("col_block: bad range");
  QMatrix r(rows_, c1 - c0);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = c0; j < c1; ++j) r.set(i, j - c0, (*this)(i, j));
  return r;
}

QMatrix QMatrix::concat_cols(const QMatrix& right) const {
  if (empty()) return right;
  if (right.empty()) return *this;
  if (right.rows_ != rows_) throw ShapeError("concat_cols: row mismatch");
  QMatrix r(rows_, cols_ + right.cols_);
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) r.set(i, j, (*this)(i, j));
    for (Index j = 0; j < right.cols_; ++j) r.set(i, cols_ + j, right(i, j));
  }
  return r;
}

void QMatrix::scale_col(Index j, const Quaternion& q) {
  for (Index i = 0; i < rows_; ++i) set(i, j, (*this)(i, j) * q);
}

void QMatrix::scale_col(Index j, double s) {
  for (Index i = 0; i < rows_; ++i) set(i, j, (*this)(i, j) * s);
}

bool QMatrix::bit_equal(const QMatrix& o) const {
  if (!same_shape(o)) return false;
  for (int p = 0; p < 4; ++p)
    if (std::memcmp(planes_[p].data(), o.planes_[p].data(),
                    planes_[p].size() * sizeof(double)) != 0)
      return false;
  return true;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  QMatrix r = a;
  r += b;
  return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  QMatrix r = a;
  r -= b;
  return r;
}

QMatrix operator*(const QMatrix& a, double s) {
  QMatrix r = a;
  r *= s;
  return r;
}

QMatrix operator*(double s, const QMatrix& a) { return a * s; }

QMatrix qmat_mul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("qmat_mul: inner dimensions differ");
  QMatrix c(a.rows(), b.cols());

  const auto aw = map_of(a, QMatrix::kW), ax = map_of(a, QMatrix::kX),
             ay = map_of(a, QMatrix::kY), az = map_of(a, QMatrix::kZ);
  const auto bw = map_of(b, QMatrix::kW), bx = map_of(b, QMatrix::kX),
             by = map_of(b, QMatrix::kY), bz = map_of(b, QMatrix::kZ);
  auto cw = map_of(c, QMatrix::kW), cx = map_of(c, QMatrix::kX),
       cy = map_of(c, QMatrix::kY), cz = map_of(c, QMatrix::kZ);

  cw.noalias() = aw * bw;
  cw.noalias() -= ax * bx;
  cw.noalias() -= ay * by;
  cw.noalias() -= az * bz;

  cx.noalias() = aw * bx;
  cx.noalias() += ax * bw;
  cx.noalias() += ay * bz;
  cx.noalias() -= az * by;

  cy.noalias() = aw * by;
  cy.noalias() -= ax * bz;
  cy.noalias() += ay * bw;
  cy.noalias() += az * bx;

  cz.noalias() = aw * bz;
  cz.noalias() += ax * by;
  cz.noalias() -= ay * bx;
  cz.noalias() += az * bw;

  return c;
}

QMatrix qmat_adjoint(const QMatrix& a) { return a.adjoint(); }

double qmat_fro_norm(const QMatrix& a) { return a.fro_norm(); }

void qmat_mul_accumulate_ordered(QMatrix& c, const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("qmat_mul_accumulate_ordered: inner dimensions differ");
  if (c.rows() != a.rows() || c.cols() != b.cols())
    throw ShapeError("qmat_mul_accumulate_ordered: output shape mismatch");

  const Index m = a.rows(), kk = a.cols(), n = b.cols();
  const double* aw = a.plane(QMatrix::kW).data();
  const double* ax = a.plane(QMatrix::kX).data();
  const double* ay = a.plane(QMatrix::kY).data();
  const double* az = a.plane(QMatrix::kZ).data();
  const double* bw = b.plane(QMatrix::kW).data();
  const double* bx = b.plane(QMatrix::kX).data();
  const double* by = b.plane(QMatrix::kY).data();
  const double* bz = b.plane(QMatrix::kZ).data();
  double* cw = c.plane(QMatrix::kW).data();
  double* cx = c.plane(QMatrix::kX).data();
  double* cy = c.plane(QMatrix::kY).data();
  double* cz = c.plane(QMatrix::kZ).data();

  for (Index i = 0; i < m; ++i) {
    double* cwr = cw + i * n;
    double* cxr = cx + i * n;
    double* cyr = cy + i * n;
    double* czr = cz + i * n;
    for (Index k = 0; k < kk; ++k) {
      const double qw = aw[i * kk + k], qx = ax[i * kk + k], qy = ay[i * kk + k],
                   qz = az[i * kk + k];
      const double* bwr = bw + k * n;
      const double* bxr = bx + k * n;
      const double* byr = by + k * n;
      const double* bzr = bz + k * n;
      for (Index j = 0; j < n; ++j) {
        cwr[j] += qw * bwr[j] - qx * bxr[j] - qy * byr[j] - qz * bzr[j];
        cxr[j] += qw * bxr[j] + qx * bwr[j] + qy * bzr[j] - qz * byr[j];
        cyr[j] += qw * byr[j] - qx * bzr[j] + qy * bwr[j] + qz * bxr[j];
        czr[j] += qw * bzr[j] + qx * byr[j] - qy * bxr[j] + qz * bwr[j];
      }
    }
  }
}

QMatrix qmat_mul_ordered(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows(), b.cols());
  qmat_mul_accumulate_ordered(c, a, b);
  return c;
}

}  // namespace qlra
