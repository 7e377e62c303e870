#ifndef QLRA_QMATRIX_HPP
#define QLRA_QMATRIX_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qlra/quaternion.hpp"

namespace qlra {

using Index = std::int64_t;

// Dense quaternion matrix stored as four contiguous row-major real planes
// (w, x, y, z). Values are immutable in spirit: all operations below are pure
// and return fresh matrices, so sharing across threads is safe.
class QMatrix {
 public:
  enum Plane { kW = 0, kX = 1, kY = 2, kZ = 3 };

  QMatrix() = default;
  QMatrix(Index rows, Index cols);  // zero-initialized

  static QMatrix zero(Index rows, Index cols) { return QMatrix(rows, cols); }
  static QMatrix identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return rows_ * cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& at(Plane p, Index i, Index j) { return planes_[p][i * cols_ + j]; }
  double at(Plane p, Index i, Index j) const { return planes_[p][i * cols_ + j]; }
  double& w(Index i, Index j) { return at(kW, i, j); }
  double& x(Index i, Index j) { return at(kX, i, j); }
  double& y(Index i, Index j) { return at(kY, i, j); }
  double& z(Index i, Index j) { return at(kZ, i, j); }
  double w(Index i, Index j) const { return at(kW, i, j); }
  double x(Index i, Index j) const { return at(kX, i, j); }
  double y(Index i, Index j) const { return at(kY, i, j); }
  double z(Index i, Index j) const { return at(kZ, i, j); }

  Quaternion operator()(Index i, Index j) const {
    return {w(i, j), x(i, j), y(i, j), z(i, j)};
  }
  void set(Index i, Index j, const Quaternion& q) {
    w(i, j) = q.w;
    x(i, j) = q.x;
    y(i, j) = q.y;
    z(i, j) = q.z;
  }

  const std::vector<double>& plane(Plane p) const { return planes_[p]; }
  std::vector<double>& plane(Plane p) { return planes_[p]; }

  QMatrix adjoint() const;  // conjugate transpose
  QMatrix conjugate() const;
  double fro_norm() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  // Copy of rows [r0, r1).
  QMatrix row_block(Index r0, Index r1) const;
  void set_row_block(Index r0, const QMatrix& block);
  QMatrix col_block(Index c0, Index c1) const;
  QMatrix col(Index j) const { return col_block(j, j + 1); }
  QMatrix concat_cols(const QMatrix& right) const;

  // Right-multiplies column j by q (columns transform as v <- v q).
  void scale_col(Index j, const Quaternion& q);
  void scale_col(Index j, double s);

  bool same_shape(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }
  bool bit_equal(const QMatrix& o) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::array<std::vector<double>, 4> planes_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, double s);
QMatrix operator*(double s, const QMatrix& a);

// Product via 16 real plane GEMMs combined by the multiplication table; the
// heavy lifting stays in real matrix kernels.
QMatrix qmat_mul(const QMatrix& a, const QMatrix& b);
inline QMatrix operator*(const QMatrix& a, const QMatrix& b) { return qmat_mul(a, b); }

QMatrix qmat_adjoint(const QMatrix& a);
double qmat_fro_norm(const QMatrix& a);

// c += a*b with a fixed k-ascending accumulation order per output entry.
// Splitting a by column blocks (and b by the matching row blocks) and
// accumulating the blocks in ascending order reproduces the monolithic result
// bit for bit; the streaming sketch paths rely on this.
void qmat_mul_accumulate_ordered(QMatrix& c, const QMatrix& a, const QMatrix& b);
QMatrix qmat_mul_ordered(const QMatrix& a, const QMatrix& b);

}  // namespace qlra

#endif
