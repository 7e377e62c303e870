#ifndef QLRA_IO_HPP
#define QLRA_IO_HPP

#include <iosfwd>
#include <string>

#include "qlra/qmatrix.hpp"
#include "qlra/sketching.hpp"
#include "qlra/synthetic.hpp"

namespace qlra {

// QMAT1 container: magic "QMAT1\0", u64 rows, u64 cols, then the four
// row-major little-endian f64 planes in w,x,y,z order. Truncated or
// mis-tagged files are rejected.
void write_qmat(const std::string& path, const QMatrix& m);
QMatrix read_qmat(const std::string& path);
void write_qmat(std::ostream& os, const QMatrix& m);
QMatrix read_qmat(std::istream& is);

// QSKT1 checkpoint: magic "QSKT1\0", the omega and psi spec records
// (u32 kind, u64 rows, u64 cols, u64 seed, f64 density), u64 r/s/l, then Y
// and W as embedded QMAT1 records.
void write_sketch(const std::string& path, const SketchState& st);
SketchState read_sketch(const std::string& path);

// Binary PPM (P6), 8-bit channels. Values quantize with round-to-nearest.
void write_ppm(const std::string& path, const ImageRgb& img);
ImageRgb read_ppm(const std::string& path);

// Streams row blocks of a QMAT1 file without loading the full matrix;
// re-opens per read so the checkpoint workflow can count accesses.
class QmatFileSource final : public MatrixSource {
 public:
  explicit QmatFileSource(std::string path);
  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }
  QMatrix read_rows(Index r0, Index r1) const override;

 private:
  std::string path_;
  Index rows_ = 0;
  Index cols_ = 0;
};

}  // namespace qlra

#endif
