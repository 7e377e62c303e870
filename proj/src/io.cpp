#include "qlra/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qlra/errors.hpp"

namespace qlra {

static_assert(std::endian::native == std::endian::little,
              "serialized formats are little-endian");

namespace {

constexpr char kQmatMagic[6] = {'Q', 'M', 'A', 'T', '1', '\0'};
constexpr char kSketchMagic[6] = {'Q', 'S', 'K', 'T', '1', '\0'};
constexpr std::streamoff kQmatHeaderBytes = 6 + 8 + 8;

void write_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw IoError("truncated file: expected u64");
  return v;
}

void write_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

double read_f64(std::istream& is) {
  double v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw IoError("truncated file: expected f64");
  return v;
}

void expect_magic(std::istream& is, const char (&magic)[6], const char* what) {
  char buf[6];
  if (!is.read(buf, 6) || std::memcmp(buf, magic, 6) != 0)
    throw IoError(std::string("not a ") + what + " file");
}

void write_spec(std::ostream& os, const TestMatrixSpec& spec) {
  const std::uint32_t tag = static_cast<std::uint32_t>(spec.kind);
  os.write(reinterpret_cast<const char*>(&tag), sizeof tag);
  write_u64(os, static_cast<std::uint64_t>(spec.rows));
  write_u64(os, static_cast<std::uint64_t>(spec.cols));
  write_u64(os, spec.seed);
  write_f64(os, spec.density);
}

TestMatrixSpec read_spec(std::istream& is) {
  std::uint32_t tag = 0;
  if (!is.read(reinterpret_cast<char*>(&tag), sizeof tag))
    throw IoError("truncated sketch file: spec record");
  if (tag > 3) throw IoError("sketch file: unknown test matrix kind tag");
  TestMatrixSpec spec;
  spec.kind = static_cast<TestMatrixKind>(tag);
  spec.rows = static_cast<Index>(read_u64(is));
  spec.cols = static_cast<Index>(read_u64(is));
  spec.seed = read_u64(is);
  spec.density = read_f64(is);
  return spec;
}

}  // namespace

void write_qmat(std::ostream& os, const QMatrix& m) {
  os.write(kQmatMagic, 6);
  write_u64(os, static_cast<std::uint64_t>(m.rows()));
  write_u64(os, static_cast<std::uint64_t>(m.cols()));
  for (int p = 0; p < 4; ++p) {
    const auto& plane = m.plane(static_cast<QMatrix::Plane>(p));
    os.write(reinterpret_cast<const char*>(plane.data()),
             static_cast<std::streamsize>(plane.size() * sizeof(double)));
  }
  if (!os) throw IoError("write_qmat: stream failure");
}

QMatrix read_qmat(std::istream& is) {
  expect_magic(is, kQmatMagic, "QMAT1");
  const auto rows = static_cast<Index>(read_u64(is));
  const auto cols = static_cast<Index>(read_u64(is));
  if (rows < 0 || cols < 0) throw IoError("read_qmat: bad dimensions");
  QMatrix m(rows, cols);
  for (int p = 0; p < 4; ++p) {
    auto& plane = m.plane(static_cast<QMatrix::Plane>(p));
    if (!is.read(reinterpret_cast<char*>(plane.data()),
                 static_cast<std::streamsize>(plane.size() * sizeof(double))))
      throw IoError("read_qmat: truncated plane data");
  }
  return m;
}

void write_qmat(const std::string& path, const QMatrix& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_qmat(os, m);
}

QMatrix read_qmat(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  return read_qmat(is);
}

void write_sketch(const std::string& path, const SketchState& st) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os.write(kSketchMagic, 6);
  write_spec(os, st.omega_spec);
  write_spec(os, st.psi_spec);
  write_u64(os, static_cast<std::uint64_t>(st.r));
  write_u64(os, static_cast<std::uint64_t>(st.s));
  write_u64(os, static_cast<std::uint64_t>(st.l));
  write_qmat(os, st.y);
  write_qmat(os, st.w);
  if (!os) throw IoError("write_sketch: stream failure");
}

SketchState read_sketch(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  expect_magic(is, kSketchMagic, "QSKT1");
  SketchState st;
  st.omega_spec = read_spec(is);
  st.psi_spec = read_spec(is);
  st.r = static_cast<Index>(read_u64(is));
  st.s = static_cast<Index>(read_u64(is));
  st.l = static_cast<Index>(read_u64(is));
  st.y = read_qmat(is);
  st.w = read_qmat(is);
  if (st.y.cols() != st.s || st.w.rows() != st.l)
    throw IoError("read_sketch: inconsistent dimensions");
  return st;
}

void write_ppm(const std::string& path, const ImageRgb& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "P6\n" << img.cols << ' ' << img.rows << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(img.cols) * 3);
  for (Index i = 0; i < img.rows; ++i) {
    for (Index j = 0; j < img.cols; ++j)
      for (int c = 0; c < 3; ++c) {
        const double v = std::clamp(img.at(i, j, c), 0.0, 1.0);
        row[static_cast<std::size_t>(j * 3 + c)] =
            static_cast<unsigned char>(std::lround(v * 255.0));
      }
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row.size()));
  }
  if (!os) throw IoError("write_ppm: stream failure");
}

namespace {

int next_pnm_token(std::istream& is) {
  // Skips whitespace and '#' comments, returns the next integer.
  while (true) {
    int ch = is.peek();
    if (ch == '#') {
      std::string line;
      std::getline(is, line);
    } else if (std::isspace(ch)) {
      is.get();
    } else {
      break;
    }
  }
  int value = -1;
  is >> value;
  if (!is) throw IoError("read_ppm: malformed header");
  return value;
}

}  // namespace

ImageRgb read_ppm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  char m0 = 0, m1 = 0;
  is.get(m0).get(m1);
  if (m0 != 'P' || m1 != '6')
    throw ShapeError("read_ppm: only 3-channel binary PPM (P6) input is supported");
  const int cols = next_pnm_token(is);
  const int rows = next_pnm_token(is);
  const int maxval = next_pnm_token(is);
  if (maxval != 255) throw IoError("read_ppm: only maxval 255 is supported");
  is.get();  // single whitespace before raster
  ImageRgb img(rows, cols);
  std::vector<unsigned char> row(static_cast<std::size_t>(cols) * 3);
  for (Index i = 0; i < rows; ++i) {
    if (!is.read(reinterpret_cast<char*>(row.data()),
                 static_cast<std::streamsize>(row.size())))
      throw IoError("read_ppm: truncated raster");
    for (Index j = 0; j < cols; ++j)
      for (int c = 0; c < 3; ++c)
        img.at(i, j, c) = static_cast<double>(row[static_cast<std::size_t>(j * 3 + c)]) / 255.0;
  }
  return img;
}

QmatFileSource::QmatFileSource(std::string path) : path_(std::move(path)) {
  std::ifstream is(path_, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path_);
  expect_magic(is, kQmatMagic, "QMAT1");
  rows_ = static_cast<Index>(read_u64(is));
  cols_ = static_cast<Index>(read_u64(is));
}

QMatrix QmatFileSource::read_rows(Index r0, Index r1) const {
  if (r0 < 0 || r1 < r0 || r1 > rows_) throw ShapeError("read_rows: bad range");
  std::ifstream is(path_, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path_);
  QMatrix block(r1 - r0, cols_);
  const std::streamoff plane_bytes =
      static_cast<std::streamoff>(rows_) * cols_ * static_cast<std::streamoff>(sizeof(double));
  for (int p = 0; p < 4; ++p) {
    const std::streamoff off = kQmatHeaderBytes + p * plane_bytes +
                               static_cast<std::streamoff>(r0) * cols_ *
                                   static_cast<std::streamoff>(sizeof(double));
    is.seekg(off);
    auto& plane = block.plane(static_cast<QMatrix::Plane>(p));
    if (!is.read(reinterpret_cast<char*>(plane.data()),
                 static_cast<std::streamsize>(plane.size() * sizeof(double))))
      throw IoError("read_rows: truncated plane data");
  }
  return block;
}

}  // namespace qlra
