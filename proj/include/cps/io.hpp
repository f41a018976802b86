#ifndef CPS_IO_HPP
#define CPS_IO_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cps/image.hpp"

namespace cps {

/// Failure categories for raster/document I/O, reported distinctly.
enum class io_errc {
  open_failure,
  malformed_header,
  size_overflow,
  truncated_payload,
  write_failure,
  schema_error,
};

class io_error : public std::runtime_error {
 public:
  io_error(io_errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  io_errc code() const { return code_; }

 private:
  io_errc code_;
};

/// Numerical failures (divergence, degeneracy) surfaced by geometry and calibration.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointCloud {
  struct Point {
    double x, y, z;
    // Source camera pixel, when the point came from a per-pixel map.
    float xc = -1.f, yc = -1.f;
    bool has_pixel = false;
  };
  std::vector<Point> points;
};

// Binary PGM, P5, maxval 255.
void write_pgm(const Image8& img, const std::string& path);
Image8 read_pgm(const std::string& path);

// Grayscale PFM ("Pf"), little-endian, scale -1.0, bottom-up rows.
// Invalid pixels are stored as a quiet-NaN bit pattern.
void write_pfm(const ImageF& img, const std::string& path);
ImageF read_pfm(const std::string& path);

// Three-channel PFM ("PF") used for per-pixel XYZ point maps.
void write_pfm3(const ImageF& x, const ImageF& y, const ImageF& z, const std::string& path);
std::array<ImageF, 3> read_pfm3(const std::string& path);

// ASCII PLY 1.0, vertices only, full double precision.
void write_ply(const PointCloud& cloud, const std::string& path);
PointCloud read_ply(const std::string& path);

}  // namespace cps

#endif
