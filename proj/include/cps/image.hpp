#ifndef CPS_IMAGE_HPP
#define CPS_IMAGE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cps {

/// 8-bit grayscale raster, row-major, row 0 at the top.
struct Image8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  Image8() = default;
  Image8(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("Image8: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, fill);
  }

  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  bool same_size(const Image8& o) const { return width == o.width && height == o.height; }
};

/// Single-channel float raster. Invalid pixels carry a quiet-NaN sentinel.
struct ImageF {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  ImageF() = default;
  ImageF(int w, int h, float fill = 0.f) : width(w), height(h) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("ImageF: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, fill);
  }

  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  bool same_size(const ImageF& o) const { return width == o.width && height == o.height; }
};

/// Sentinel marking an invalid pixel in float rasters.
inline float invalid_value() { return std::numeric_limits<float>::quiet_NaN(); }
inline bool is_invalid(float v) { return std::isnan(v); }

/// Value equality treating any-NaN == any-NaN (sentinels compare equal).
inline bool equal_with_sentinel(const ImageF& a, const ImageF& b) {
  if (a.width != b.width || a.height != b.height) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const float x = a.data[i], y = b.data[i];
    if (std::isnan(x) != std::isnan(y)) return false;
    if (!std::isnan(x) && x != y) return false;
  }
  return true;
}

inline bool operator==(const Image8& a, const Image8& b) {
  return a.width == b.width && a.height == b.height && a.data == b.data;
}

constexpr std::uint8_t kMaskValid = 255;
constexpr std::uint8_t kMaskInvalid = 0;

}  // namespace cps

#endif
