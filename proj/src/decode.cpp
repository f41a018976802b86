#include "cps/decode.hpp"

#include <algorithm>
#include <cmath>

namespace cps {

namespace {

const double kSqrt3 = std::sqrt(3.0);

void require_same_size(const Image8& a, const Image8& b, const Image8& c) {
  if (!a.same_size(b) || !a.same_size(c))
    throw std::invalid_argument("decode: image dimensions differ");
}

inline float phase_at(int a, int b, int c) {
  // a,b,c are I1,I2,I3. Numerator/denominator of the three-step arctangent.
  const int num_i = a - c;
  const int den_i = 2 * b - a - c;
  if (num_i == 0 && den_i == 0) return invalid_value();
  return static_cast<float>(std::atan2(kSqrt3 * num_i, static_cast<double>(den_i)));
}

inline float modulation_at(int a, int b, int c) {
  const double num = a - c;
  const double den = 2 * b - a - c;
  return static_cast<float>(std::sqrt(3.0 * num * num + den * den) / 3.0);
}

}  // namespace

ImageF wrapped_phase(const Image8& i1, const Image8& i2, const Image8& i3) {
  require_same_size(i1, i2, i3);
  ImageF out(i1.width, i1.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < i1.height; ++y)
    for (int x = 0; x < i1.width; ++x)
      out.at(x, y) = phase_at(i1.at(x, y), i2.at(x, y), i3.at(x, y));
  return out;
}

ImageF wrapped_phase_serial(const Image8& i1, const Image8& i2, const Image8& i3) {
  require_same_size(i1, i2, i3);
  ImageF out(i1.width, i1.height);
  for (int y = 0; y < i1.height; ++y)
    for (int x = 0; x < i1.width; ++x)
      out.at(x, y) = phase_at(i1.at(x, y), i2.at(x, y), i3.at(x, y));
  return out;
}

ModulationMask modulation_and_mask(const Image8& i1, const Image8& i2, const Image8& i3,
                                   double m_min) {
  require_same_size(i1, i2, i3);
  ModulationMask mm{ImageF(i1.width, i1.height), Image8(i1.width, i1.height), m_min};
#pragma omp parallel for schedule(static)
  for (int y = 0; y < i1.height; ++y)
    for (int x = 0; x < i1.width; ++x) {
      const float m = modulation_at(i1.at(x, y), i2.at(x, y), i3.at(x, y));
      mm.modulation.at(x, y) = m;
      mm.mask.at(x, y) = m >= m_min ? kMaskValid : kMaskInvalid;
    }
  return mm;
}

ModulationMask modulation_and_mask_serial(const Image8& i1, const Image8& i2, const Image8& i3,
                                          double m_min) {
  require_same_size(i1, i2, i3);
  ModulationMask mm{ImageF(i1.width, i1.height), Image8(i1.width, i1.height), m_min};
  for (int y = 0; y < i1.height; ++y)
    for (int x = 0; x < i1.width; ++x) {
      const float m = modulation_at(i1.at(x, y), i2.at(x, y), i3.at(x, y));
      mm.modulation.at(x, y) = m;
      mm.mask.at(x, y) = m >= m_min ? kMaskValid : kMaskInvalid;
    }
  return mm;
}

ImageF sinusoid_mean(const Image8& i1, const Image8& i2, const Image8& i3) {
  require_same_size(i1, i2, i3);
  ImageF out(i1.width, i1.height);
  for (int y = 0; y < i1.height; ++y)
    for (int x = 0; x < i1.width; ++x)
      out.at(x, y) = static_cast<float>(i1.at(x, y) + i2.at(x, y) + i3.at(x, y)) / 3.0f;
  return out;
}

namespace {

inline float codeword_at(const std::vector<const Image8*>& planes, const ImageF& threshold,
                         CodeKind kind, int x, int y) {
  std::uint32_t code = 0;
  for (const Image8* plane : planes) {
    code <<= 1;
    if (static_cast<float>(plane->at(x, y)) >= threshold.at(x, y)) code |= 1u;
  }
  return static_cast<float>(kind == CodeKind::gray ? gray_decode(code) : code);
}

void check_code_inputs(const std::vector<const Image8*>& planes, const ImageF& threshold) {
  if (planes.empty() || planes.size() > 31)
    throw std::invalid_argument("decode_codewords: bit count must be in [1,31]");
  for (const Image8* p : planes)
    if (p->width != threshold.width || p->height != threshold.height)
      throw std::invalid_argument("decode_codewords: plane/threshold dimensions differ");
}

}  // namespace

ImageF decode_codewords(const std::vector<const Image8*>& bit_planes, const ImageF& threshold,
                        CodeKind kind) {
  check_code_inputs(bit_planes, threshold);
  ImageF codes(threshold.width, threshold.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < threshold.height; ++y)
    for (int x = 0; x < threshold.width; ++x)
      codes.at(x, y) = codeword_at(bit_planes, threshold, kind, x, y);
  return codes;
}

ImageF decode_codewords_serial(const std::vector<const Image8*>& bit_planes,
                               const ImageF& threshold, CodeKind kind) {
  check_code_inputs(bit_planes, threshold);
  ImageF codes(threshold.width, threshold.height);
  for (int y = 0; y < threshold.height; ++y)
    for (int x = 0; x < threshold.width; ++x)
      codes.at(x, y) = codeword_at(bit_planes, threshold, kind, x, y);
  return codes;
}

ImageF unwrap(const ImageF& wrapped, const ImageF& codes) {
  if (!wrapped.same_size(codes))
    throw std::invalid_argument("unwrap: dimensions differ");
  ImageF out(wrapped.width, wrapped.height);
  const double two_pi = 2.0 * M_PI;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < wrapped.height; ++y)
    for (int x = 0; x < wrapped.width; ++x) {
      const float phi = wrapped.at(x, y);
      const float code = codes.at(x, y);
      if (is_invalid(phi) || is_invalid(code)) {
        out.at(x, y) = invalid_value();
        continue;
      }
      const double remapped = phi < 0 ? phi + two_pi : phi;
      out.at(x, y) = static_cast<float>(remapped + two_pi * code);
    }
  return out;
}

Correspondence correspondence(const ImageF& unwrapped_v, const ImageF& unwrapped_h,
                              int fringe_width_v, int fringe_width_h, int proj_width,
                              int proj_height) {
  if (!unwrapped_v.same_size(unwrapped_h))
    throw std::invalid_argument("correspondence: dimensions differ");
  Correspondence corr{ImageF(unwrapped_v.width, unwrapped_v.height),
                      ImageF(unwrapped_v.width, unwrapped_v.height),
                      Image8(unwrapped_v.width, unwrapped_v.height), fringe_width_v,
                      fringe_width_h};
  const double two_pi = 2.0 * M_PI;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < unwrapped_v.height; ++y)
    for (int x = 0; x < unwrapped_v.width; ++x) {
      const float dv = unwrapped_v.at(x, y);
      const float dh = unwrapped_h.at(x, y);
      if (is_invalid(dv) || is_invalid(dh)) {
        corr.xp.at(x, y) = invalid_value();
        corr.yp.at(x, y) = invalid_value();
        continue;
      }
      const double xp = fringe_width_v * (dv / two_pi);
      const double yp = fringe_width_h * (dh / two_pi);
      if (xp >= 0 && xp < proj_width && yp >= 0 && yp < proj_height) {
        corr.xp.at(x, y) = static_cast<float>(xp);
        corr.yp.at(x, y) = static_cast<float>(yp);
        corr.valid.at(x, y) = kMaskValid;
      } else {
        corr.xp.at(x, y) = invalid_value();
        corr.yp.at(x, y) = invalid_value();
      }
    }
  return corr;
}

ImageF floor_map(const ImageF& continuous) {
  ImageF out(continuous.width, continuous.height);
  for (std::size_t i = 0; i < continuous.data.size(); ++i) {
    const float v = continuous.data[i];
    out.data[i] = is_invalid(v) ? invalid_value() : std::floor(v);
  }
  return out;
}

namespace {

inline float median_at(const ImageF& codes, int x, int y, int radius) {
  const float center = codes.at(x, y);
  if (is_invalid(center)) return center;
  float window[121];  // radius <= 5
  int n = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    const int yy = y + dy;
    if (yy < 0 || yy >= codes.height) continue;
    for (int dx = -radius; dx <= radius; ++dx) {
      const int xx = x + dx;
      if (xx < 0 || xx >= codes.width) continue;
      const float v = codes.at(xx, yy);
      if (!is_invalid(v)) window[n++] = v;
    }
  }
  std::nth_element(window, window + n / 2, window + n);
  return window[n / 2];
}

}  // namespace

ImageF median_filter_codes(const ImageF& codes, int radius) {
  if (radius < 1 || radius > 5)
    throw std::invalid_argument("median_filter_codes: radius must be in [1,5]");
  ImageF out(codes.width, codes.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < codes.height; ++y)
    for (int x = 0; x < codes.width; ++x) out.at(x, y) = median_at(codes, x, y, radius);
  return out;
}

ImageF median_filter_codes_serial(const ImageF& codes, int radius) {
  if (radius < 1 || radius > 5)
    throw std::invalid_argument("median_filter_codes: radius must be in [1,5]");
  ImageF out(codes.width, codes.height);
  for (int y = 0; y < codes.height; ++y)
    for (int x = 0; x < codes.width; ++x) out.at(x, y) = median_at(codes, x, y, radius);
  return out;
}

void mask_correspondence_jumps(Correspondence& corr) {
  const float jump_x = corr.fringe_width_v * 0.5f;
  const float jump_y = corr.fringe_width_h * 0.5f;
  const int w = corr.xp.width, h = corr.xp.height;
  std::vector<std::uint8_t> kill(static_cast<std::size_t>(w) * h, 0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (corr.valid.at(x, y) != kMaskValid) continue;
      // Isolated horizontal jump in xp: both row neighbors disagree by > half a fringe.
      if (x > 0 && x + 1 < w && corr.valid.at(x - 1, y) == kMaskValid &&
          corr.valid.at(x + 1, y) == kMaskValid) {
        const float v = corr.xp.at(x, y);
        if (std::abs(v - corr.xp.at(x - 1, y)) > jump_x &&
            std::abs(v - corr.xp.at(x + 1, y)) > jump_x) {
          kill[static_cast<std::size_t>(y) * w + x] = 1;
          continue;
        }
      }
      // Isolated vertical jump in yp.
      if (y > 0 && y + 1 < h && corr.valid.at(x, y - 1) == kMaskValid &&
          corr.valid.at(x, y + 1) == kMaskValid) {
        const float v = corr.yp.at(x, y);
        if (std::abs(v - corr.yp.at(x, y - 1)) > jump_y &&
            std::abs(v - corr.yp.at(x, y + 1)) > jump_y)
          kill[static_cast<std::size_t>(y) * w + x] = 1;
      }
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (kill[static_cast<std::size_t>(y) * w + x]) {
        corr.valid.at(x, y) = kMaskInvalid;
        corr.xp.at(x, y) = invalid_value();
        corr.yp.at(x, y) = invalid_value();
      }
}

}  // namespace cps
