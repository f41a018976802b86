#ifndef CPS_DECODE_HPP
#define CPS_DECODE_HPP

#include <vector>

#include "cps/image.hpp"
#include "cps/patterns.hpp"

namespace cps {

/// Per-pixel modulation estimate plus the validity mask it induces.
struct ModulationMask {
  ImageF modulation;
  Image8 mask;  // 255 valid, 0 invalid
  double m_min = 0.0;
};

/// Dense camera-to-projector correspondence in continuous projector pixels.
struct Correspondence {
  ImageF xp;  // continuous projector column, NaN when invalid
  ImageF yp;  // continuous projector row
  Image8 valid;
  int fringe_width_v = 0;
  int fringe_width_h = 0;
};

/// Three-step wrapped phase in (-pi, pi]; pixels with zero signal are invalid.
/// OpenMP-parallel over rows; wrapped_phase_serial is the reference loop.
ImageF wrapped_phase(const Image8& i1, const Image8& i2, const Image8& i3);
ImageF wrapped_phase_serial(const Image8& i1, const Image8& i2, const Image8& i3);

/// Per-pixel sinusoid amplitude; valid iff modulation >= m_min.
ModulationMask modulation_and_mask(const Image8& i1, const Image8& i2, const Image8& i3,
                                   double m_min);
ModulationMask modulation_and_mask_serial(const Image8& i1, const Image8& i2, const Image8& i3,
                                          double m_min);

/// Threshold map for code decoding: per-pixel mean of the three sinusoid captures.
ImageF sinusoid_mean(const Image8& i1, const Image8& i2, const Image8& i3);

/// Decoded period index per pixel (stored as exact integers in float).
/// Planes are MSB first; intensity equal to the threshold decodes as bit 1.
ImageF decode_codewords(const std::vector<const Image8*>& bit_planes, const ImageF& threshold,
                        CodeKind kind);
ImageF decode_codewords_serial(const std::vector<const Image8*>& bit_planes,
                               const ImageF& threshold, CodeKind kind);

/// Absolute phase: wrapped remapped to [0, 2pi) plus 2pi * code.
ImageF unwrap(const ImageF& wrapped, const ImageF& codes);

/// Continuous projector coordinates from the two unwrapped phases.
/// Validity is the conjunction of input validity and the in-bounds check.
Correspondence correspondence(const ImageF& unwrapped_v, const ImageF& unwrapped_h,
                              int fringe_width_v, int fringe_width_h, int proj_width,
                              int proj_height);

/// Integer map of a continuous coordinate (floor), for visualization parity.
ImageF floor_map(const ImageF& continuous);

/// Median over the (2r+1)^2 window restricted to valid pixels; invalid pixels unchanged.
ImageF median_filter_codes(const ImageF& codes, int radius = 1);
ImageF median_filter_codes_serial(const ImageF& codes, int radius = 1);

/// Invalidates isolated one-pixel jumps of xp along rows and yp along columns.
/// Catches period-boundary code/phase mismatches that survive decoding.
void mask_correspondence_jumps(Correspondence& corr);

}  // namespace cps

#endif
