#ifndef CPS_PATTERNS_HPP
#define CPS_PATTERNS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cps/image.hpp"

namespace cps {

enum class Orientation { vertical, horizontal };  // vertical: phase varies with column
enum class CodeKind { gray, plain_binary };

/// Parameters of one projected pattern stack orientation.
struct PatternSpec {
  int proj_width = 1024;
  int proj_height = 768;
  int fringe_width = 64;  // pixels per sinusoidal period
  Orientation orientation = Orientation::vertical;
  double intensity_dc = 127.5;
  double intensity_mod = 127.5;
  CodeKind code_kind = CodeKind::gray;

  int extent() const { return orientation == Orientation::vertical ? proj_width : proj_height; }
  int period_count() const { return extent() / fringe_width; }
  int bit_count() const;
  /// Throws std::invalid_argument when any invariant fails
  /// (range, fringe_width >= 4, divisibility, power-of-two period count).
  void validate() const;
};

/// Three phase-shifted sinusoids plus the code bit-planes for one orientation.
struct PatternSet {
  std::array<Image8, 3> sinusoids;
  std::vector<Image8> code_planes;  // MSB first
  PatternSpec spec;
};

std::uint32_t gray_encode(std::uint32_t n);
std::uint32_t gray_decode(std::uint32_t g);

/// Sinusoids I1/I2/I3 with shifts -2pi/3, 0, +2pi/3, quantized to 8 bit.
std::array<Image8, 3> generate_sinusoids(const PatternSpec& spec);

/// Bit-planes of the per-period codeword; stripe width equals the fringe width.
std::vector<Image8> generate_code_planes(const PatternSpec& spec);

PatternSet generate_pattern_set(const PatternSpec& spec);

/// One projected frame in capture order.
struct ManifestEntry {
  std::string file;
  std::string role;  // "sinusoid" | "code"
  Orientation orientation;
  int index;  // shift index 0..2, or bit index 0 = MSB
};

/// Ordered capture plan: vertical sinusoids, vertical code planes,
/// then the same for horizontal.
struct PatternManifest {
  std::vector<ManifestEntry> entries;
  PatternSpec spec_v;
  PatternSpec spec_h;
  bool has_vertical = false;
  bool has_horizontal = false;
};

/// Builds both pattern sets and the capture-plan manifest.
/// Throws std::invalid_argument when the specs disagree on projector size.
struct PatternStack {
  std::vector<Image8> images;  // parallel to manifest.entries
  PatternManifest manifest;
};
PatternStack full_pattern_stack(const PatternSpec& spec_v, const PatternSpec& spec_h);
PatternStack single_orientation_stack(const PatternSpec& spec);

const char* orientation_tag(Orientation o);

}  // namespace cps

#endif
