#include "cps/patterns.hpp"

#include <cmath>

namespace cps {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

std::uint8_t quantize(double v) {
  const double r = std::round(v);
  return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

}  // namespace

int PatternSpec::bit_count() const { return log2_exact(period_count()); }

void PatternSpec::validate() const {
  if (proj_width < 1 || proj_height < 1)
    throw std::invalid_argument("PatternSpec: projector size must be >= 1");
  if (fringe_width < 4) throw std::invalid_argument("PatternSpec: fringe width must be >= 4");
  if (!(intensity_dc - intensity_mod >= 0.0) || !(intensity_dc + intensity_mod <= 255.0))
    throw std::invalid_argument("PatternSpec: intensity range exceeds [0,255]");
  if (extent() % fringe_width != 0)
    throw std::invalid_argument("PatternSpec: extent " + std::to_string(extent()) +
                                " not divisible by fringe width " + std::to_string(fringe_width));
  if (!is_power_of_two(period_count()))
    throw std::invalid_argument("PatternSpec: period count " + std::to_string(period_count()) +
                                " is not a power of two");
}

std::uint32_t gray_encode(std::uint32_t n) { return n ^ (n >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t n = 0;
  for (; g; g >>= 1) n ^= g;
  return n;
}

std::array<Image8, 3> generate_sinusoids(const PatternSpec& spec) {
  spec.validate();
  const double theta = 2.0 * M_PI / 3.0;
  const int extent = spec.extent();
  // One period of each sinusoid; the pattern repeats exactly.
  std::array<std::vector<std::uint8_t>, 3> profile;
  for (auto& p : profile) p.resize(static_cast<std::size_t>(extent));
  for (int x = 0; x < extent; ++x) {
    const double phase = 2.0 * M_PI * x / spec.fringe_width;
    profile[0][x] = quantize(spec.intensity_dc + spec.intensity_mod * std::cos(phase - theta));
    profile[1][x] = quantize(spec.intensity_dc + spec.intensity_mod * std::cos(phase));
    profile[2][x] = quantize(spec.intensity_dc + spec.intensity_mod * std::cos(phase + theta));
  }
  std::array<Image8, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = Image8(spec.proj_width, spec.proj_height);
    for (int y = 0; y < spec.proj_height; ++y)
      for (int x = 0; x < spec.proj_width; ++x)
        out[i].at(x, y) = profile[i][spec.orientation == Orientation::vertical ? x : y];
  }
  return out;
}

std::vector<Image8> generate_code_planes(const PatternSpec& spec) {
  spec.validate();
  const int bits = spec.bit_count();
  const int extent = spec.extent();
  std::vector<std::uint32_t> codeword(static_cast<std::size_t>(extent));
  for (int x = 0; x < extent; ++x) {
    const auto period = static_cast<std::uint32_t>(x / spec.fringe_width);
    codeword[x] = spec.code_kind == CodeKind::gray ? gray_encode(period) : period;
  }
  std::vector<Image8> planes;
  planes.reserve(static_cast<std::size_t>(bits));
  for (int b = 0; b < bits; ++b) {
    const int shift = bits - 1 - b;  // MSB first
    Image8 img(spec.proj_width, spec.proj_height);
    for (int y = 0; y < spec.proj_height; ++y)
      for (int x = 0; x < spec.proj_width; ++x) {
        const std::uint32_t code =
            codeword[spec.orientation == Orientation::vertical ? x : y];
        img.at(x, y) = ((code >> shift) & 1u) ? 255 : 0;
      }
    planes.push_back(std::move(img));
  }
  return planes;
}

PatternSet generate_pattern_set(const PatternSpec& spec) {
  PatternSet set;
  set.sinusoids = generate_sinusoids(spec);
  set.code_planes = generate_code_planes(spec);
  set.spec = spec;
  return set;
}

const char* orientation_tag(Orientation o) {
  return o == Orientation::vertical ? "v" : "h";
}

namespace {

void append_set(PatternStack& stack, const PatternSet& set) {
  const char* tag = orientation_tag(set.spec.orientation);
  for (int i = 0; i < 3; ++i) {
    stack.images.push_back(set.sinusoids[i]);
    stack.manifest.entries.push_back(
        {std::string(tag) + "_sin" + std::to_string(i) + ".pgm", "sinusoid",
         set.spec.orientation, i});
  }
  for (std::size_t b = 0; b < set.code_planes.size(); ++b) {
    stack.images.push_back(set.code_planes[b]);
    stack.manifest.entries.push_back(
        {std::string(tag) + "_bit" + std::to_string(b) + ".pgm", "code",
         set.spec.orientation, static_cast<int>(b)});
  }
}

}  // namespace

PatternStack full_pattern_stack(const PatternSpec& spec_v, const PatternSpec& spec_h) {
  if (spec_v.orientation != Orientation::vertical || spec_h.orientation != Orientation::horizontal)
    throw std::invalid_argument("full_pattern_stack: specs have wrong orientations");
  if (spec_v.proj_width != spec_h.proj_width || spec_v.proj_height != spec_h.proj_height)
    throw std::invalid_argument("full_pattern_stack: projector dimensions differ");
  PatternStack stack;
  append_set(stack, generate_pattern_set(spec_v));
  append_set(stack, generate_pattern_set(spec_h));
  stack.manifest.spec_v = spec_v;
  stack.manifest.spec_h = spec_h;
  stack.manifest.has_vertical = true;
  stack.manifest.has_horizontal = true;
  return stack;
}

PatternStack single_orientation_stack(const PatternSpec& spec) {
  PatternStack stack;
  append_set(stack, generate_pattern_set(spec));
  if (spec.orientation == Orientation::vertical) {
    stack.manifest.spec_v = spec;
    stack.manifest.has_vertical = true;
  } else {
    stack.manifest.spec_h = spec;
    stack.manifest.has_horizontal = true;
  }
  return stack;
}

}  // namespace cps
