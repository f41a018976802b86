#include "cps/io.hpp"

#include <bit>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cps {

namespace {

constexpr std::size_t kMaxPixels = std::size_t{1} << 30;

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      break;
    }
  }
  while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
  return tok;
}

long parse_dim(const std::string& tok, const std::string& path) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw io_error(io_errc::malformed_header, path + ": malformed header token '" + tok + "'");
  errno = 0;
  long v = std::strtol(tok.c_str(), nullptr, 10);
  if (errno == ERANGE || v > (1L << 24))
    throw io_error(io_errc::size_overflow, path + ": dimension too large");
  if (v < 1)
    throw io_error(io_errc::malformed_header, path + ": zero or negative dimension");
  return v;
}

void check_pixel_count(long w, long h, const std::string& path) {
  if (static_cast<std::size_t>(w) * static_cast<std::size_t>(h) > kMaxPixels)
    throw io_error(io_errc::size_overflow, path + ": image too large");
}

float canonical_nan() {
  const std::uint32_t bits = 0x7FC00000u;
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

void swap4(char* p) {
  std::swap(p[0], p[3]);
  std::swap(p[1], p[2]);
}

}  // namespace

void write_pgm(const Image8& img, const std::string& path) {
  if (img.width < 1 || img.height < 1)
    throw std::invalid_argument("write_pgm: empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(io_errc::open_failure, path + ": cannot open for writing");
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
  if (!out) throw io_error(io_errc::write_failure, path + ": write failed");
}

Image8 read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(io_errc::open_failure, path + ": cannot open");
  if (next_token(in) != "P5")
    throw io_error(io_errc::malformed_header, path + ": not a binary PGM (P5)");
  const long w = parse_dim(next_token(in), path);
  const long h = parse_dim(next_token(in), path);
  const long maxval = parse_dim(next_token(in), path);
  if (maxval != 255)
    throw io_error(io_errc::malformed_header, path + ": unsupported maxval " + std::to_string(maxval));
  check_pixel_count(w, h, path);
  // Exactly one whitespace byte separates the header from the payload.
  Image8 img(static_cast<int>(w), static_cast<int>(h));
  in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
    throw io_error(io_errc::truncated_payload, path + ": truncated pixel data");
  return img;
}

void write_pfm(const ImageF& img, const std::string& path) {
  if (img.width < 1 || img.height < 1)
    throw std::invalid_argument("write_pfm: empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(io_errc::open_failure, path + ": cannot open for writing");
  out << "Pf\n" << img.width << " " << img.height << "\n-1.0\n";
  const float nan = canonical_nan();
  std::vector<float> row(static_cast<std::size_t>(img.width));
  for (int y = img.height - 1; y >= 0; --y) {  // bottom-up row order
    for (int x = 0; x < img.width; ++x) {
      const float v = img.at(x, y);
      row[static_cast<std::size_t>(x)] = is_invalid(v) ? nan : v;
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw io_error(io_errc::write_failure, path + ": write failed");
}

namespace {

// Shared reader for "Pf" (1 channel) and "PF" (3 channels).
std::vector<ImageF> read_pfm_any(const std::string& path, int expect_channels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(io_errc::open_failure, path + ": cannot open");
  const std::string magic = next_token(in);
  int channels;
  if (magic == "Pf")
    channels = 1;
  else if (magic == "PF")
    channels = 3;
  else
    throw io_error(io_errc::malformed_header, path + ": not a PFM file");
  if (channels != expect_channels)
    throw io_error(io_errc::malformed_header,
                   path + ": expected " + std::to_string(expect_channels) + "-channel PFM");
  const long w = parse_dim(next_token(in), path);
  const long h = parse_dim(next_token(in), path);
  const std::string scale_tok = next_token(in);
  char* end = nullptr;
  const double scale = std::strtod(scale_tok.c_str(), &end);
  if (end == scale_tok.c_str() || scale == 0.0)
    throw io_error(io_errc::malformed_header, path + ": bad scale '" + scale_tok + "'");
  check_pixel_count(w * channels, h, path);
  const bool little_endian = scale < 0.0;

  std::vector<ImageF> planes(static_cast<std::size_t>(channels),
                             ImageF(static_cast<int>(w), static_cast<int>(h)));
  std::vector<char> row(static_cast<std::size_t>(w) * channels * sizeof(float));
  for (long y = h - 1; y >= 0; --y) {
    in.read(row.data(), static_cast<std::streamsize>(row.size()));
    if (in.gcount() != static_cast<std::streamsize>(row.size()))
      throw io_error(io_errc::truncated_payload, path + ": truncated pixel data");
    if (!little_endian)
      for (std::size_t i = 0; i < row.size(); i += 4) swap4(&row[i]);
    const float* vals = reinterpret_cast<const float*>(row.data());
    for (long x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c)
        planes[static_cast<std::size_t>(c)].at(static_cast<int>(x), static_cast<int>(y)) =
            vals[x * channels + c];
  }
  return planes;
}

}  // namespace

ImageF read_pfm(const std::string& path) {
  return std::move(read_pfm_any(path, 1)[0]);
}

void write_pfm3(const ImageF& x, const ImageF& y, const ImageF& z, const std::string& path) {
  if (!x.same_size(y) || !x.same_size(z))
    throw std::invalid_argument("write_pfm3: plane dimensions differ");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(io_errc::open_failure, path + ": cannot open for writing");
  out << "PF\n" << x.width << " " << x.height << "\n-1.0\n";
  const float nan = canonical_nan();
  std::vector<float> row(static_cast<std::size_t>(x.width) * 3);
  for (int r = x.height - 1; r >= 0; --r) {
    for (int c = 0; c < x.width; ++c) {
      const float vx = x.at(c, r), vy = y.at(c, r), vz = z.at(c, r);
      row[3 * c + 0] = is_invalid(vx) ? nan : vx;
      row[3 * c + 1] = is_invalid(vy) ? nan : vy;
      row[3 * c + 2] = is_invalid(vz) ? nan : vz;
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw io_error(io_errc::write_failure, path + ": write failed");
}

std::array<ImageF, 3> read_pfm3(const std::string& path) {
  auto planes = read_pfm_any(path, 3);
  return {std::move(planes[0]), std::move(planes[1]), std::move(planes[2])};
}

void write_ply(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(io_errc::open_failure, path + ": cannot open for writing");
  const bool with_pixels = !cloud.points.empty() && cloud.points.front().has_pixel;
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << cloud.points.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (with_pixels) out << "property float xc\nproperty float yc\n";
  out << "end_header\n";
  char buf[160];
  for (const auto& p : cloud.points) {
    if (with_pixels)
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.9g %.9g\n", p.x, p.y, p.z,
                    static_cast<double>(p.xc), static_cast<double>(p.yc));
    else
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << buf;
  }
  if (!out) throw io_error(io_errc::write_failure, path + ": write failed");
}

PointCloud read_ply(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(io_errc::open_failure, path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || line != "ply")
    throw io_error(io_errc::malformed_header, path + ": not a PLY file");
  std::size_t n_vertices = 0;
  int n_props = 0;
  bool ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = (fmt == "ascii");
    } else if (kw == "element") {
      std::string name;
      ls >> name >> n_vertices;
      if (name != "vertex")
        throw io_error(io_errc::malformed_header, path + ": unsupported element " + name);
    } else if (kw == "property") {
      ++n_props;
    } else if (kw == "end_header") {
      break;
    }
  }
  if (!ascii) throw io_error(io_errc::malformed_header, path + ": only ascii PLY supported");
  if (n_props != 3 && n_props != 5)
    throw io_error(io_errc::malformed_header, path + ": unsupported property layout");
  PointCloud cloud;
  cloud.points.reserve(n_vertices);
  for (std::size_t i = 0; i < n_vertices; ++i) {
    PointCloud::Point p;
    if (!(in >> p.x >> p.y >> p.z))
      throw io_error(io_errc::truncated_payload, path + ": truncated vertex list");
    if (n_props == 5) {
      if (!(in >> p.xc >> p.yc))
        throw io_error(io_errc::truncated_payload, path + ": truncated vertex list");
      p.has_pixel = true;
    }
    cloud.points.push_back(p);
  }
  return cloud;
}

}  // namespace cps
