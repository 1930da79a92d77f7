#include "edgeforge/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string_view>

namespace edgeforge {

namespace {

void check_dimensions(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("image dimensions must be positive, got " + std::to_string(width) +
                                "x" + std::to_string(height));
  }
}

// Header tokenizer shared by P2 and P5. Skips whitespace and '#' comments.
class PgmReader {
 public:
  PgmReader(std::span<const std::uint8_t> bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(std::string_view what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    if (at_end()) throw PgmError("unexpected end of data while reading " + std::string(what), pos_);
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFul) throw PgmError(std::string(what) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) throw PgmError("non-numeric token in " + std::string(what), start);
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw PgmError("non-numeric token in " + std::string(what), start);
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  if (!std::isfinite(fill)) throw std::invalid_argument("image fill value must be finite");
  pixels_.assign(width * height, fill);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != width * height) {
    throw std::invalid_argument("pixel count " + std::to_string(pixels_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  if (!std::ranges::all_of(pixels_, [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("image contains non-finite intensities");
  }
}

double GrayImage::clamped(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept {
  const auto cx = std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(width_) - 1);
  const auto cy = std::clamp<std::ptrdiff_t>(y, 0, static_cast<std::ptrdiff_t>(height_) - 1);
  return pixels_[static_cast<std::size_t>(cy) * width_ + static_cast<std::size_t>(cx)];
}

double sample_pixel_clamped(const GrayImage& img, std::ptrdiff_t x, std::ptrdiff_t y) noexcept {
  return img.clamped(x, y);
}

GrayImage transpose(const GrayImage& img) {
  GrayImage out(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) out.at(y, x) = img.at(x, y);
  }
  return out;
}

PgmError::PgmError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw PgmError("bad magic number, expected P5 or P2", 0);
  }
  const bool binary = bytes[1] == '5';
  const std::size_t pos = 2;
  if (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
    throw PgmError("bad magic number, expected P5 or P2", 0);
  }

  PgmReader tok(bytes, pos);
  const auto width = tok.read_uint("width");
  const auto height = tok.read_uint("height");
  tok.skip_space_and_comments();
  const std::size_t maxval_offset = tok.pos();
  const auto maxval = tok.read_uint("maxval");
  if (width == 0 || height == 0) throw PgmError("image dimensions must be positive", tok.pos());
  if (maxval == 0 || maxval > 255) {
    throw PgmError("maxval " + std::to_string(maxval) + " outside 1..255", maxval_offset);
  }

  const std::size_t count = width * height;
  std::vector<double> pixels;
  pixels.reserve(count);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t data = tok.pos();
    if (data >= bytes.size()) throw PgmError("truncated payload: no raster data", data);
    ++data;
    if (bytes.size() - data < count) {
      throw PgmError("truncated payload: expected " + std::to_string(count) + " bytes, found " +
                         std::to_string(bytes.size() - data),
                     bytes.size());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = bytes[data + i];
      if (v > maxval) throw PgmError("pixel value exceeds maxval", data + i);
      pixels.push_back(static_cast<double>(v));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      tok.skip_space_and_comments();
      if (tok.at_end()) {
        throw PgmError("truncated payload: expected " + std::to_string(count) + " samples, found " +
                           std::to_string(i),
                       tok.pos());
      }
      const std::size_t at = tok.pos();
      const auto v = tok.read_uint("pixel value");
      if (v > maxval) throw PgmError("pixel value exceeds maxval", at);
      pixels.push_back(static_cast<double>(v));
    }
  }
  return GrayImage(width, height, std::move(pixels));
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + img.size());
  for (double v : img.pixels()) {
    if (!(v >= -0.5 && v < 255.5)) {
      throw std::domain_error("intensity " + std::to_string(v) + " outside [-0.5, 255.5)");
    }
    // std::round maps -0.5 to -1; that value still belongs to the 0 bucket.
    out.push_back(static_cast<std::uint8_t>(std::max(0.0, std::round(v))));
  }
  return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return load_pgm(bytes);
  } catch (const PgmError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img) {
  const auto bytes = save_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace edgeforge
