#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgeforge {

/// Column/row index into an image. Valid when x < width and y < height.
struct PixelCoord {
  std::size_t x = 0;
  std::size_t y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Dense row-major grid of intensities.
///
/// Intensities are stored as doubles in the nominal range [0, 255]; values are
/// only quantized back to 8 bits when written with save_pgm(). Every
/// constructor rejects empty dimensions and non-finite pixels.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, double fill = 0.0);
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  double& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  double at(PixelCoord p) const { return at(p.x, p.y); }

  /// Replicate-border access: out-of-range coordinates read the nearest edge pixel.
  double clamped(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept;

  std::span<const double> row(std::size_t y) const {
    return {pixels_.data() + y * width_, width_};
  }
  std::span<double> row(std::size_t y) { return {pixels_.data() + y * width_, width_}; }

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<double> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> pixels_;
};

double sample_pixel_clamped(const GrayImage& img, std::ptrdiff_t x, std::ptrdiff_t y) noexcept;

GrayImage transpose(const GrayImage& img);

/// Malformed PGM input. offset() is the byte position where decoding stopped.
class PgmError : public std::runtime_error {
 public:
  PgmError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Decodes binary (P5) or ASCII (P2) PGM with maxval <= 255. Pixel values are
/// copied verbatim; they are not rescaled by maxval.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);

/// Encodes as binary P5, maxval 255. Pixels are rounded half away from zero;
/// anything outside [-0.5, 255.5) throws std::domain_error.
std::vector<std::uint8_t> save_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);

}  // namespace edgeforge
