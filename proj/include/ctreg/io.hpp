#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctreg/phantom.hpp"
#include "ctreg/radon.hpp"

namespace ctreg::io {

inline constexpr char kImageMagic[] = "IMGF0001";
inline constexpr char kSinogramMagic[] = "SINF0001";

/// IMG1: magic, u32 side, f64 tau, side^2 f64 values (all little-endian).
void write_image(std::ostream& out, const Image2D& image);
Image2D read_image(std::istream& in);
void write_image(const std::filesystem::path& path, const Image2D& image);
Image2D read_image(const std::filesystem::path& path);

/// SIN1: magic, u32 p, u32 q, f64 rho, p (2q+1) f64 values.
void write_sinogram(std::ostream& out, const Sinogram& sinogram);
Sinogram read_sinogram(std::istream& in);
void write_sinogram(const std::filesystem::path& path, const Sinogram& sinogram);
Sinogram read_sinogram(const std::filesystem::path& path);

/// Writes a CSV table with a header row; values use %.17g.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace ctreg::io
