#include "ctreg/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ctreg/error.hpp"

namespace ctreg::io {

namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian hosts are not supported");

template <class T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return value;
}

template <class T>
void put(std::ostream& out, T value) {
  const T le = to_little(value);
  out.write(reinterpret_cast<const char*>(&le), sizeof(T));
}

/// Reads fixed-size records and reports the byte offset of any shortfall.
class Reader {
 public:
  Reader(std::istream& in, const char* format) : in_(in), format_(format) {}

  void bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (got != n) {
      throw FormatError(std::string(format_) + ": truncated " + what + " at byte offset " +
                        std::to_string(offset_ + got) + " (needed " +
                        std::to_string(offset_ + n) + ")");
    }
    offset_ += n;
  }

  template <class T>
  T get(const char* what) {
    T value;
    bytes(reinterpret_cast<char*>(&value), sizeof(T), what);
    return to_little(value);
  }

  void magic(const char* expected) {
    char buf[8];
    bytes(buf, 8, "magic");
    if (std::memcmp(buf, expected, 8) != 0) {
      throw FormatError(std::string(format_) + ": bad magic at byte offset 0");
    }
  }

  void values(std::vector<double>& dst) {
    for (auto& v : dst) {
      v = get<double>("values");
      if (!std::isfinite(v)) {
        throw FormatError(std::string(format_) + ": non-finite value at byte offset " +
                          std::to_string(offset_ - sizeof(double)));
      }
    }
  }

  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) {
      throw FormatError(std::string(format_) + ": trailing data at byte offset " +
                        std::to_string(offset_));
    }
  }

  std::size_t offset() const { return offset_; }

 private:
  std::istream& in_;
  const char* format_;
  std::size_t offset_ = 0;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

void write_image(std::ostream& out, const Image2D& image) {
  out.write(kImageMagic, 8);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(image.side()));
  put<double>(out, image.half_width);
  for (double v : image.values) put<double>(out, v);
}

Image2D read_image(std::istream& in) {
  Reader r(in, "IMG1");
  r.magic(kImageMagic);
  const auto side = r.get<std::uint32_t>("side count");
  const auto tau = r.get<double>("tau");
  if (side < 3 || side % 2 == 0) {
    throw FormatError("IMG1: side count must be odd and >= 3 at byte offset 8");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw FormatError("IMG1: tau must be finite and > 0 at byte offset 12");
  }
  Image2D image(static_cast<int>((side - 1) / 2), tau);
  r.values(image.values);
  r.expect_end();
  return image;
}

void write_sinogram(std::ostream& out, const Sinogram& sinogram) {
  if (sinogram.full_turn) throw ValidationError("SIN1 stores half-turn sinograms only");
  out.write(kSinogramMagic, 8);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(sinogram.angles));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(sinogram.half_offsets));
  put<double>(out, sinogram.radius);
  for (double v : sinogram.values) put<double>(out, v);
}

Sinogram read_sinogram(std::istream& in) {
  Reader r(in, "SIN1");
  r.magic(kSinogramMagic);
  const auto p = r.get<std::uint32_t>("p");
  const auto q = r.get<std::uint32_t>("q");
  const auto rho = r.get<double>("rho");
  if (p < 2 || p > (1u << 20)) throw FormatError("SIN1: angle count p out of range at byte offset 8");
  if (q < 1 || q > (1u << 20)) throw FormatError("SIN1: offset count q out of range at byte offset 12");
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw FormatError("SIN1: rho must be finite and > 0 at byte offset 16");
  }
  Sinogram sinogram(static_cast<int>(p), static_cast<int>(q), rho);
  r.values(sinogram.values);
  r.expect_end();
  return sinogram;
}

void write_image(const std::filesystem::path& path, const Image2D& image) {
  auto out = open_out(path);
  write_image(out, image);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Image2D read_image(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_image(in);
}

void write_sinogram(const std::filesystem::path& path, const Sinogram& sinogram) {
  auto out = open_out(path);
  write_sinogram(out, sinogram);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Sinogram read_sinogram(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_sinogram(in);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace ctreg::io
