// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Artifact writers. Everything here is deterministic: fixed header layout,
// hex-float serialization for all reals, single-threaded output.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace transcend {

// Bit-exact double <-> string round trip via the C99 hex-float format.
// Infinities and NaN map to "inf"/"-inf"/"nan".
std::string hex_from_double(double x);
double hex_to_double(const std::string& s);

// Shortest decimal rendering for human-facing tables (round-trips too, but
// artifacts always carry the hex form).
std::string dec_from_double(double x);

struct ImageRGB {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pix;  // 3 bytes per pixel, row-major

  void resize(int w, int h) {
    width = w;
    height = h;
    pix.assign(static_cast<std::size_t>(w) * h * 3, 0);
  }
  std::uint8_t* at(int x, int y) {
    return pix.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
};

struct ImageMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bit;  // one byte per pixel, 0 or 1

  void resize(int w, int h) {
    width = w;
    height = h;
    bit.assign(static_cast<std::size_t>(w) * h, 0);
  }
  std::uint8_t& at(int x, int y) {
    return bit[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t at(int x, int y) const {
    return bit[static_cast<std::size_t>(y) * width + x];
  }
};

// Writers embed `config_text` line by line as header comments (PPM/PBM) or as
// a tEXt chunk (PNG). They throw Error on I/O failure.
void write_ppm(const std::string& path, const ImageRGB& img,
               const std::string& config_text);
void write_pbm(const std::string& path, const ImageMask& mask,
               const std::string& config_text);

// Minimal PNG encoder: 8-bit RGB, no filtering, stored (uncompressed) deflate
// blocks, fixed chunk layout, one tEXt chunk keyed "config". Byte-stable.
void write_png(const std::string& path, const ImageRGB& img,
               const std::string& config_text);

// CSV with "# " comment header lines (format tag, optional notes, embedded
// config), then a column header row, then data rows.
void write_csv(const std::string& path, const std::string& format_tag,
               const std::string& config_text,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& notes = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace transcend
