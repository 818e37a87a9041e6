// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "transcend/errors.hpp"

namespace transcend {

// ---------------------------------------------------------------------------
// Number formatting

std::string hex_from_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double hex_to_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || end != begin + s.size())
    throw ValidationFailure("not a serialized double: '" + s + "'");
  return v;
}

std::string dec_from_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("read failure on '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw Error("write failure on '" + path + "'");
}

namespace {

// Splits text into lines without trailing newlines; a trailing newline does
// not create an empty final line.
std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::string comment_block(const std::string& config_text) {
  std::string out;
  out += "# config-begin\n";
  for (const std::string& line : split_lines(config_text))
    out += "# " + line + "\n";
  out += "# config-end\n";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PPM / PBM

void write_ppm(const std::string& path, const ImageRGB& img,
               const std::string& config_text) {
  if (img.width < 1 || img.height < 1)
    throw ValidationFailure("ppm writer needs a nonempty image");
  std::string out;
  out += "P6\n";
  out += "# transcend-ppm/1\n";
  out += comment_block(config_text);
  out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pix.data()), img.pix.size());
  write_file(path, out);
}

void write_pbm(const std::string& path, const ImageMask& mask,
               const std::string& config_text) {
  if (mask.width < 1 || mask.height < 1)
    throw ValidationFailure("pbm writer needs a nonempty image");
  std::string out;
  out += "P4\n";
  out += "# transcend-pbm/1\n";
  out += comment_block(config_text);
  out += std::to_string(mask.width) + " " + std::to_string(mask.height) + "\n";
  const int stride = (mask.width + 7) / 8;
  std::vector<std::uint8_t> row(static_cast<std::size_t>(stride));
  for (int j = 0; j < mask.height; ++j) {
    std::fill(row.begin(), row.end(), 0);
    for (int i = 0; i < mask.width; ++i)
      if (mask.at(i, j)) row[static_cast<std::size_t>(i) / 8] |= std::uint8_t(0x80 >> (i % 8));
    out.append(reinterpret_cast<const char*>(row.data()), row.size());
  }
  write_file(path, out);
}

// ---------------------------------------------------------------------------
// PNG

namespace {

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t n,
                       std::uint32_t crc = 0xFFFFFFFFu) {
  static const auto table = [] {
    std::vector<std::uint32_t> t(256);
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k)
        c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  for (std::size_t i = 0; i < n; ++i)
    crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
  return crc;
}

void put_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

void put_chunk(std::string& out, const char type[5], const std::string& body) {
  put_be32(out, static_cast<std::uint32_t>(body.size()));
  std::string payload = std::string(type, 4) + body;
  out += payload;
  const std::uint32_t crc =
      crc32_of(reinterpret_cast<const std::uint8_t*>(payload.data()),
               payload.size()) ^ 0xFFFFFFFFu;
  put_be32(out, crc);
}

}  // namespace

void write_png(const std::string& path, const ImageRGB& img,
               const std::string& config_text) {
  if (img.width < 1 || img.height < 1)
    throw ValidationFailure("png writer needs a nonempty image");

  std::string out("\x89PNG\r\n\x1a\n", 8);

  std::string ihdr;
  put_be32(ihdr, static_cast<std::uint32_t>(img.width));
  put_be32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr += std::string("\x08\x02\x00\x00\x00", 5);  // 8-bit RGB
  put_chunk(out, "IHDR", ihdr);

  put_chunk(out, "tEXt", std::string("config") + '\0' + config_text);

  // Raw scanlines, filter byte 0 per row.
  std::string raw;
  raw.reserve((static_cast<std::size_t>(img.width) * 3 + 1) * img.height);
  for (int j = 0; j < img.height; ++j) {
    raw.push_back('\0');
    raw.append(reinterpret_cast<const char*>(
                   img.pix.data() + static_cast<std::size_t>(j) * img.width * 3),
               static_cast<std::size_t>(img.width) * 3);
  }

  // zlib stream with stored deflate blocks.
  std::string idat("\x78\x01", 2);
  std::size_t pos = 0;
  do {
    const std::size_t len = std::min<std::size_t>(65535, raw.size() - pos);
    const bool final = pos + len == raw.size();
    idat.push_back(final ? '\x01' : '\x00');
    idat.push_back(static_cast<char>(len & 0xFF));
    idat.push_back(static_cast<char>(len >> 8));
    idat.push_back(static_cast<char>(~len & 0xFF));
    idat.push_back(static_cast<char>((~len >> 8) & 0xFF));
    idat.append(raw, pos, len);
    pos += len;
  } while (pos < raw.size());
  std::uint32_t a = 1, b = 0;
  for (unsigned char ch : raw) {
    a = (a + ch) % 65521;
    b = (b + a) % 65521;
  }
  put_be32(idat, (b << 16) | a);
  put_chunk(out, "IDAT", idat);
  put_chunk(out, "IEND", "");
  write_file(path, out);
}

// ---------------------------------------------------------------------------
// CSV

void write_csv(const std::string& path, const std::string& format_tag,
               const std::string& config_text,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& notes) {
  std::string out;
  out += "# " + format_tag + "\n";
  for (const std::string& n : notes) out += "# " + n + "\n";
  out += comment_block(config_text);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ",";
    out += columns[c];
  }
  out += "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw ValidationFailure("csv row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += row[c];
    }
    out += "\n";
  }
  write_file(path, out);
}

}  // namespace transcend
