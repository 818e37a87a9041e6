// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "transcend/errors.hpp"
#include "transcend/io.hpp"

namespace transcend {

namespace {

std::string u64_hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llX",
                static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_u64(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 0);
  if (end == begin || end != begin + s.size())
    throw ValidationFailure("not an integer: '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 0);
  if (end == begin || end != begin + s.size())
    throw ValidationFailure("not an integer: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "0" || s == "false") return false;
  if (s == "1" || s == "true") return true;
  throw ValidationFailure("not a boolean: '" + s + "'");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

const char* nkind_name(SequenceRule::NKind k) {
  switch (k) {
    case SequenceRule::NKind::constant: return "constant";
    case SequenceRule::NKind::power: return "power";
    case SequenceRule::NKind::tower: return "tower";
    case SequenceRule::NKind::logpower: return "logpower";
  }
  return "?";
}

}  // namespace

std::string config_to_text(const RunConfig& c) {
  std::string out;
  out += "format=transcend-config/1\n";
  out += "roots=";
  for (std::size_t i = 0; i < c.roots.size(); ++i) {
    if (i) out += ",";
    out += hex_from_double(c.roots[i]);
  }
  out += "\n";
  out += "lambda=" + hex_from_double(c.lambda) + "\n";
  out += "head_n=" + std::to_string(c.head_n) + "\n";
  out += std::string("nrule=") + nkind_name(c.rule.nkind) + "\n";
  out += "nexp=" + hex_from_double(c.rule.ns) + "\n";
  out += "nconst=" + std::to_string(c.rule.nc) + "\n";
  out += std::string("lrule=") +
         (c.rule.lkind == SequenceRule::LKind::one ? "one" : "maxlog") + "\n";
  out += "depth=" + std::to_string(c.depth) + "\n";
  out += "seed=" + u64_hex(c.seed) + "\n";
  out += "samples=" + std::to_string(c.samples) + "\n";
  out += "points=" + std::to_string(c.points) + "\n";
  if (c.window_auto) {
    out += "window=auto\n";
  } else {
    out += "window=" + hex_from_double(c.window.cx) + "," +
           hex_from_double(c.window.cy) + "," + hex_from_double(c.window.w) +
           "," + hex_from_double(c.window.h) + "\n";
  }
  out += "res=" + std::to_string(c.res_nx) + "," + std::to_string(c.res_ny) + "\n";
  out += "budget=" + std::to_string(c.budget) + "\n";
  out += std::string("strict_no_skip=") + (c.strict_no_skip ? "1" : "0") + "\n";
  out += "out=" + c.out + "\n";
  return out;
}

void config_apply(RunConfig& c, const std::string& key,
                  const std::string& value) {
  if (key == "format") {
    if (value != "transcend-config/1")
      throw ValidationFailure("unrecognized config format tag '" + value + "'");
    return;
  }
  if (key == "roots") {
    std::vector<double> roots;
    for (const std::string& part : split_commas(value))
      roots.push_back(hex_to_double(part));
    c.roots = roots;
    return;
  }
  if (key == "lambda") {
    c.lambda = hex_to_double(value);
    return;
  }
  if (key == "head_n") {
    c.head_n = static_cast<int>(parse_long(value));
    return;
  }
  if (key == "nrule") {
    if (value == "constant") c.rule.nkind = SequenceRule::NKind::constant;
    else if (value == "power") c.rule.nkind = SequenceRule::NKind::power;
    else if (value == "tower") c.rule.nkind = SequenceRule::NKind::tower;
    else if (value == "logpower") c.rule.nkind = SequenceRule::NKind::logpower;
    else throw ValidationFailure("unknown n rule '" + value + "'");
    return;
  }
  if (key == "nexp") {
    c.rule.ns = hex_to_double(value);
    return;
  }
  if (key == "nconst") {
    c.rule.nc = parse_u64(value);
    return;
  }
  if (key == "lrule") {
    if (value == "one") c.rule.lkind = SequenceRule::LKind::one;
    else if (value == "maxlog") c.rule.lkind = SequenceRule::LKind::maxlog;
    else throw ValidationFailure("unknown l rule '" + value + "'");
    return;
  }
  if (key == "depth") {
    c.depth = static_cast<int>(parse_long(value));
    return;
  }
  if (key == "seed") {
    c.seed = parse_u64(value);
    return;
  }
  if (key == "samples") {
    c.samples = parse_long(value);
    return;
  }
  if (key == "points") {
    c.points = parse_long(value);
    return;
  }
  if (key == "window") {
    if (value == "auto") {
      c.window_auto = true;
      c.window = Window{};
      return;
    }
    const auto parts = split_commas(value);
    if (parts.size() != 4)
      throw ValidationFailure("window needs cx,cy,w,h, got '" + value + "'");
    c.window_auto = false;
    c.window.cx = hex_to_double(parts[0]);
    c.window.cy = hex_to_double(parts[1]);
    c.window.w = hex_to_double(parts[2]);
    c.window.h = hex_to_double(parts[3]);
    return;
  }
  if (key == "res") {
    const auto parts = split_commas(value);
    if (parts.size() == 1) {
      c.res_nx = c.res_ny = static_cast<int>(parse_long(parts[0]));
      return;
    }
    if (parts.size() != 2)
      throw ValidationFailure("res needs nx,ny, got '" + value + "'");
    c.res_nx = static_cast<int>(parse_long(parts[0]));
    c.res_ny = static_cast<int>(parse_long(parts[1]));
    return;
  }
  if (key == "budget") {
    c.budget = static_cast<int>(parse_long(value));
    return;
  }
  if (key == "strict_no_skip") {
    c.strict_no_skip = parse_bool(value);
    return;
  }
  if (key == "out") {
    c.out = value;
    return;
  }
  throw ValidationFailure("unknown config key '" + key + "'");
}

RunConfig config_from_text(const std::string& text) {
  RunConfig c;
  std::vector<std::string> violations;
  std::string line;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                    : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      violations.push_back("line " + std::to_string(lineno) +
                           ": missing '=' in '" + line + "'");
      continue;
    }
    try {
      config_apply(c, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ValidationFailure& e) {
      violations.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!violations.empty())
    throw ValidationFailure("invalid config", violations);
  return c;
}

Construction config_build(const RunConfig& c, Exec mode) {
  const PolySpec spec = make_poly_spec(c.roots);
  HeadParams head = make_head_params(spec, c.lambda, c.head_n);
  head.R = find_leading_radius(spec, head, c.samples, RatioBand{}, mode);
  BuildOptions opts;
  opts.samples = c.samples;
  return build(spec, head, c.rule, c.depth, opts, mode);
}

Window default_window(const Construction& c) {
  const double r1 = std::exp(c.level(1).logR);
  Window w;
  w.cx = 0.0;
  w.cy = 0.0;
  w.w = 8.0 * r1;
  w.h = 8.0 * r1;
  return w;
}

}  // namespace transcend
