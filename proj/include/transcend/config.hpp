// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: one flat key=value text form shared by config files,
// CLI overrides and artifact headers. Reals are serialized as hex floats so
// a config embedded in an artifact reproduces the artifact bit for bit.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "transcend/builder.hpp"
#include "transcend/dynamics.hpp"
#include "transcend/rng.hpp"

namespace transcend {

struct RunConfig {
  std::vector<double> roots{1.0};
  double lambda = 10.0;
  int head_n = 4;  // composition depth N of the seed polynomial
  SequenceRule rule;
  int depth = 5;
  std::uint64_t seed = kDefaultSeed;
  long samples = 4096;
  long points = 1000;
  bool window_auto = true;  // follow the A_1 annulus of the built ledger
  Window window;
  int res_nx = 512;
  int res_ny = 512;
  int budget = 64;
  bool strict_no_skip = false;
  std::string out;
};

// Canonical text form: fixed key order, hex floats, one key per line,
// leading "format=" tag. Round trips byte-exactly through config_from_text.
std::string config_to_text(const RunConfig& c);

// Parses the flat key=value form. Blank lines and '#' comments are ignored,
// later keys win. Unknown keys or malformed values throw ValidationFailure
// with one violation per offending line.
RunConfig config_from_text(const std::string& text);

// Applies one key=value override (the CLI flag path). Throws
// ValidationFailure on unknown keys or malformed values.
void config_apply(RunConfig& c, const std::string& key,
                  const std::string& value);

// Full construction pipeline for a config: seed polynomial, head parameters,
// leading radius search, ladder build.
Construction config_build(const RunConfig& c, Exec mode = Exec::parallel);

// The A_1 square [-4 R_1, 4 R_1]^2 used when window_auto is set.
Window default_window(const Construction& c);

}  // namespace transcend
