// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace transcend {

// Outcome of one verified inequality. All comparisons happen in log space;
// margin_log is oriented so that nonnegative means the inequality holds after
// every evaluation allowance has already been deducted.
struct CheckResult {
  enum class Verdict { pass, fail, skipped_log_only };

  std::string name;      // stable identifier, e.g. "ladder.quad k=2"
  std::string ref;       // catalog id of the underlying statement (README)
  double lhs_log = 0.0;
  double rhs_log = 0.0;
  double margin_log = 0.0;
  Verdict verdict = Verdict::fail;
  std::int64_t samples_used = 0;
  std::string note;      // reason for skips, context for partials

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }
};

inline const char* verdict_name(CheckResult::Verdict v) {
  switch (v) {
    case CheckResult::Verdict::pass: return "pass";
    case CheckResult::Verdict::fail: return "fail";
    case CheckResult::Verdict::skipped_log_only: return "skipped(log_only)";
  }
  return "fail";
}

// Builds a result from an oriented margin: pass iff margin >= 0.
inline CheckResult make_check(std::string name, std::string ref, double lhs_log,
                              double rhs_log, double margin_log,
                              std::int64_t samples_used = 0,
                              std::string note = "") {
  CheckResult r;
  r.name = std::move(name);
  r.ref = std::move(ref);
  r.lhs_log = lhs_log;
  r.rhs_log = rhs_log;
  r.margin_log = margin_log;
  r.verdict = margin_log >= 0.0 ? CheckResult::Verdict::pass
                                : CheckResult::Verdict::fail;
  r.samples_used = samples_used;
  r.note = std::move(note);
  return r;
}

inline CheckResult make_skip(std::string name, std::string ref,
                             std::string reason) {
  CheckResult r;
  r.name = std::move(name);
  r.ref = std::move(ref);
  r.verdict = CheckResult::Verdict::skipped_log_only;
  r.note = std::move(reason);
  return r;
}

}  // namespace transcend
