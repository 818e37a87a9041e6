// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Ladder construction for the product family
//
//   f(z) = F0(z) * prod_{k>=1} F_k(z),
//   F_k(z) = (1 - (z/R_k)^{n_k} / 2)^{l_k},
//
// with R_1 = 2R and R_{k+1} = max |f_k| on the circle |z| = 2 R_k, where f_k
// is the product truncated after F_k. Radii grow at least quadratically, so
// levels are stored in log scale and the construction stops at a log ceiling.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "transcend/extrange.hpp"
#include "transcend/par.hpp"
#include "transcend/seedpoly.hpp"

namespace transcend {

// ---------------------------------------------------------------------------
// Sequence rules

struct SequenceRule {
  enum class NKind { constant, power, tower, logpower };
  enum class LKind { one, maxlog };
  NKind nkind = NKind::constant;
  double ns = 0.0;        // exponent for power / logpower
  std::uint64_t nc = 8;   // value for constant
  LKind lkind = LKind::one;

  std::string describe() const;
};

// n_k for a level with radius log logR; counts below 8 are clamped to 8 and
// *clamped is set. Floors are exact while the count fits 2^53 and are dropped
// (relative error < 2^-53 in the log) above that.
BigCount rule_n(const SequenceRule& rule, double logR, int k, bool* clamped);
BigCount rule_l(const SequenceRule& rule, double logR);

// ---------------------------------------------------------------------------
// Levels

struct Level {
  int k = 0;
  double logR = 0.0;   // ln(R_k)
  BigCount n;          // n_k
  BigCount l;          // l_k
  BigCount m;          // m_k = m + sum_{j<=k} n_j l_j (degree through level k)
  // Normal-form constant C_k = lambda^{m*} (-1)^{S_{k-1}} (1/2)^{S_k}
  //   * R_k^{n_k l_k} * prod_{j<k} R_j^{-n_j l_j},  S_k = sum_{j<=k} l_j.
  // logC is NaN when the exponent arithmetic leaves the double range at the
  // deepest level of a fast rule; signC is 0 when the parity of S_{k-1} is
  // not exactly known.
  double logC = 0.0;
  int signC = 1;
};

struct Construction {
  PolySpec spec;
  HeadParams head;
  SequenceRule rule;
  int requested_depth = 0;
  std::vector<Level> levels;
  bool capped = false;       // stopped early at the log ceiling
  long build_samples = 0;
  double tail_sum = 0.0;     // sum_k l_k (2/3)^{n_k}
  std::vector<std::string> warnings;

  int K() const { return static_cast<int>(levels.size()); }
  const Level& level(int k) const { return levels.at(static_cast<std::size_t>(k) - 1); }
};

struct BuildOptions {
  long samples = 4096;               // circle samples floor, >= 4096
  double log_ceiling = kLogCeiling;  // stop before ln R exceeds this
};

// Builds `depth` levels (fewer if capped). head.R must be set.
Construction build(const PolySpec& spec, const HeadParams& head,
                   const SequenceRule& rule, int depth,
                   const BuildOptions& opts = BuildOptions{},
                   Exec mode = Exec::parallel);

// ---------------------------------------------------------------------------
// Circle extrema

struct CircleExtremum {
  double value_log = 0.0;  // extremal log-modulus (outer bound for intervals)
  double angle = 0.0;      // where it was attained
  long samples_used = 0;
};

using CircleEval = std::function<ModInterval(double log_radius, double theta)>;

// Scans max(samples, 8 * min(degree_hint, 1e7)) equispaced angles, then
// refines the eight best candidates by golden-section search to 1e-12 rad.
// Maxima compare interval upper bounds, minima lower bounds; ties go to the
// smaller angle, and block-ordered reduction makes the result independent of
// the thread count.
CircleExtremum circle_max(const CircleEval& eval, double log_radius,
                          double degree_hint, long samples, Exec mode);
CircleExtremum circle_min(const CircleEval& eval, double log_radius,
                          double degree_hint, long samples, Exec mode);

// ---------------------------------------------------------------------------
// Evaluation

// Product value with an optional exact argument. When has_arg is false only
// the modulus interval is meaningful. dev is an upper bound on the relative
// deviation accumulated from dominance shortcuts and the truncated tail.
struct ValueBound {
  bool has_arg = true;
  LogComplex lc;
  ModInterval mi{0.0, 0.0};
  double dev = 0.0;
  int k_used = 0;

  bool is_zero() const { return has_arg && lc.zero; }
  // Modulus bounds including the deviation allowance.
  ModInterval mod_bounds() const;
};

// Single factor F_k. Exactly 1 (with the discarded bound |w| l_k / 2 merged
// into dev by callers) when log|w| < -kDominanceGap; exactly 0 at the zeros.
struct FkValue {
  bool has_arg = true;
  LogComplex lc;
  ModInterval mi{0.0, 0.0};
  double skipped_dev = 0.0;
};
FkValue Fk_eval(const Level& lv, const LogComplex& z);

// F0 * prod_{j<=k} F_j with no tail accounting (dev holds shortcut bounds).
ValueBound f_truncated(const Construction& c, const LogComplex& z, int k);

// Full evaluation: picks the smallest admissible truncation level k with
// |z| <= 4 R_k (OutOfRange otherwise), deepens it until the tail bound
// 8 / R_k meets rel_tol (TolUnreachable if even level K cannot), and returns
// the product with dev = tail bound + shortcut bounds.
ValueBound f_eval(const Construction& c, const LogComplex& z, double rel_tol);

// l_k (2/3)^{n_k} + 1/R_k: the per-level deviation scale of the normal form.
double epsilon_k(const Level& lv);

// Multiplier applied when epsilon_k is used as a certified bound, matching
// the explicit constant in the tail estimate exp(4/R) <= 1 + 8/R.
inline constexpr double kEpsilonC = 8.0;

// Effective angular degree of f_k on the circle of the given log-radius:
// factors whose (z/R_j)^{n_j} is farther than e^{+-kDominanceGap} from 1 in
// modulus cannot move a sample and contribute no oscillation.
double effective_degree(const Construction& c, int k, double log_radius);

// ---------------------------------------------------------------------------
// Serialization (hex-float, byte-stable round trip)

std::string construction_to_json(const Construction& c,
                                 const std::string& config_text);
Construction construction_from_json(const std::string& json_text,
                                    std::string* config_text = nullptr);

}  // namespace transcend
