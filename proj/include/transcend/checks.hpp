// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// The verification suite. Every result is a CheckResult with an oriented log
// margin; a check passes only if it still holds after the evaluation
// allowance (sampling tail + 1e-9 relative slack per sampled quantity) has
// been deducted. Catalog ids in `ref` are documented in the README.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "transcend/builder.hpp"
#include "transcend/checkresult.hpp"
#include "transcend/par.hpp"
#include "transcend/rng.hpp"

namespace transcend {

// Closed/open annulus bands of one level, all in log scale.
struct AnnulusSystem {
  // A_k = [R_k/4, 4 R_k], B_k = (4 R_k, R_{k+1}/4), V_k = [1.5 R_k, 2.5 R_k],
  // U_k = [1.25 R_k, 3 R_k], D_1 = {|z| < R_1/4}.
  double a_lo = 0.0, a_hi = 0.0;
  double b_lo = 0.0, b_hi = 0.0;  // b_hi needs level k+1; NaN when absent
  double v_lo = 0.0, v_hi = 0.0;
  double u_lo = 0.0, u_hi = 0.0;
};
AnnulusSystem annulus_system(const Construction& c, int k);

// Ladder arithmetic: quadratic growth, the iterated and closed-form lower
// bounds, the closed-form upper bound (k = 1..K-1), and the two degree-vs-
// radius corollaries (k = 2..K, where they apply).
std::vector<CheckResult> check_ladder(const Construction& c);

// Circle-image band checks for k = 1..K-1: the V_k boundary circles and the
// A_k boundary circles against their target B bands, plus the straddle
// witness for the covering argument. Levels whose upper target needs a
// missing ledger entry are reported as partial (lower band only).
std::vector<CheckResult> check_annulus_maps(const Construction& c,
                                            long samples,
                                            Exec mode = Exec::parallel);

// Random points in B_k must map into B_{k+1}; boundary radii are included as
// deterministic extra points and compared against the closed band.
std::vector<CheckResult> check_B_invariance(const Construction& c,
                                            long samples,
                                            std::uint64_t seed = kDefaultSeed,
                                            Exec mode = Exec::parallel);

// Samples A_k minus (V_k and the petal annulus) and verifies the image lands
// in the region-specific escape band: below the petal annulus and between it
// and V_k the image must lie in B_k; above V_k it must lie in B_{k+1}.
std::vector<CheckResult> check_julia_localization(
    const Construction& c, long samples, std::uint64_t seed = kDefaultSeed,
    Exec mode = Exec::parallel);

// min |f| on |z| = 2 R_k >= 2^{n_k}, for levels k >= 2 with l_k = 1.
std::vector<CheckResult> check_min_modulus(const Construction& c,
                                           Exec mode = Exec::parallel);

// Locates the non-degenerate critical points of f_k in A_k (Newton on the
// logarithmic derivative from structural seeds) and verifies
// |H_{n_k}(z/R'_k)| >= 3/4 at each. The zeros of H itself (the multiple
// zeros of f_k when l_k > 1) are excluded by construction.
CheckResult check_critical_H_bound(const Construction& c, int k);

// Growth surrogates, pure ledger arithmetic.
struct GrowthRow {
  int k = 0;
  double logR = 0.0;
  double log_n = 0.0;        // ln n_k
  double rho_hat = 0.0;      // ln(logR_{k+1}) / ln(2 R_k); NaN on last level
  double rho_lower = 0.0;    // ln(n_k ln 2) / ln(2 R_k)
  double liminf_ratio = 0.0; // ln(logR_{k+1}) / ln(ln(2 R_k)); NaN on last
};
std::vector<GrowthRow> growth_order(const Construction& c);
std::vector<double> liminf_criterion(const Construction& c);

// Identity/geometry checks wrapped as CheckResults (defect <= tolerance over
// random samples; containment scans; zero-radius Taylor gap per level).
std::vector<CheckResult> check_cheb_identities(std::uint64_t seed,
                                               long samples);
std::vector<CheckResult> check_zero_radius(const Construction& c);

// Leading-term band on circles R, 2R, 4R (construction hypothesis) and the
// two-depth tail certification on random points in |z| <= 4 R_1.
CheckResult check_leading_band(const Construction& c, long samples,
                               Exec mode = Exec::parallel);
CheckResult check_tail_two_depth(const Construction& c, long points,
                                 std::uint64_t seed = kDefaultSeed);

struct SuiteOptions {
  long samples = 4096;       // circle scan floor
  long points = 1000;        // random-point checks
  std::uint64_t seed = kDefaultSeed;
  bool strict_no_skip = false;
};

struct CheckReport {
  std::vector<CheckResult> results;
  std::uint64_t seed = 0;
  long samples = 0;
  long points = 0;
  int depth = 0;
  std::string rule;
  bool strict_no_skip = false;

  int n_pass() const;
  int n_fail() const;  // counts skips as failures under strict_no_skip
  int n_skip() const;
};

CheckReport run_full_suite(const Construction& c, const SuiteOptions& opts,
                           Exec mode = Exec::parallel);

std::string report_to_json(const CheckReport& r,
                           const std::string& config_text);
std::string report_table(const CheckReport& r);

}  // namespace transcend
