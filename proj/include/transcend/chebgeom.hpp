// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Geometry of the degree-two Chebyshev conjugate H_m(z) = z^m (2 - z^m).
// Each product factor satisfies F_k = (H_{n_k}(z / R'_k))^{l_k} up to a tiny
// relative deviation, so the petals and level curves of H_m control the local
// shape of the Fatou components.
#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "transcend/builder.hpp"
#include "transcend/checkresult.hpp"
#include "transcend/extrange.hpp"
#include "transcend/par.hpp"

namespace transcend {

// z^m (2 - z^m) in log-polar form; ModInterval when m is log-only.
PowValue H_eval(const BigCount& m, const LogComplex& z);

// Native-precision identity defects, normalized by the largest operand so the
// number reported is a relative error. Domain: 1 <= m <= 64, |z| <= 2.
//   |H_m(z) + T_2(z^m/sqrt2 - 1/sqrt2)| with T_2(x) = 2x^2 - 1
double chebyshev_consistency(int m, std::complex<double> z);
//   |(1 - H_m(z)) - (1 - z^m)^2|
double one_minus_H_identity(int m, std::complex<double> z);

struct PetalGeometry {
  int m = 0;
  double inner_bound = 0.0;  // 1 - 1/m
  double outer_bound = 0.0;  // 1 + 2/m
  double z2 = 0.0;           // -1/sqrt2, left root of T_2
  double r2 = 0.0;           // 1 - 2^{-1/2}
  double rt2 = 0.0;          // 1/sqrt2
  // All |H_m| = 1 crossings found by radial bisection, as (angle, radius),
  // ordered by angle then radius.
  std::vector<std::pair<double, double>> level_curve;
};

// Radial bisection of |H_m(r e^{i theta})| = 1 over [1 - 1/m, 1 + 2/m] on
// angular_samples rays (>= 8m required, m <= 1024). Every sign change on a
// ray is recorded; a ray with no crossing raises BracketFailure since the
// containment bounds guarantee opposite signs at the interval ends.
PetalGeometry level_curve(int m, long angular_samples,
                          Exec mode = Exec::parallel);

void level_curve_csv(const std::string& path, const PetalGeometry& g,
                     const std::string& config_text);

// Certifies max |H_m| < 1 on the circle r = 1 - 1/m and min |H_m| > 1 on
// r = 1 + 2/m by sampled scan with refinement.
std::pair<CheckResult, CheckResult> containment_check(
    int m, long samples, Exec mode = Exec::parallel);

// Radius of the zeros of F_k: (z/R_k)^{n_k} = 2 puts them at R_k 2^{1/n_k}.
// first_order_log drops the curvature of the exponential; the gap is the
// Taylor remainder, O(n^-2).
struct ZeroRadius {
  double exact_log = 0.0;        // logR_k + ln2 / n_k
  double first_order_log = 0.0;  // logR_k + log(1 + ln2 / n_k)
  double gap = 0.0;              // exact_log - first_order_log, >= 0
};
ZeroRadius zero_radius(const Level& lv);

}  // namespace transcend
