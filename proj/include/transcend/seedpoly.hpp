// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Seed polynomial p(z) = prod_i (z^2 - a_i^2), its scaled form
// p_lambda = lambda * p, and the head factor F0 = p_lambda composed with
// itself N times. F0 behaves like lambda^{m*} z^m at large |z|; the leading
// radius R is the smallest power of two from which that comparison holds
// within a factor band on three sampled circles.
#pragma once

#include <cstdint>
#include <vector>

#include "transcend/extrange.hpp"
#include "transcend/par.hpp"

namespace transcend {

struct PolySpec {
  std::vector<double> roots;  // a_1 < a_2 < ... , all > 0
  int k_prime = 0;            // number of root pairs
  int k0 = 0;                 // degree of p, = 2 * k_prime
};

// Validates: nonempty, strictly increasing, positive, k0 <= 64, and the
// numeric shape p(0) != 0, p'(0) == 0, p''(0) != 0.
PolySpec make_poly_spec(std::vector<double> roots);

struct HeadParams {
  double lambda = 0.0;        // > 2
  int N = 0;                  // >= 4 composition depth
  std::uint64_t m = 0;        // k0^N, exact
  std::uint64_t m_star = 0;   // (k0^N - 1) / (k0 - 1), exact
  double R = 0.0;             // leading radius, set by find_leading_radius
  double R_star = 0.0;        // escape radius, set by find_escape_radius
};

// Computes m and m_star exactly; throws ValidationFailure when lambda <= 2,
// N < 4, or k0^N would not be exactly representable.
HeadParams make_head_params(const PolySpec& spec, double lambda, int N);

// p_lambda(z) = lambda * prod (z^2 - a_i^2), evaluated in log-polar form.
// Exact zero at z = a_i when the root's square is cleanly representable.
LogComplex p_eval(const PolySpec& spec, double lambda, const LogComplex& z);

// N-fold composition of p_lambda.
LogComplex F0_eval(const PolySpec& spec, const HeadParams& head,
                   const LogComplex& z);

struct RatioBand {
  double lo = 0.5;
  double hi = 1.5;
};

struct RatioScan {
  bool ok = false;
  double min_ratio_log = 0.0;  // over all sampled points
  double max_ratio_log = 0.0;
};

// Samples |F0(z) / (lambda^{m*} z^m)| on the circle |z| = radius and tests it
// against the band. Exposed separately so the leading-term bound can be
// certified at any radius and sample count.
RatioScan leading_ratio_scan(const PolySpec& spec, const HeadParams& head,
                             double radius, long samples, RatioBand band,
                             Exec mode);

// Smallest R in {32, 64, ..., 2^60} with the ratio inside `band` on the
// circles R, 2R and 4R, sampled at `samples` points each (>= 1024).
// Throws NotFound when the doubling search exhausts 2^60.
double find_leading_radius(const PolySpec& spec, const HeadParams& head,
                           long samples, RatioBand band = RatioBand{},
                           Exec mode = Exec::parallel);

// Smallest power of two radius >= 2 with |p(z)| > |z|^{k0} / 2 on 1024
// sampled points at that radius and at the next two doublings.
double find_escape_radius(const PolySpec& spec, long samples = 1024,
                          Exec mode = Exec::parallel);

// Real critical points of p: always contains 0; the rest come in +/- pairs
// interlacing the roots. Returned sorted ascending. Residuals are polished to
// |p'(c)| <= 1e-8 relative to the evaluation scale.
std::vector<double> p_critical_points(const PolySpec& spec);

// p'(z) in native arithmetic, used by tests and the critical point polish.
double p_derivative(const PolySpec& spec, double z);

}  // namespace transcend
