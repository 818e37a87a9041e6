// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/seedpoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace transcend {

namespace {

double p_native(const PolySpec& spec, double z) {
  double v = 1.0;
  for (double a : spec.roots) v *= (z * z - a * a);
  return v;
}

}  // namespace

PolySpec make_poly_spec(std::vector<double> roots) {
  std::vector<std::string> bad;
  if (roots.empty()) bad.push_back("at least one root pair is required");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!(roots[i] > 0.0) || !std::isfinite(roots[i])) {
      bad.push_back("roots must be positive and finite");
      break;
    }
  }
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (!(roots[i] > roots[i - 1])) {
      bad.push_back("roots must be strictly increasing");
      break;
    }
  }
  if (roots.size() > 32) bad.push_back("degree k0 = 2k' must be <= 64");
  if (!bad.empty()) throw ValidationFailure("invalid seed polynomial", bad);

  PolySpec spec;
  spec.roots = std::move(roots);
  spec.k_prime = static_cast<int>(spec.roots.size());
  spec.k0 = 2 * spec.k_prime;

  // Numeric shape checks: p(0) != 0 and p''(0) != 0; p'(0) == 0 holds
  // structurally (p is even) and is probed with a symmetric difference.
  double p0 = p_native(spec, 0.0);
  if (p0 == 0.0) {
    throw ValidationFailure("invalid seed polynomial", {"p(0) must not vanish"});
  }
  const double h = 1e-4 * spec.roots.front();
  const double dsym = (p_native(spec, h) - p_native(spec, -h)) / (2.0 * h);
  const double dd = (p_native(spec, h) - 2.0 * p0 + p_native(spec, -h)) / (h * h);
  if (std::abs(dsym) > 1e-6 * (std::abs(dd) * h + std::abs(p0))) {
    throw ValidationFailure("invalid seed polynomial", {"p'(0) must vanish"});
  }
  if (dd == 0.0) {
    throw ValidationFailure("invalid seed polynomial", {"p''(0) must not vanish"});
  }
  return spec;
}

HeadParams make_head_params(const PolySpec& spec, double lambda, int N) {
  std::vector<std::string> bad;
  if (!(lambda > 2.0)) bad.push_back("lambda must exceed 2");
  if (N < 4) bad.push_back("composition depth N must be at least 4");
  unsigned __int128 m = 1;
  bool overflow = false;
  for (int i = 0; i < N && !overflow; ++i) {
    m *= static_cast<unsigned>(spec.k0);
    if (m > kExactCountCap) overflow = true;
  }
  if (overflow) bad.push_back("k0^N exceeds the exact integer range");
  if (!bad.empty()) throw ValidationFailure("invalid head parameters", bad);

  HeadParams head;
  head.lambda = lambda;
  head.N = N;
  head.m = static_cast<std::uint64_t>(m);
  head.m_star = static_cast<std::uint64_t>((m - 1) / (spec.k0 - 1));
  return head;
}

LogComplex p_eval(const PolySpec& spec, double lambda, const LogComplex& z) {
  const LogComplex z2 = lc_mul(z, z);
  LogComplex acc = lc_real(lambda);
  for (double a : spec.roots) {
    acc = lc_mul(acc, lc_add(z2, lc_real(-(a * a))));
  }
  return acc;
}

LogComplex F0_eval(const PolySpec& spec, const HeadParams& head,
                   const LogComplex& z) {
  LogComplex w = z;
  for (int i = 0; i < head.N; ++i) w = p_eval(spec, head.lambda, w);
  return w;
}

RatioScan leading_ratio_scan(const PolySpec& spec, const HeadParams& head,
                             double radius, long samples, RatioBand band,
                             Exec mode) {
  const double log_r = std::log(radius);
  const double lead_log =
      static_cast<double>(head.m_star) * std::log(head.lambda) +
      static_cast<double>(head.m) * log_r;
  const std::int64_t nb = block_count(samples, kDefaultBlock);
  std::vector<double> blk_min(nb), blk_max(nb);
  for_blocks(samples, kDefaultBlock, mode, [&](std::int64_t b, std::int64_t lo,
                                               std::int64_t hi) {
    double mn = kLogCeiling, mx = -kLogCeiling;
    for (std::int64_t i = lo; i < hi; ++i) {
      const double theta = kTau * static_cast<double>(i) / samples;
      const LogComplex f0 = F0_eval(spec, head, lc_polar_log(log_r, theta));
      const double ratio = f0.zero ? -kLogCeiling : f0.log_mag - lead_log;
      mn = std::min(mn, ratio);
      mx = std::max(mx, ratio);
    }
    blk_min[b] = mn;
    blk_max[b] = mx;
  });
  RatioScan out;
  out.min_ratio_log = kLogCeiling;
  out.max_ratio_log = -kLogCeiling;
  for (std::int64_t b = 0; b < nb; ++b) {
    out.min_ratio_log = std::min(out.min_ratio_log, blk_min[b]);
    out.max_ratio_log = std::max(out.max_ratio_log, blk_max[b]);
  }
  out.ok = out.min_ratio_log >= std::log(band.lo) &&
           out.max_ratio_log <= std::log(band.hi);
  return out;
}

double find_leading_radius(const PolySpec& spec, const HeadParams& head,
                           long samples, RatioBand band, Exec mode) {
  if (samples < 1024) {
    throw ValidationFailure("leading radius search",
                            {"at least 1024 samples per circle are required"});
  }
  for (double R = 32.0; R <= 0x1p60; R *= 2.0) {
    bool ok = true;
    for (double mult : {1.0, 2.0, 4.0}) {
      if (!leading_ratio_scan(spec, head, mult * R, samples, band, mode).ok) {
        ok = false;
        break;
      }
    }
    if (ok) return R;
  }
  throw NotFound("no admissible leading radius up to 2^60");
}

double find_escape_radius(const PolySpec& spec, long samples, Exec mode) {
  for (double R = 2.0; R <= 0x1p60; R *= 2.0) {
    bool ok = true;
    for (double mult : {1.0, 2.0, 4.0}) {
      const double radius = mult * R;
      const double log_r = std::log(radius);
      const double floor_log =
          static_cast<double>(spec.k0) * log_r - std::log(2.0);
      const std::int64_t nb = block_count(samples, kDefaultBlock);
      std::vector<char> blk_ok(nb, 1);
      for_blocks(samples, kDefaultBlock, mode,
                 [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
                   for (std::int64_t i = lo; i < hi; ++i) {
                     const double theta = kTau * static_cast<double>(i) / samples;
                     const LogComplex pv =
                         p_eval(spec, 1.0, lc_polar_log(log_r, theta));
                     if (pv.zero || pv.log_mag <= floor_log) {
                       blk_ok[b] = 0;
                       break;
                     }
                   }
                 });
      for (std::int64_t b = 0; b < nb && ok; ++b) ok = blk_ok[b] != 0;
      if (!ok) break;
    }
    if (ok) return R;
  }
  throw NotFound("no escape radius up to 2^60");
}

double p_derivative(const PolySpec& spec, double z) {
  // p' = sum_i 2z * prod_{j != i} (z^2 - a_j^2)
  double total = 0.0;
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    double term = 2.0 * z;
    for (std::size_t j = 0; j < spec.roots.size(); ++j) {
      if (j == i) continue;
      term *= (z * z - spec.roots[j] * spec.roots[j]);
    }
    total += term;
  }
  return total;
}

std::vector<double> p_critical_points(const PolySpec& spec) {
  // p(z) = P(z^2) with P(u) = prod (u - a_i^2), so p'(z) = 2 z P'(u). The
  // critical points are 0 and +/- sqrt of the roots of P', which interlace
  // the a_i^2 and are found by bisection on each bracket.
  std::vector<double> u_roots;
  auto Pprime = [&](double u) {
    double total = 0.0;
    for (std::size_t i = 0; i < spec.roots.size(); ++i) {
      double term = 1.0;
      for (std::size_t j = 0; j < spec.roots.size(); ++j) {
        if (j == i) continue;
        term *= (u - spec.roots[j] * spec.roots[j]);
      }
      total += term;
    }
    return total;
  };
  for (std::size_t i = 0; i + 1 < spec.roots.size(); ++i) {
    double lo = spec.roots[i] * spec.roots[i];
    double hi = spec.roots[i + 1] * spec.roots[i + 1];
    double flo = Pprime(lo), fhi = Pprime(hi);
    if (flo == 0.0) {
      u_roots.push_back(lo);
      continue;
    }
    if (fhi == 0.0) {
      u_roots.push_back(hi);
      continue;
    }
    if ((flo > 0.0) == (fhi > 0.0)) {
      throw ConvergenceFailure("interlacing bracket lost a sign change");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double fm = Pprime(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    u_roots.push_back(0.5 * (lo + hi));
  }

  std::vector<double> crit;
  for (double u : u_roots) {
    const double c = std::sqrt(u);
    crit.push_back(-c);
    crit.push_back(c);
  }
  crit.push_back(0.0);
  std::sort(crit.begin(), crit.end());

  // Residual gate relative to the evaluation scale of p' at each point.
  for (double c : crit) {
    double scale = 1e-300;
    for (std::size_t i = 0; i < spec.roots.size(); ++i) {
      double term = std::abs(2.0 * c);
      for (std::size_t j = 0; j < spec.roots.size(); ++j) {
        if (j == i) continue;
        term *= std::abs(c * c - spec.roots[j] * spec.roots[j]);
      }
      scale += term;
    }
    scale = std::max(scale, 1.0);
    if (std::abs(p_derivative(spec, c)) > 1e-8 * scale) {
      throw ConvergenceFailure("critical point residual above 1e-8");
    }
  }
  return crit;
}

}  // namespace transcend
