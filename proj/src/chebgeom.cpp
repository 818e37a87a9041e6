// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/chebgeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "transcend/errors.hpp"
#include "transcend/io.hpp"

namespace transcend {
namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::complex<double> cpow_int(std::complex<double> z, int m) {
  std::complex<double> acc(1.0, 0.0);
  while (m > 0) {
    if (m & 1) acc *= z;
    z *= z;
    m >>= 1;
  }
  return acc;
}

void require_native(int m, std::complex<double> z) {
  if (m < 1 || m > 64)
    throw ValidationFailure("identity defects are defined for 1 <= m <= 64");
  if (std::abs(z) > 2.0 + 1e-12)
    throw OutOfRange("identity defects are defined on |z| <= 2");
}

}  // namespace

PowValue H_eval(const BigCount& m, const LogComplex& z) {
  if (lc_is_zero(z)) return lc_zero();  // H_m(0) = 0
  const PowValue wv = lc_pow(z, m);
  if (std::holds_alternative<LogComplex>(wv)) {
    const LogComplex w = std::get<LogComplex>(wv);
    if (w.zero) return lc_zero();
    return lc_mul(w, lc_sub(lc_real(2.0), w));
  }
  const ModInterval w = std::get<ModInterval>(wv);
  return mi_mul(w, mi_abs_linear(2.0, -1.0, w));
}

double chebyshev_consistency(int m, std::complex<double> z) {
  require_native(m, z);
  const std::complex<double> zm = cpow_int(z, m);
  const std::complex<double> h = zm * (2.0 - zm);
  const double rt = std::sqrt(0.5);
  const std::complex<double> x = zm * rt - rt;
  const std::complex<double> t2 = 2.0 * x * x - 1.0;
  const double scale = std::max({1.0, std::abs(h), std::abs(t2)});
  return std::abs(h + t2) / scale;
}

double one_minus_H_identity(int m, std::complex<double> z) {
  require_native(m, z);
  const std::complex<double> zm = cpow_int(z, m);
  const std::complex<double> lhs = 1.0 - zm * (2.0 - zm);
  const std::complex<double> q = 1.0 - zm;
  const std::complex<double> rhs = q * q;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / scale;
}

namespace {

// log |H_m(r e^{i theta})|; -inf at the zeros.
double h_log_mag(int m, double log_r, double theta) {
  const PowValue v = H_eval(bc_exact(static_cast<std::uint64_t>(m)),
                            lc_polar_log(log_r, theta));
  const LogComplex h = std::get<LogComplex>(v);  // exact m, never interval
  return h.zero ? -kInf : h.log_mag;
}

}  // namespace

PetalGeometry level_curve(int m, long angular_samples, Exec mode) {
  if (m < 2 || m > 1024)
    throw ValidationFailure("level_curve supports 2 <= m <= 1024");
  if (angular_samples < 8L * m)
    throw ValidationFailure("level_curve needs at least 8m angular samples");

  PetalGeometry g;
  g.m = m;
  g.inner_bound = 1.0 - 1.0 / m;
  g.outer_bound = 1.0 + 2.0 / m;
  g.z2 = -std::sqrt(0.5);
  g.r2 = 1.0 - std::sqrt(0.5);
  g.rt2 = std::sqrt(0.5);

  constexpr int kSubdiv = 64;
  const double dtheta = kTau / static_cast<double>(angular_samples);
  // Sign function of |H_m| - 1 along a ray, expressed through log |H_m|.
  const auto sgn = [m](double r, double theta) {
    return h_log_mag(m, std::log(r), theta);
  };

  const std::int64_t nb = block_count(angular_samples, kDefaultBlock);
  std::vector<std::vector<std::pair<double, double>>> parts(
      static_cast<std::size_t>(nb));
  for_blocks(
      angular_samples, kDefaultBlock, mode,
      [&](std::int64_t bi, std::int64_t blo, std::int64_t bhi) {
        auto& out = parts[static_cast<std::size_t>(bi)];
        for (std::int64_t i = blo; i < bhi; ++i) {
          const double theta = dtheta * static_cast<double>(i);
          bool found = false;
          double prev_r = g.inner_bound;
          double prev_s = sgn(prev_r, theta);
          if (prev_s == 0.0) {
            out.emplace_back(theta, prev_r);
            found = true;
          }
          for (int j = 1; j <= kSubdiv; ++j) {
            const double r = g.inner_bound +
                             (g.outer_bound - g.inner_bound) *
                                 static_cast<double>(j) / kSubdiv;
            const double s = sgn(r, theta);
            if (s == 0.0) {
              out.emplace_back(theta, r);
              found = true;
            } else if (prev_s != 0.0 && (prev_s < 0.0) != (s < 0.0)) {
              double a = prev_r, b = r, fa = prev_s;
              while (b - a > 1e-12) {
                const double c = 0.5 * (a + b);
                const double fc = sgn(c, theta);
                if (fc == 0.0) {
                  a = b = c;
                } else if ((fa < 0.0) == (fc < 0.0)) {
                  a = c;
                  fa = fc;
                } else {
                  b = c;
                }
              }
              out.emplace_back(theta, 0.5 * (a + b));
              found = true;
            }
            prev_r = r;
            prev_s = s;
          }
          if (!found) {
            char msg[96];
            std::snprintf(msg, sizeof msg,
                          "no |H_%d| = 1 crossing on the ray theta = %.12g",
                          m, theta);
            throw BracketFailure(msg);
          }
        }
      });
  for (auto& p : parts)
    g.level_curve.insert(g.level_curve.end(), p.begin(), p.end());
  return g;
}

void level_curve_csv(const std::string& path, const PetalGeometry& g,
                     const std::string& config_text) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(g.level_curve.size());
  for (const auto& [ang, rad] : g.level_curve)
    rows.push_back({dec_from_double(ang), dec_from_double(rad),
                    hex_from_double(ang), hex_from_double(rad)});
  write_csv(path, "transcend-levelcurve/1", config_text,
            {"angle", "radius", "angle_hex", "radius_hex"}, rows);
}

std::pair<CheckResult, CheckResult> containment_check(int m, long samples,
                                                      Exec mode) {
  if (m < 2) throw ValidationFailure("containment_check needs m >= 2");
  const BigCount bm = bc_exact(static_cast<std::uint64_t>(m));
  const CircleEval ev = [&bm](double lr, double th) {
    const PowValue v = H_eval(bm, lc_polar_log(lr, th));
    const LogComplex h = std::get<LogComplex>(v);
    return h.zero ? ModInterval{-kInf, -kInf} : mi_point(h.log_mag);
  };
  const double deg = 2.0 * static_cast<double>(m);

  const double inner_log = std::log1p(-1.0 / m);
  const CircleExtremum mx = circle_max(ev, inner_log, deg, samples, mode);
  CheckResult inner = make_check("cheb.containment.inner m=" +
                                     std::to_string(m),
                                 "CHEB-3", mx.value_log, 0.0, -mx.value_log,
                                 mx.samples_used);

  const double outer_log = std::log1p(2.0 / m);
  const CircleExtremum mn = circle_min(ev, outer_log, deg, samples, mode);
  CheckResult outer = make_check("cheb.containment.outer m=" +
                                     std::to_string(m),
                                 "CHEB-4", mn.value_log, 0.0, mn.value_log,
                                 mn.samples_used);
  return {inner, outer};
}

ZeroRadius zero_radius(const Level& lv) {
  const double n = bc_double(lv.n);
  ZeroRadius z;
  z.exact_log = lv.logR + kLn2 / n;
  z.first_order_log = lv.logR + std::log1p(kLn2 / n);
  z.gap = z.exact_log - z.first_order_log;
  return z;
}

}  // namespace transcend
