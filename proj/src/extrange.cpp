// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/extrange.hpp"

#include <algorithm>

namespace transcend {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pad_up(double x) {
  return std::isfinite(x) ? std::nextafter(x, kInf) : x;
}
double pad_down(double x) {
  return std::isfinite(x) ? std::nextafter(x, -kInf) : x;
}

// log(e^a + e^b), stable for any ordering.
double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e^a - e^b) for a > b.
double log_sub_exp(double a, double b) {
  return a + std::log1p(-std::exp(b - a));
}

}  // namespace

double normalize_angle(double a) {
  if (a > -kPi && a <= kPi) return a;
  double r = std::remainder(a, kTau);
  if (r <= -kPi) r += kTau;
  return r;
}

LogComplex lc_polar_log(double log_mag, double arg) {
  if (!std::isfinite(log_mag)) {
    throw RangeExhausted("log-magnitude left the double range");
  }
  return LogComplex{false, log_mag, normalize_angle(arg)};
}

LogComplex lc_real(double x) {
  if (x == 0.0) return lc_zero();
  return lc_polar_log(std::log(std::abs(x)), x > 0.0 ? 0.0 : kPi);
}

LogComplex lc_from(std::complex<double> z) {
  if (z.real() == 0.0 && z.imag() == 0.0) return lc_zero();
  return lc_polar_log(std::log(std::abs(z)), std::arg(z));
}

std::complex<double> lc_to_complex(const LogComplex& z) {
  if (z.zero) return {0.0, 0.0};
  return std::polar(std::exp(z.log_mag), z.arg);
}

LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
  if (a.zero || b.zero) return lc_zero();
  return lc_polar_log(a.log_mag + b.log_mag, a.arg + b.arg);
}

LogComplex lc_inv(const LogComplex& a) {
  if (a.zero) throw RangeExhausted("inverse of zero");
  return lc_polar_log(-a.log_mag, -a.arg);
}

LogComplex lc_neg(const LogComplex& a) {
  if (a.zero) return a;
  return lc_polar_log(a.log_mag, a.arg + kPi);
}

LogComplex lc_scale(const LogComplex& a, double f) {
  return lc_mul(a, lc_real(f));
}

LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  const LogComplex* hi = &a;
  const LogComplex* lo = &b;
  if (b.log_mag > a.log_mag) std::swap(hi, lo);
  const double gap = hi->log_mag - lo->log_mag;
  if (gap > kDominanceGap) return *hi;
  const double delta = normalize_angle(lo->arg - hi->arg);
  if (gap == 0.0 && (delta == kPi || delta == -kPi)) return lc_zero();
  const double r = std::exp(-gap);
  const std::complex<double> w{1.0 + r * std::cos(delta), r * std::sin(delta)};
  const double aw = std::abs(w);
  if (aw == 0.0) return lc_zero();
  return lc_polar_log(hi->log_mag + std::log(aw), hi->arg + std::arg(w));
}

// ---------------------------------------------------------------------------
// ModInterval

ModInterval mi_point(const LogComplex& z) {
  if (z.zero) return ModInterval{-kInf, -kInf};
  return ModInterval{z.log_mag, z.log_mag};
}

ModInterval mi_make(double lo_log, double hi_log) {
  if (std::isnan(lo_log) || std::isnan(hi_log) || hi_log == kInf ||
      lo_log == kInf || lo_log > hi_log) {
    throw RangeExhausted("invalid modulus interval bounds");
  }
  return ModInterval{lo_log, hi_log};
}

ModInterval mi_mul(const ModInterval& a, const ModInterval& b) {
  return ModInterval{pad_down(a.lo_log + b.lo_log), pad_up(a.hi_log + b.hi_log)};
}

ModInterval mi_shift(const ModInterval& a, double dlog) {
  return ModInterval{pad_down(a.lo_log + dlog), pad_up(a.hi_log + dlog)};
}

ModInterval mi_abs_linear(double a, double b, const ModInterval& w) {
  const double la = a != 0.0 ? std::log(std::fabs(a)) : -kInf;
  const double lb = b != 0.0 ? std::log(std::fabs(b)) : -kInf;
  const double blo = lb == -kInf ? -kInf : lb + w.lo_log;
  const double bhi = lb == -kInf ? -kInf : lb + w.hi_log;
  const double hi = log_add_exp(la, bhi);
  double lo;
  if (blo > la) {
    lo = log_sub_exp(blo, la);  // b|w| dominates on the whole range
  } else if (bhi < la) {
    lo = la == -kInf ? -kInf : log_sub_exp(la, bhi);  // a dominates
  } else {
    lo = -kInf;  // |a + b w| can vanish: sign indeterminate
  }
  return ModInterval{pad_down(lo), pad_up(hi)};
}

bool mi_contains(const ModInterval& m, double log_value) {
  return log_value >= m.lo_log && log_value <= m.hi_log;
}

// ---------------------------------------------------------------------------
// BigCount

BigCount bc_exact(std::uint64_t v) {
  if (v > kExactCountCap) {
    return BigCount{BigCount::Mode::log_only, 0,
                    std::log(static_cast<double>(v))};
  }
  BigCount c;
  c.mode = BigCount::Mode::exact;
  c.value = v;
  c.log_value = v == 0 ? -kInf : std::log(static_cast<double>(v));
  return c;
}

BigCount bc_log(double log_value) {
  if (!std::isfinite(log_value)) {
    throw RangeExhausted("log-only count needs a finite log");
  }
  return BigCount{BigCount::Mode::log_only, 0, log_value};
}

BigCount bc_mul(const BigCount& a, const BigCount& b) {
  if ((bc_is_exact(a) && a.value == 0) || (bc_is_exact(b) && b.value == 0)) {
    return bc_exact(0);
  }
  if (bc_is_exact(a) && bc_is_exact(b)) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a.value) * b.value;
    if (p <= kExactCountCap) return bc_exact(static_cast<std::uint64_t>(p));
  }
  return bc_log(a.log_value + b.log_value);
}

BigCount bc_add(const BigCount& a, const BigCount& b) {
  if (bc_is_exact(a) && bc_is_exact(b)) {
    const std::uint64_t s = a.value + b.value;  // both <= 2^53: no wrap
    if (s <= kExactCountCap) return bc_exact(s);
  }
  return bc_log(log_add_exp(a.log_value, b.log_value));
}

double bc_double(const BigCount& c) {
  if (bc_is_exact(c)) return static_cast<double>(c.value);
  return std::exp(c.log_value);
}

std::uint64_t bc_value(const BigCount& c) {
  if (!bc_is_exact(c)) {
    throw ExactCountRequired("count is only known in log form");
  }
  return c.value;
}

bool bc_equal(const BigCount& a, const BigCount& b) {
  if (bc_is_exact(a) != bc_is_exact(b)) return false;
  if (bc_is_exact(a)) return a.value == b.value;
  return a.log_value == b.log_value;
}

// ---------------------------------------------------------------------------
// Powers

namespace {

// n * arg with a two-product split so the pre-reduction product carries an
// exact low-order correction. Remaining error is O(n) ulps of the reduced
// angle, which is the documented contract for exact powers.
double pow_arg(double arg, double nd) {
  const double hi = nd * arg;
  const double lo = std::fma(nd, arg, -hi);
  const double r = std::remainder(hi, kTau);
  return normalize_angle(r + lo);
}

}  // namespace

PowValue lc_pow(const LogComplex& z, const BigCount& n) {
  if (bc_is_exact(n)) {
    if (n.value == 0) return lc_one();
    if (z.zero) return lc_zero();
    const double nd = static_cast<double>(n.value);
    const double lm = nd * z.log_mag;
    if (!std::isfinite(lm)) {
      throw RangeExhausted("exact power left the double log range");
    }
    return lc_polar_log(lm, pow_arg(z.arg, nd));
  }
  if (z.zero) {
    throw ZeroToLogOnlyPower("0 raised to a log-only count");
  }
  double lm;
  if (z.log_mag == 0.0) {
    lm = 0.0;  // |z| == 1 exactly: any count keeps modulus 1
  } else {
    lm = std::exp(n.log_value) * z.log_mag;
    if (std::isnan(lm) || lm == kInf) {
      throw RangeExhausted("log-only power left the double log range");
    }
  }
  return ModInterval{lm, lm};  // modulus exact, argument lost
}

LogComplex lc_pow_exact(const LogComplex& z, std::uint64_t n) {
  return std::get<LogComplex>(lc_pow(z, bc_exact(n)));
}

ModInterval mi_pow(const ModInterval& z, const BigCount& n) {
  const double nd = bc_double(n);
  double lo = z.lo_log == -kInf ? -kInf : nd * z.lo_log;
  double hi = nd * z.hi_log;
  if (z.hi_log == 0.0) hi = 0.0;
  if (z.lo_log == 0.0) lo = 0.0;
  if (lo > hi) std::swap(lo, hi);  // nd * negative logs
  if (std::isnan(hi) || hi == kInf) {
    throw RangeExhausted("interval power left the double log range");
  }
  if (std::isnan(lo)) lo = -kInf;
  return ModInterval{pad_down(lo), pad_up(hi)};
}

}  // namespace transcend
