// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Extended-range complex arithmetic in log-polar form.
//
// The product family studied here grows doubly exponentially with the level
// index: moduli like exp(1e6) are routine and exp(1e300) is the working
// ceiling. Native doubles overflow at exp(709.78), so nonzero values are
// carried as (log|z|, arg z). The magnitude range is then bounded only by the
// double range of log|z| itself.
//
// Three representations cooperate:
//   LogComplex  - exact-to-rounding value: log-magnitude plus argument.
//   ModInterval - log-magnitude interval for values whose argument has been
//                 lost (powers by counts only known in log form).
//   BigCount    - nonnegative integer count, exact below 2^53, log-only above.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <variant>

#include "transcend/errors.hpp"

namespace transcend {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTau = 2.0 * std::numbers::pi;

// Additions where the summands' log-magnitudes differ by more than this gap
// return the dominant term unchanged: the discarded term is below e^-40,
// which cannot move a double of order one. Callers that drop terms this way
// report the discarded bound explicitly.
inline constexpr double kDominanceGap = 40.0;

// Counts above 2^53 are not exactly representable in the double arithmetic
// that consumes them, so BigCount demotes them to log-only mode there, even
// though uint64 could hold them up to 2^64.
inline constexpr std::uint64_t kExactCountCap = 1ull << 53;

// Log-magnitudes are kept below this bound by the construction's depth cap.
inline constexpr double kLogCeiling = 1e300;

// ---------------------------------------------------------------------------
// LogComplex

struct LogComplex {
  bool zero = true;     // exact zero flag; log_mag/arg are meaningless if set
  double log_mag = 0.0; // ln|z|, finite
  double arg = 0.0;     // arg z in (-pi, pi]
};

// Maps any angle into (-pi, pi].
double normalize_angle(double a);

inline LogComplex lc_zero() { return LogComplex{}; }
inline bool lc_is_zero(const LogComplex& z) { return z.zero; }

LogComplex lc_polar_log(double log_mag, double arg);  // throws RangeExhausted
inline LogComplex lc_one() { return LogComplex{false, 0.0, 0.0}; }
LogComplex lc_real(double x);                    // x may be negative or zero
LogComplex lc_from(std::complex<double> z);      // finite input
std::complex<double> lc_to_complex(const LogComplex& z);  // may over/underflow

LogComplex lc_mul(const LogComplex& a, const LogComplex& b);
LogComplex lc_inv(const LogComplex& a);          // a nonzero
LogComplex lc_neg(const LogComplex& a);
LogComplex lc_scale(const LogComplex& a, double real_factor);

// Sum computed through the dominant term: exact when the log-magnitude gap
// exceeds kDominanceGap, and exactly zero on perfect cancellation (equal
// log-magnitudes, arguments pi apart).
LogComplex lc_add(const LogComplex& a, const LogComplex& b);
inline LogComplex lc_sub(const LogComplex& a, const LogComplex& b) {
  return lc_add(a, lc_neg(b));
}

// ---------------------------------------------------------------------------
// ModInterval

// Closed interval of log-modulus for a value whose argument is unknown.
// lo_log == -inf means "modulus may be arbitrarily small" (sign/phase
// indeterminate after an interval crossed zero); hi_log == -inf means the
// modulus underflowed to an exact zero in log scale. Bounds are outer bounds;
// each operation pads one ulp outward and no directed rounding is attempted
// beyond that.
struct ModInterval {
  double lo_log = 0.0;
  double hi_log = 0.0;
};

ModInterval mi_point(const LogComplex& z);  // z nonzero
inline ModInterval mi_point(double log_mag) {
  return ModInterval{log_mag, log_mag};
}
ModInterval mi_make(double lo_log, double hi_log);
ModInterval mi_mul(const ModInterval& a, const ModInterval& b);
ModInterval mi_shift(const ModInterval& a, double dlog);  // multiply by e^dlog

// Bounds |a + b*w| for real a, b and |w| in the interval. The phase of w is
// unknown, so only |a| and |b| enter:
// [ max(0, | |b||w| - |a| |), |a| + |b||w| ] taken over the |w| range.
// When the lower bound crosses zero the sign is indeterminate and lo_log is
// the -inf sentinel ("unknown small"); no error is thrown.
ModInterval mi_abs_linear(double a, double b, const ModInterval& w);

bool mi_contains(const ModInterval& m, double log_value);
inline double mi_width(const ModInterval& m) { return m.hi_log - m.lo_log; }

// ---------------------------------------------------------------------------
// BigCount

struct BigCount {
  enum class Mode : std::uint8_t { exact, log_only };
  Mode mode = Mode::exact;
  std::uint64_t value = 0;  // valid in exact mode only
  double log_value = -std::numeric_limits<double>::infinity();  // ln(count)
};

BigCount bc_exact(std::uint64_t v);   // demotes to log_only above 2^53
BigCount bc_log(double log_value);    // log-only count, log_value finite
inline bool bc_is_exact(const BigCount& c) {
  return c.mode == BigCount::Mode::exact;
}
BigCount bc_mul(const BigCount& a, const BigCount& b);
BigCount bc_add(const BigCount& a, const BigCount& b);
// Count as a double; +inf if the log-only value exceeds the double range.
double bc_double(const BigCount& c);
// Requires exact mode; throws ExactCountRequired otherwise.
std::uint64_t bc_value(const BigCount& c);
bool bc_equal(const BigCount& a, const BigCount& b);

// ---------------------------------------------------------------------------
// Powers

using PowValue = std::variant<LogComplex, ModInterval>;

// z^n. Exact counts keep the argument, with n*arg formed by a compensated
// (two-product) multiply before range reduction; the residual argument error
// is O(n) ulps and is documented rather than tracked. Log-only counts lose
// the argument and return the degenerate modulus interval. 0^0 = 1; 0 to a
// log-only power throws ZeroToLogOnlyPower.
PowValue lc_pow(const LogComplex& z, const BigCount& n);

// Convenience wrapper for counts known to be exact.
LogComplex lc_pow_exact(const LogComplex& z, std::uint64_t n);

// |z|^n bounds for interval input.
ModInterval mi_pow(const ModInterval& z, const BigCount& n);

}  // namespace transcend
