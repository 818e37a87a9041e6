// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>
#include <variant>

#include "doctest.h"
#include "transcend/errors.hpp"
#include "transcend/extrange.hpp"
#include "transcend/rng.hpp"

using namespace transcend;

namespace {

LogComplex lc(double log_mag, double arg) { return lc_polar_log(log_mag, arg); }

}  // namespace

TEST_CASE("lc_mul identities") {
  const LogComplex a = lc(0.0, 0.0);
  const LogComplex b = lc(std::log(2.0), kPi / 2);
  const LogComplex ab = lc_mul(a, b);
  CHECK(ab.log_mag == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(ab.arg == doctest::Approx(kPi / 2).epsilon(1e-15));

  // (-1) * (-1) = 1 with the argument renormalized.
  const LogComplex m1 = lc(0.0, kPi);
  const LogComplex one = lc_mul(m1, m1);
  CHECK(one.log_mag == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::fabs(one.arg) < 1e-12);

  CHECK(lc_is_zero(lc_mul(lc_zero(), b)));
}

TEST_CASE("lc_mul agrees with native complex products") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    const double la = rng.uniform(1, i, -100.0, 100.0);
    const double aa = rng.uniform(2, i, -kPi, kPi);
    const double lb = rng.uniform(3, i, -100.0, 100.0);
    const double ab = rng.uniform(4, i, -kPi, kPi);
    const LogComplex r = lc_mul(lc(la, aa), lc(lb, ab));
    const std::complex<double> n =
        std::polar(std::exp(la), aa) * std::polar(std::exp(lb), ab);
    CHECK(r.log_mag ==
          doctest::Approx(std::log(std::abs(n))).epsilon(1e-12));
    const double darg = normalize_angle(r.arg - std::arg(n));
    CHECK(std::fabs(darg) < 1e-12);
  }
}

TEST_CASE("lc_add basics") {
  const LogComplex one = lc_one();
  const LogComplex two = lc_add(one, one);
  CHECK(two.log_mag == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::fabs(two.arg) < 1e-15);

  const LogComplex a = lc(3.5, 1.25);
  const LogComplex sum = lc_add(a, lc_zero());
  CHECK(sum.log_mag == a.log_mag);
  CHECK(sum.arg == a.arg);
}

TEST_CASE("lc_add dominance: e^100 + 1") {
  const LogComplex r = lc_add(lc(100.0, 0.0), lc(0.0, 0.0));
  CHECK(r.log_mag >= 100.0);
  CHECK(r.log_mag - 100.0 <= 1e-40);
}

TEST_CASE("lc_add dominance gap returns the larger operand unchanged") {
  const LogComplex big = lc(10.0, 0.7);
  const LogComplex small = lc(10.0 - kDominanceGap - 1.0, -2.0);
  const LogComplex r = lc_add(big, small);
  CHECK(r.log_mag == big.log_mag);
  CHECK(r.arg == big.arg);
}

TEST_CASE("lc_add exact cancellation yields zero") {
  const LogComplex a = lc(2.0, 0.5);
  CHECK(lc_is_zero(lc_add(a, lc_neg(a))));
}

TEST_CASE("lc_add commutes") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 2000; ++i) {
    const LogComplex a =
        lc(rng.uniform(10, i, -30.0, 30.0), rng.uniform(11, i, -kPi, kPi));
    const LogComplex b =
        lc(rng.uniform(12, i, -30.0, 30.0), rng.uniform(13, i, -kPi, kPi));
    const LogComplex ab = lc_add(a, b);
    const LogComplex ba = lc_add(b, a);
    if (lc_is_zero(ab)) {
      CHECK(lc_is_zero(ba));
      continue;
    }
    CHECK(ab.log_mag == doctest::Approx(ba.log_mag).epsilon(1e-12));
    CHECK(std::fabs(normalize_angle(ab.arg - ba.arg)) < 1e-12);
  }
}

TEST_CASE("lc_mul associativity in logs") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    const LogComplex a =
        lc(rng.uniform(20, i, -200.0, 200.0), rng.uniform(21, i, -kPi, kPi));
    const LogComplex b =
        lc(rng.uniform(22, i, -200.0, 200.0), rng.uniform(23, i, -kPi, kPi));
    const LogComplex c =
        lc(rng.uniform(24, i, -200.0, 200.0), rng.uniform(25, i, -kPi, kPi));
    const LogComplex l = lc_mul(lc_mul(a, b), c);
    const LogComplex r = lc_mul(a, lc_mul(b, c));
    CHECK(std::fabs(l.log_mag - r.log_mag) < 1e-10);
    CHECK(std::fabs(normalize_angle(l.arg - r.arg)) < 1e-10);
  }
}

TEST_CASE("cartesian round trip") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    const std::complex<double> z(rng.uniform(30, i, -50.0, 50.0),
                                 rng.uniform(31, i, -50.0, 50.0));
    const std::complex<double> back = lc_to_complex(lc_from(z));
    CHECK(std::abs(back - z) <= 1e-12 * std::abs(z));
  }
  CHECK(lc_is_zero(lc_from({0.0, 0.0})));
}

TEST_CASE("lc_polar_log rejects non-finite magnitudes") {
  CHECK_THROWS_AS(lc(std::numeric_limits<double>::infinity(), 0.0),
                  RangeExhausted);
  CHECK_THROWS_AS(lc(std::nan(""), 0.0), RangeExhausted);
}

TEST_CASE("lc_pow rotations and moduli") {
  const PowValue p1 = lc_pow(lc(0.0, kPi / 4), bc_exact(4));
  const LogComplex r1 = std::get<LogComplex>(p1);
  CHECK(r1.log_mag == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r1.arg == doctest::Approx(kPi).epsilon(1e-12));

  const LogComplex r2 = std::get<LogComplex>(lc_pow(lc(std::log(2.0), 0.0),
                                                    bc_exact(10)));
  CHECK(r2.log_mag == doctest::Approx(10 * std::log(2.0)).epsilon(1e-15));
  CHECK(std::fabs(r2.arg) < 1e-12);
}

TEST_CASE("lc_pow matches repeated squaring up to n = 1e6") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 200; ++i) {
    const double lm = rng.uniform(40, i, -1e-3, 1e-3);
    const double ar = rng.uniform(41, i, -kPi, kPi);
    const std::uint64_t n =
        1 + (rng.bits(42, i) % 1000000);
    const LogComplex r = std::get<LogComplex>(lc_pow(lc(lm, ar), bc_exact(n)));
    // Repeated squaring on the log-modulus is exact scaling; compare logs.
    CHECK(r.log_mag ==
          doctest::Approx(static_cast<double>(n) * lm).epsilon(1e-9));
    CHECK(lc_pow_exact(lc(lm, ar), n).log_mag == r.log_mag);
  }
}

TEST_CASE("lc_pow on a log-only count keeps the modulus and drops the arg") {
  const BigCount n = bc_log(300.0);  // count ~ e^300, far beyond exact range
  const PowValue p = lc_pow(lc(1e-3, 0.3), n);
  REQUIRE(std::holds_alternative<ModInterval>(p));
  const ModInterval m = std::get<ModInterval>(p);
  const double expect = 1e-3 * std::exp(300.0);
  CHECK(m.lo_log <= expect);
  CHECK(m.hi_log >= expect);
  CHECK(mi_width(m) < 1e-10 * std::fabs(expect) + 1e-30);
}

TEST_CASE("zero to a log-only power is rejected") {
  CHECK_THROWS_AS(lc_pow(lc_zero(), bc_log(50.0)), ZeroToLogOnlyPower);
  // Exact powers of zero are fine.
  CHECK(lc_is_zero(std::get<LogComplex>(lc_pow(lc_zero(), bc_exact(5)))));
}

TEST_CASE("mi_abs_linear triangle bounds for 1 - w/2") {
  // |w| = e^{-50}: both endpoints hug 1.
  const ModInterval tiny = mi_abs_linear(1.0, -0.5, mi_point(-50.0));
  CHECK(std::exp(tiny.lo_log) <= 1.0 - std::exp(-50.0) / 2 + 1e-15);
  CHECK(std::exp(tiny.hi_log) >= 1.0 + std::exp(-50.0) / 2 - 1e-15);

  // |w| = 4: |1 - w/2| lies in [1, 3].
  const ModInterval big = mi_abs_linear(1.0, -0.5, mi_point(std::log(4.0)));
  CHECK(std::exp(big.lo_log) <= 1.0 + 1e-12);
  CHECK(std::exp(big.hi_log) >= 3.0 - 1e-12);
}

TEST_CASE("mi_abs_linear is sound on random w") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 10000; ++i) {
    const double lw = rng.uniform(50, i, -5.0, 3.0);
    const double aw = rng.uniform(51, i, -kPi, kPi);
    const std::complex<double> w = std::polar(std::exp(lw), aw);
    const double exact = std::abs(1.0 - w / 2.0);
    const ModInterval b = mi_abs_linear(1.0, -0.5, mi_point(lw));
    if (exact == 0.0) {
      CHECK(b.lo_log == -std::numeric_limits<double>::infinity());
      continue;
    }
    CHECK(std::log(exact) >= b.lo_log - 1e-12);
    CHECK(std::log(exact) <= b.hi_log + 1e-12);
  }
}

TEST_CASE("interval products stay sound") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 5000; ++i) {
    const double la = rng.uniform(60, i, -40.0, 40.0);
    const double lb = rng.uniform(61, i, -40.0, 40.0);
    const ModInterval p = mi_mul(mi_point(la), mi_point(lb));
    CHECK(la + lb >= p.lo_log - 1e-12);
    CHECK(la + lb <= p.hi_log + 1e-12);
    CHECK(p.lo_log <= p.hi_log);
  }
}

TEST_CASE("BigCount exactness boundary at 2^53") {
  const BigCount small = bc_exact(123);
  CHECK(bc_is_exact(small));
  CHECK(bc_value(small) == 123);
  CHECK(std::fabs(small.log_value - std::log(123.0)) <= 1e-12);

  const BigCount huge = bc_exact((1ull << 53) + 2);
  CHECK_FALSE(bc_is_exact(huge));
  CHECK_THROWS_AS(bc_value(huge), ExactCountRequired);

  const BigCount prod = bc_mul(bc_exact(1ull << 30), bc_exact(1ull << 30));
  CHECK_FALSE(bc_is_exact(prod));
  CHECK(prod.log_value == doctest::Approx(60 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("BigCount arithmetic") {
  const BigCount a = bc_exact(6);
  const BigCount b = bc_exact(7);
  CHECK(bc_value(bc_mul(a, b)) == 42);
  CHECK(bc_value(bc_add(a, b)) == 13);
  CHECK(bc_double(bc_exact(1000)) == 1000.0);
  CHECK(bc_double(bc_log(10.0)) == doctest::Approx(std::exp(10.0)));
  CHECK(bc_double(bc_log(1e4)) == std::numeric_limits<double>::infinity());
  CHECK(bc_equal(bc_exact(8), bc_exact(8)));
  CHECK_FALSE(bc_equal(bc_exact(8), bc_exact(9)));
}

TEST_CASE("arguments stay normalized") {
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 2000; ++i) {
    const LogComplex a =
        lc(rng.uniform(70, i, -10.0, 10.0), rng.uniform(71, i, -kPi, kPi));
    const LogComplex b =
        lc(rng.uniform(72, i, -10.0, 10.0), rng.uniform(73, i, -kPi, kPi));
    for (const LogComplex& r : {lc_mul(a, b), lc_add(a, b),
                                lc_pow_exact(a, 17)}) {
      if (lc_is_zero(r)) continue;
      CHECK(r.arg > -kPi - 1e-15);
      CHECK(r.arg <= kPi + 1e-15);
      CHECK(std::isfinite(r.log_mag));
    }
  }
}
