// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "transcend/chebgeom.hpp"
#include "transcend/errors.hpp"
#include "transcend/io.hpp"
#include "transcend/rng.hpp"

using namespace transcend;

namespace {

LogComplex h_point(int m, std::complex<double> z) {
  return std::get<LogComplex>(
      H_eval(bc_exact(static_cast<std::uint64_t>(m)), lc_from(z)));
}

}  // namespace

TEST_CASE("H pointwise values") {
  CHECK(lc_is_zero(std::get<LogComplex>(H_eval(bc_exact(5), lc_zero()))));

  const LogComplex one = h_point(3, {1.0, 0.0});
  CHECK(one.log_mag == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::fabs(one.arg) < 1e-15);

  // H_2(i) = (-1)(2 - (-1)) = -3.
  const LogComplex mi = h_point(2, {0.0, 1.0});
  CHECK(mi.log_mag == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(std::fabs(std::fabs(mi.arg) - kPi) < 1e-14);
}

TEST_CASE("H with a log-only exponent returns a modulus interval") {
  const PowValue v = H_eval(bc_log(100.0), lc_polar_log(0.5, 0.3));
  REQUIRE(std::holds_alternative<ModInterval>(v));
  const ModInterval w = std::get<ModInterval>(v);
  CHECK(w.lo_log <= w.hi_log);
  CHECK(std::isfinite(w.hi_log));
}

TEST_CASE("identity defects vanish at the anchors") {
  CHECK(chebyshev_consistency(8, {0.0, 0.0}) <= 1e-15);
  CHECK(chebyshev_consistency(8, {1.0, 0.0}) <= 1e-15);
  CHECK(one_minus_H_identity(8, {0.0, 0.0}) <= 1e-15);
  CHECK(one_minus_H_identity(8, {1.0, 0.0}) <= 1e-15);
}

TEST_CASE("identity defects stay at rounding level on the disk") {
  CounterRng rng(kDefaultSeed);
  for (const int m : {2, 8, 32}) {
    double worst_c = 0.0;
    double worst_q = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t s = 0xCEB00u + 2u * static_cast<std::uint64_t>(m);
      const double r = 2.0 * std::sqrt(rng.uniform(s, i));
      const double t = rng.uniform(s + 1, i, 0.0, kTau);
      const std::complex<double> z = std::polar(r, t);
      worst_c = std::max(worst_c, chebyshev_consistency(m, z));
      worst_q = std::max(worst_q, one_minus_H_identity(m, z));
    }
    CHECK(worst_c <= 1e-12);
    CHECK(worst_q <= 1e-11);
  }
}

TEST_CASE("identity defect domain is validated") {
  CHECK_THROWS_AS(chebyshev_consistency(0, {0.5, 0.0}), ValidationFailure);
  CHECK_THROWS_AS(chebyshev_consistency(65, {0.5, 0.0}), ValidationFailure);
  CHECK_THROWS_AS(chebyshev_consistency(8, {3.0, 0.0}), OutOfRange);
  CHECK_THROWS_AS(one_minus_H_identity(8, {0.0, 2.5}), OutOfRange);
}

TEST_CASE("H is invariant under rotation by the petal angle") {
  CounterRng rng(kDefaultSeed);
  for (const int m : {4, 9}) {
    for (int i = 0; i < 500; ++i) {
      const double lr = rng.uniform(200 + static_cast<std::uint64_t>(m), i,
                                    -0.4, 0.4);
      const double th = rng.uniform(300 + static_cast<std::uint64_t>(m), i,
                                    0.0, kTau);
      const LogComplex a = std::get<LogComplex>(
          H_eval(bc_exact(static_cast<std::uint64_t>(m)),
                 lc_polar_log(lr, th)));
      const LogComplex b = std::get<LogComplex>(
          H_eval(bc_exact(static_cast<std::uint64_t>(m)),
                 lc_polar_log(lr, th + kTau / m)));
      if (a.zero) {
        CHECK(b.zero);
        continue;
      }
      CHECK(a.log_mag == doctest::Approx(b.log_mag).epsilon(1e-10));
    }
  }
}

TEST_CASE("level curve stays in the petal band and repeats per petal") {
  const int m = 8;
  const long samples = 512;  // multiple of m so rotation maps rays to rays
  const PetalGeometry g = level_curve(m, samples);
  CHECK(g.m == m);
  CHECK(g.inner_bound == doctest::Approx(1.0 - 1.0 / m));
  CHECK(g.outer_bound == doctest::Approx(1.0 + 2.0 / m));
  CHECK(g.z2 == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(g.r2 == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
  CHECK(g.rt2 == doctest::Approx(1.0 / std::sqrt(2.0)));
  REQUIRE(!g.level_curve.empty());
  CHECK(static_cast<long>(g.level_curve.size()) >= samples);

  for (const auto& [th, r] : g.level_curve) {
    CHECK(r >= g.inner_bound - 1e-12);
    CHECK(r <= g.outer_bound + 1e-12);
    CHECK(th >= 0.0);
    CHECK(th < kTau);
  }

  // Rotating by 2 pi / m maps the crossing set to itself.
  for (const auto& [th, r] : g.level_curve) {
    const double target = std::fmod(th + kTau / m, kTau);
    bool found = false;
    for (const auto& [th2, r2] : g.level_curve) {
      if (std::fabs(th2 - target) < 1e-9 && std::fabs(r2 - r) < 1e-9) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("level curve validation") {
  CHECK_THROWS_AS(level_curve(1, 512), ValidationFailure);
  CHECK_THROWS_AS(level_curve(2000, 32000), ValidationFailure);
  CHECK_THROWS_AS(level_curve(16, 64), ValidationFailure);  // under 8 m rays
}

TEST_CASE("level curve CSV artifact") {
  const PetalGeometry g = level_curve(4, 64);
  const std::string path = "/tmp/transcend_levelcurve_test.csv";
  level_curve_csv(path, g, "lambda = 0x1.4p+3\n");
  const std::string text = read_file(path);
  CHECK(text.rfind("# transcend-levelcurve/1", 0) == 0);
  CHECK(text.find("# config-begin") != std::string::npos);
  CHECK(text.find("angle,radius,angle_hex,radius_hex") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("containment margins are positive") {
  for (const int m : {2, 8, 16, 32}) {
    const auto [inner, outer] = containment_check(m, 4096);
    CHECK(inner.name == "cheb.containment.inner m=" + std::to_string(m));
    CHECK(outer.name == "cheb.containment.outer m=" + std::to_string(m));
    CHECK(inner.passed());
    CHECK(outer.passed());
    CHECK(inner.margin_log > 0.0);
    CHECK(outer.margin_log > 0.0);
  }
}

TEST_CASE("zero radius of a factor") {
  // n = 1, R = 1: the zero sits at radius 2.
  Level lv;
  lv.logR = 0.0;
  lv.n = bc_exact(1);
  CHECK(std::exp(zero_radius(lv).exact_log) ==
        doctest::Approx(2.0).epsilon(1e-15));

  // General ratio: zeros at R 2^{1/n}.
  lv.logR = std::log(5.0);
  lv.n = bc_exact(4);
  CHECK(zero_radius(lv).exact_log - lv.logR ==
        doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-14));

  // First-order placement converges quadratically.
  for (const std::uint64_t n : {8ull, 64ull, 1024ull}) {
    lv.logR = std::log(64.0);
    lv.n = bc_exact(n);
    const ZeroRadius zr = zero_radius(lv);
    CHECK(zr.gap >= 0.0);
    CHECK(zr.gap <= 1.0 / static_cast<double>(n * n));
    CHECK(zr.exact_log - zr.first_order_log == doctest::Approx(zr.gap));
  }
}
