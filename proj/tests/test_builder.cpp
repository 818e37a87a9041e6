// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <string>

#include "doctest.h"
#include "transcend/builder.hpp"
#include "transcend/chebgeom.hpp"
#include "transcend/errors.hpp"
#include "transcend/rng.hpp"

using namespace transcend;

namespace {

Construction default_build(int depth = 5, Exec mode = Exec::parallel) {
  const PolySpec spec = make_poly_spec({1.0});
  HeadParams head = make_head_params(spec, 10.0, 4);
  head.R = 32.0;
  return build(spec, head, SequenceRule{}, depth, BuildOptions{}, mode);
}

Level synth_level(double R, std::uint64_t n, std::uint64_t l) {
  Level lv;
  lv.k = 1;
  lv.logR = std::log(R);
  lv.n = bc_exact(n);
  lv.l = bc_exact(l);
  lv.m = bc_exact(n * l);
  lv.logC = 0.0;
  lv.signC = 1;
  return lv;
}

}  // namespace

TEST_CASE("rule_n covers the four sequence kinds") {
  bool clamped = false;
  SequenceRule r;

  r.nkind = SequenceRule::NKind::constant;
  r.nc = 12;
  CHECK(bc_value(rule_n(r, 5.0, 1, &clamped)) == 12);
  CHECK(!clamped);
  r.nc = 4;
  CHECK(bc_value(rule_n(r, 5.0, 1, &clamped)) == 8);
  CHECK(clamped);

  r = SequenceRule{};
  r.nkind = SequenceRule::NKind::power;
  r.ns = 0.5;
  CHECK(bc_value(rule_n(r, std::log(10000.0), 1, &clamped)) == 100);
  const BigCount big = rule_n(r, 200.0, 1, &clamped);
  CHECK(!bc_is_exact(big));
  CHECK(big.log_value == doctest::Approx(100.0));

  r = SequenceRule{};
  r.nkind = SequenceRule::NKind::tower;
  CHECK(bc_value(rule_n(r, std::log(9.0), 1, &clamped)) == 9);
  CHECK(bc_value(rule_n(r, std::log(9.0), 3, &clamped)) == 729);

  r = SequenceRule{};
  r.nkind = SequenceRule::NKind::logpower;
  r.ns = 2.0;
  CHECK(bc_value(rule_n(r, 100.0, 1, &clamped)) == 10000);

  r.ns = -1.0;
  CHECK_THROWS_AS(rule_n(r, 100.0, 1, &clamped), ValidationFailure);
}

TEST_CASE("rule_l") {
  SequenceRule r;
  CHECK(bc_value(rule_l(r, 100.0)) == 1);
  r.lkind = SequenceRule::LKind::maxlog;
  CHECK(bc_value(rule_l(r, 10.0 * std::log(2.0))) == 10);
  CHECK(bc_value(rule_l(r, 0.5)) == 1);  // floored below 1 is lifted back
}

TEST_CASE("circle extrema on explicit profiles") {
  const CircleEval flat = [](double, double) { return mi_point(1.5); };
  const CircleExtremum c = circle_max(flat, 0.0, 4.0, 4096, Exec::parallel);
  CHECK(c.value_log == 1.5);

  // |z|^5 on the circle log r = 0.3 is constant in angle.
  const CircleEval pw = [](double lr, double) { return mi_point(5.0 * lr); };
  CHECK(circle_max(pw, 0.3, 5.0, 4096, Exec::parallel).value_log ==
        doctest::Approx(1.5).epsilon(1e-15));

  // log(2 + cos t): max log 3 at t = 0, min 0 at t = pi.
  const CircleEval bump = [](double, double t) {
    return mi_point(std::log(2.0 + std::cos(t)));
  };
  const CircleExtremum mx = circle_max(bump, 0.0, 8.0, 4096, Exec::parallel);
  CHECK(mx.value_log == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(std::fabs(mx.angle) < 1e-6);
  const CircleExtremum mn = circle_min(bump, 0.0, 8.0, 4096, Exec::parallel);
  CHECK(mn.value_log == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mn.angle == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("default ladder") {
  const Construction c = default_build();
  REQUIRE(c.K() == 5);
  CHECK(!c.capped);
  CHECK(c.warnings.empty());
  CHECK(c.level(1).logR == doctest::Approx(std::log(64.0)).epsilon(1e-15));
  for (int k = 1; k <= c.K(); ++k) {
    CHECK(bc_value(c.level(k).n) == 8);
    CHECK(bc_value(c.level(k).l) == 1);
  }
  // Degrees accumulate exactly: m_k = m_{k-1} + n_k l_k.
  CHECK(bc_value(c.level(1).m) == 24);
  CHECK(bc_value(c.level(5).m) == 56);
  // Radii grow at least quadratically: R_{k+1} >= 4 R_k^2.
  for (int k = 1; k < c.K(); ++k)
    CHECK(c.level(k + 1).logR >=
          std::log(4.0) + 2.0 * c.level(k).logR - 1e-12);
  // Tail weight of the product: sum_k l_k (2/3)^{n_k}.
  CHECK(c.tail_sum ==
        doctest::Approx(5.0 * std::pow(2.0 / 3.0, 8)).epsilon(1e-12));
}

TEST_CASE("next radius is the circle maximum of the truncated product") {
  const Construction c = default_build(2);
  const double lr = std::log(2.0) + c.level(1).logR;
  const CircleEval ev = [&c](double lrr, double th) {
    return f_truncated(c, lc_polar_log(lrr, th), 1).mod_bounds();
  };
  const CircleExtremum mx = circle_max(ev, lr, effective_degree(c, 1, lr),
                                       c.build_samples, Exec::parallel);
  CHECK(c.level(2).logR == doctest::Approx(mx.value_log).epsilon(1e-12));
}

TEST_CASE("circle scan density is converged for the truncated product") {
  const Construction c = default_build(2);
  const double lr = std::log(2.0) + c.level(1).logR;
  const CircleEval ev = [&c](double lrr, double th) {
    return f_truncated(c, lc_polar_log(lrr, th), 1).mod_bounds();
  };
  const double deg = effective_degree(c, 1, lr);
  const double a = circle_max(ev, lr, deg, 4096, Exec::parallel).value_log;
  const double b = circle_max(ev, lr, deg, 16384, Exec::parallel).value_log;
  CHECK(std::fabs(a - b) < 1e-6);
}

TEST_CASE("effective degree counts only live factors") {
  const Construction c = default_build(3);
  const double l1 = std::log(2.0) + c.level(1).logR;
  CHECK(effective_degree(c, 1, l1) == doctest::Approx(24.0));
  // On the circle 2 R_2 the level-1 factor is frozen at its leading term.
  const double l2 = std::log(2.0) + c.level(2).logR;
  CHECK(effective_degree(c, 2, l2) == doctest::Approx(24.0));
}

TEST_CASE("Fk_eval factor values") {
  const Level lv = synth_level(2.0, 4, 1);

  // Zero of the factor: (z/R)^n = 2. On an R = 1 level the log chain is
  // exact arithmetic, so the zero is hit exactly.
  const FkValue zero = Fk_eval(synth_level(1.0, 4, 1),
                               lc_polar_log(std::log(2.0) / 4.0, 0.0));
  CHECK(zero.has_arg);
  CHECK(lc_is_zero(zero.lc));

  // At z = R the factor is 1/2 with at most phase noise at the ulp scale.
  const FkValue half = Fk_eval(lv, lc_real(2.0));
  CHECK(half.lc.log_mag == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(std::fabs(half.lc.arg) < 1e-15);

  // Small |z|: matches the native value.
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 200; ++i) {
    const std::complex<double> z(rng.uniform(100, i, -1.5, 1.5),
                                 rng.uniform(101, i, -1.5, 1.5));
    if (std::abs(z) < 1e-3) continue;
    const std::complex<double> zr = z / 2.0;
    const std::complex<double> w = zr * zr * zr * zr;
    const std::complex<double> native = 1.0 - 0.5 * w;
    const FkValue got = Fk_eval(lv, lc_from(z));
    CHECK(got.lc.log_mag ==
          doctest::Approx(std::log(std::abs(native))).epsilon(1e-11));
  }

  // Far below the dominance gap the factor is the exact unit.
  const FkValue one = Fk_eval(lv, lc_polar_log(std::log(2.0) - 15.0, 0.7));
  CHECK(one.lc.log_mag == 0.0);
  CHECK(one.lc.arg == 0.0);
  CHECK(one.skipped_dev > 0.0);
  CHECK(one.skipped_dev < 1e-25);

  // Far above: the leading term -w/2 wins.
  const FkValue big = Fk_eval(lv, lc_polar_log(std::log(2.0) + 30.0, 0.0));
  CHECK(big.lc.log_mag ==
        doctest::Approx(4.0 * 30.0 - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("f_eval at the origin reduces to the head") {
  const PolySpec spec = make_poly_spec({1.0});
  const HeadParams head = make_head_params(spec, 10.0, 4);
  const Construction c = default_build();
  const LogComplex f0 = F0_eval(spec, head, lc_zero());
  // F_k(0) = 1 exactly, so the product is the head value with a tail bound.
  const ValueBound v = f_eval(c, lc_zero(), 1e-9);
  REQUIRE(v.has_arg);
  CHECK(v.lc.log_mag == f0.log_mag);
  CHECK(v.lc.arg == f0.arg);
  CHECK(v.dev <= 1e-9);
  CHECK(v.k_used >= 2);
  // The head value itself: the orbit of 0 under 10 (z^2 - 1) four times.
  CHECK(f0.log_mag ==
        doctest::Approx(std::log(960594049800990.0)).epsilon(1e-13));
}

TEST_CASE("f_eval range and tolerance guards") {
  const Construction c2 = default_build(2);
  const double edge = c2.level(2).logR + std::log(4.0);
  CHECK_THROWS_AS(f_eval(c2, lc_polar_log(edge + 0.1, 0.0), 1e-6), OutOfRange);
  CHECK_THROWS_AS(f_eval(c2, lc_real(1.0), 1e-55), TolUnreachable);
}

TEST_CASE("deepening the truncation moves the value less than the tail bound")
{
  const Construction c = default_build(3);
  const double r1 = std::exp(c.level(1).logR);
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 50; ++i) {
    const double lr = std::log(rng.uniform(110, i, 1.0, 4.0 * r1));
    const double th = rng.uniform(111, i, 0.0, kTau);
    const ValueBound a = f_truncated(c, lc_polar_log(lr, th), 1);
    const ValueBound b = f_truncated(c, lc_polar_log(lr, th), 3);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(std::fabs(a.lc.log_mag - b.lc.log_mag) <= 8.0 / r1 + 1e-9);
  }
}

TEST_CASE("epsilon_k") {
  const Construction c = default_build(2);
  CHECK(epsilon_k(c.level(1)) ==
        doctest::Approx(std::pow(2.0 / 3.0, 8) + 1.0 / 64.0).epsilon(1e-12));
  CHECK(kEpsilonC == 8.0);
}

TEST_CASE("truncated product matches its normal form on the working annulus") {
  const Construction c = default_build(4);
  for (int k = 1; k <= 3; ++k) {
    const Level& lv = c.level(k);
    const double m_prev =
        k == 1 ? static_cast<double>(c.head.m) : bc_double(c.level(k - 1).m);
    const std::uint64_t e =
        static_cast<std::uint64_t>(m_prev) - bc_value(lv.n) * bc_value(lv.l);
    const double mid = 0.5 * (lv.logR + c.level(k + 1).logR);
    for (const double lr : {lv.logR + std::log(1.5), mid}) {
      for (const double th : {0.3, 2.1, 4.0}) {
        const LogComplex z = lc_polar_log(lr, th);
        const ValueBound f = f_truncated(c, z, k);
        REQUIRE(f.has_arg);
        const LogComplex zr{false, z.log_mag - lv.logR, z.arg};
        const LogComplex h = std::get<LogComplex>(H_eval(lv.n, zr));
        REQUIRE(!h.zero);
        LogComplex nf = lc_polar_log(lv.logC, lv.signC < 0 ? kPi : 0.0);
        nf = lc_mul(nf, lc_pow_exact(z, e));
        nf = lc_mul(nf, lc_pow_exact(h, bc_value(lv.l)));
        const double eps = epsilon_k(lv);
        CHECK(std::fabs(f.lc.log_mag - nf.log_mag) <= eps);
        CHECK(std::fabs(normalize_angle(f.lc.arg - nf.arg)) <=
              kEpsilonC * eps);
      }
    }
  }
}

TEST_CASE("builds are deterministic and mode independent") {
  const Construction a = default_build(3, Exec::parallel);
  const Construction b = default_build(3, Exec::serial);
  const std::string cfg = "x = 1\n";
  CHECK(construction_to_json(a, cfg) == construction_to_json(b, cfg));
}

TEST_CASE("construction JSON round trip is byte stable") {
  const Construction c = default_build(3);
  const std::string cfg = "roots = 0x1p+0\nlambda = 0x1.4p+3\n";
  const std::string j1 = construction_to_json(c, cfg);
  std::string cfg_out;
  const Construction c2 = construction_from_json(j1, &cfg_out);
  CHECK(cfg_out == cfg);
  CHECK(construction_to_json(c2, cfg) == j1);
  CHECK(c2.K() == c.K());
  CHECK(c2.level(3).logR == c.level(3).logR);
  CHECK(bc_equal(c2.level(3).m, c.level(3).m));
}

TEST_CASE("build validation") {
  const PolySpec spec = make_poly_spec({1.0});
  HeadParams head = make_head_params(spec, 10.0, 4);
  head.R = 16.0;  // below the leading-band floor
  CHECK_THROWS_AS(build(spec, head, SequenceRule{}, 3), ValidationFailure);
  head.R = 32.0;
  BuildOptions opts;
  opts.samples = 1024;
  CHECK_THROWS_AS(build(spec, head, SequenceRule{}, 3, opts),
                  ValidationFailure);
  CHECK_THROWS_AS(build(spec, head, SequenceRule{}, 0), ValidationFailure);
}

TEST_CASE("clamped counts are reported") {
  const PolySpec spec = make_poly_spec({1.0});
  HeadParams head = make_head_params(spec, 10.0, 4);
  head.R = 32.0;
  SequenceRule r;
  r.nc = 4;
  const Construction c = build(spec, head, r, 2);
  CHECK(bc_value(c.level(1).n) == 8);
  CHECK(!c.warnings.empty());
}

TEST_CASE("log ceiling caps the depth honestly") {
  const PolySpec spec = make_poly_spec({1.0});
  HeadParams head = make_head_params(spec, 10.0, 4);
  head.R = 32.0;
  BuildOptions opts;
  opts.log_ceiling = 200.0;
  const Construction c = build(spec, head, SequenceRule{}, 5, opts);
  CHECK(c.capped);
  CHECK(c.K() >= 2);
  CHECK(c.K() < 5);
  CHECK(c.requested_depth == 5);
}
