// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "transcend/errors.hpp"
#include "transcend/rng.hpp"
#include "transcend/seedpoly.hpp"

using namespace transcend;

namespace {

std::complex<double> as_complex(const LogComplex& z) { return lc_to_complex(z); }

}  // namespace

TEST_CASE("make_poly_spec validates the root list") {
  const PolySpec s = make_poly_spec({1.0, 2.0});
  CHECK(s.k_prime == 2);
  CHECK(s.k0 == 4);
  CHECK_THROWS_AS(make_poly_spec({}), ValidationFailure);
  CHECK_THROWS_AS(make_poly_spec({2.0, 1.0}), ValidationFailure);
  CHECK_THROWS_AS(make_poly_spec({-1.0, 2.0}), ValidationFailure);
  CHECK_THROWS_AS(make_poly_spec({1.0, 1.0}), ValidationFailure);
}

TEST_CASE("p_eval pointwise values") {
  const PolySpec s1 = make_poly_spec({1.0});
  // p(0) = -a_1^2 = -1.
  const LogComplex p0 = p_eval(s1, 1.0, lc_zero());
  CHECK(as_complex(p0).real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::fabs(as_complex(p0).imag()) < 1e-14);
  // Exact zero at the root.
  CHECK(lc_is_zero(p_eval(s1, 1.0, lc_real(1.0))));

  const PolySpec s12 = make_poly_spec({1.0, 2.0});
  // 3 * (9 - 1) * (9 - 4) = 120.
  const LogComplex v = p_eval(s12, 3.0, lc_real(3.0));
  CHECK(as_complex(v).real() == doctest::Approx(120.0).epsilon(1e-13));
}

TEST_CASE("p is even") {
  const PolySpec s = make_poly_spec({1.0, 2.5});
  CounterRng rng(kDefaultSeed);
  for (int i = 0; i < 500; ++i) {
    const std::complex<double> z(rng.uniform(1, i, -3.0, 3.0),
                                 rng.uniform(2, i, -3.0, 3.0));
    const LogComplex a = p_eval(s, 2.25, lc_from(z));
    const LogComplex b = p_eval(s, 2.25, lc_from(-z));
    if (lc_is_zero(a)) {
      CHECK(lc_is_zero(b));
      continue;
    }
    CHECK(a.log_mag == doctest::Approx(b.log_mag).epsilon(1e-12));
    CHECK(std::fabs(normalize_angle(a.arg - b.arg)) < 1e-10);
  }
}

TEST_CASE("make_head_params computes m and m_star exactly") {
  const PolySpec s1 = make_poly_spec({1.0});
  const HeadParams h = make_head_params(s1, 10.0, 4);
  CHECK(h.m == 16);       // k0^N = 2^4
  CHECK(h.m_star == 15);  // 8 + 4 + 2 + 1
  const PolySpec s12 = make_poly_spec({1.0, 2.0});
  const HeadParams h2 = make_head_params(s12, 3.0, 4);
  CHECK(h2.m == 256);     // 4^4
  CHECK(h2.m_star == 85); // 64 + 16 + 4 + 1

  CHECK_THROWS_AS(make_head_params(s1, 2.0, 4), ValidationFailure);
  CHECK_THROWS_AS(make_head_params(s1, 10.0, 3), ValidationFailure);
}

TEST_CASE("F0_eval composes the head polynomial") {
  const PolySpec s = make_poly_spec({1.0});
  // Composition depths below the validated range still evaluate; build the
  // params struct by hand.
  HeadParams h;
  h.lambda = 1.0;
  h.N = 1;
  CHECK(as_complex(F0_eval(s, h, lc_zero())).real() ==
        doctest::Approx(-1.0).epsilon(1e-14));
  h.N = 2;
  // p(p(0)) = p(-1) = 0.
  CHECK(lc_is_zero(F0_eval(s, h, lc_zero())));
}

TEST_CASE("F0_eval matches native composition in range") {
  const PolySpec s = make_poly_spec({1.0});
  const HeadParams h = make_head_params(s, 10.0, 4);
  CounterRng rng(kDefaultSeed);
  int used = 0;
  for (int i = 0; i < 500; ++i) {
    const std::complex<double> z(rng.uniform(5, i, -2.0, 2.0),
                                 rng.uniform(6, i, -2.0, 2.0));
    std::complex<double> w = z;
    for (int n = 0; n < 4; ++n) w = 10.0 * (w * w - 1.0);
    if (std::abs(w) < 1e-6) continue;  // too close to a zero for log compare
    ++used;
    const LogComplex r = F0_eval(s, h, lc_from(z));
    CHECK(r.log_mag ==
          doctest::Approx(std::log(std::abs(w))).epsilon(1e-10));
    CHECK(std::fabs(normalize_angle(r.arg - std::arg(w))) < 1e-8);
  }
  CHECK(used > 400);
}

TEST_CASE("leading ratio band and radius search") {
  const PolySpec s = make_poly_spec({1.0});
  HeadParams h = make_head_params(s, 10.0, 4);
  const double R = find_leading_radius(s, h, 4096);
  CHECK(R == 32.0);
  h.R = R;
  for (const double r : {R, 2 * R, 4 * R}) {
    const RatioScan scan = leading_ratio_scan(s, h, r, 4096, RatioBand{},
                                              Exec::parallel);
    CHECK(scan.ok);
    CHECK(scan.min_ratio_log >= std::log(0.5));
    CHECK(scan.max_ratio_log <= std::log(1.5));
  }
  // The ratio tends to 1, so the band tightens with radius.
  const RatioScan far = leading_ratio_scan(s, h, 1048576.0, 4096, RatioBand{},
                                           Exec::parallel);
  CHECK(std::fabs(far.min_ratio_log) < 1e-6);
  CHECK(std::fabs(far.max_ratio_log) < 1e-6);
}

TEST_CASE("radius search fails honestly when the band excludes the limit") {
  const PolySpec s = make_poly_spec({1.0});
  const HeadParams h = make_head_params(s, 10.0, 4);
  // The ratio converges to 1, so a band bounded away from 1 can never hold
  // on all three circles.
  CHECK_THROWS_AS(find_leading_radius(s, h, 1024, RatioBand{1.2, 1.5}),
                  NotFound);
}

TEST_CASE("serial and parallel ratio scans agree bitwise") {
  const PolySpec s = make_poly_spec({1.0});
  HeadParams h = make_head_params(s, 10.0, 4);
  h.R = 32.0;
  const RatioScan a = leading_ratio_scan(s, h, 64.0, 8192, RatioBand{},
                                         Exec::serial);
  const RatioScan b = leading_ratio_scan(s, h, 64.0, 8192, RatioBand{},
                                         Exec::parallel);
  CHECK(a.min_ratio_log == b.min_ratio_log);
  CHECK(a.max_ratio_log == b.max_ratio_log);
  CHECK(a.ok == b.ok);
}

TEST_CASE("escape radius") {
  // |z^2 - 1| >= |z|^2 - 1 > |z|^2 / 2 from |z| = 2 on.
  CHECK(find_escape_radius(make_poly_spec({1.0})) == 2.0);
  // z = 2 is a root of z^2 - 4, so radius 2 fails and 4 is the answer.
  CHECK(find_escape_radius(make_poly_spec({1.0, 2.0})) == 4.0);
}

TEST_CASE("critical points of the seed polynomial") {
  const std::vector<double> c1 = p_critical_points(make_poly_spec({1.0}));
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == 0.0);

  const std::vector<double> c2 = p_critical_points(make_poly_spec({1.0, 2.0}));
  REQUIRE(c2.size() == 3);
  const double r = std::sqrt(2.5);
  CHECK(c2[0] == doctest::Approx(-r).epsilon(1e-10));
  CHECK(c2[1] == doctest::Approx(0.0));
  CHECK(c2[2] == doctest::Approx(r).epsilon(1e-10));

  const PolySpec s3 = make_poly_spec({1.0, 2.0, 3.0});
  const std::vector<double> c3 = p_critical_points(s3);
  REQUIRE(c3.size() == 5);
  for (const double c : c3) CHECK(std::fabs(p_derivative(s3, c)) <= 1e-8);
}
