// Copyright 2026 The hrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hrb/exactmath.hpp"
#include "hrb/lattice.hpp"
#include "hrb/weights.hpp"
#include "support.hpp"

using namespace hrb;
using hrb::testing::close;
using hrb::testing::pow2;
using hrb::testing::Q;

namespace {

constexpr Precision kP{128};

Real tol() { return pow2(-100, kP); }

Real rel(double v) { return Real::from_double(v, kP); }

}  // namespace

TEST_CASE("parameter sequence values") {
  CHECK(close(g_param(WeightSpec::canonical(3), kP)(3), sqrt(Real(3, kP)) * 2L, tol()));
  CHECK(g_param(WeightSpec::canonical(1), kP)(4) == 2L);
  for (long ell = 1; ell <= 6; ++ell) {
    auto g = g_param(WeightSpec::canonical(ell), kP);
    CHECK(g.support_floor() == ell);
    Real expect = sqrt(Real(ell, kP)) * Real(factorial(ell - 1), kP);
    CHECK(close(g(ell), expect, tol()));
    for (long n = -3; n < ell; ++n) CHECK(g(n).is_zero());
  }
  auto c2 = g_param(WeightSpec::canonical(2), kP);
  auto q2 = g_param(WeightSpec::q_family(2, Q(1, 2)), kP);
  for (long n = 0; n < 60; ++n) CHECK(close(c2(n), q2(n), tol()));
  auto a = g_param(WeightSpec::alpha2(Q(1)), kP);
  CHECK(close(a(5), sqrt(Real(5 * 4 * 4, kP)), tol()));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(WeightSpec::q_family(2, Q(3, 2)).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::q_family(2, Q(0)).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::canonical(0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(rho_eval(WeightSpec::canonical(3), 2, kP), std::invalid_argument);
  CHECK(parse_family("kpp") == Family::kpp);
  CHECK(!parse_family("nope").has_value());
  for (auto f : {Family::canonical, Family::q_family, Family::shifted, Family::alpha2, Family::polyharmonic,
                 Family::kpp, Family::gks, Family::hy, Family::birman_classical,
                 Family::half_power_monomial}) {
    CHECK(parse_family(family_name(f)) == f);
  }
}

TEST_CASE("weight examples") {
  CHECK(close(rho_eval(WeightSpec::kpp(), 1, kP), Real(2, kP) - sqrt(Real(2, kP)), tol()));
  Real r = rho_eval(WeightSpec::canonical(2), 10000, kP) * pow(Real(10000, kP), 4L);
  CHECK(close(r, Real(Q(9, 16), kP), rel(1e-3)));
  CHECK(rho_eval(WeightSpec::canonical(2), 2, kP) > 0L);
  CHECK(rho_eval(WeightSpec::birman_classical(3), 4, kP) == Real(Q(225, 64 * 4096), kP));
}

TEST_CASE("family coincidences") {
  for (long n = 1; n <= 1000; ++n) {
    CHECK(close(rho_eval(WeightSpec::canonical(1), n, kP), rho_eval(WeightSpec::kpp(), n, kP), tol()));
  }
  for (long ell = 2; ell <= 4; ++ell) {
    for (long n = ell; n <= 100; ++n) {
      CHECK(close(rho_eval(WeightSpec::q_family(ell, Q(1, 2)), n, kP),
                  rho_eval(WeightSpec::canonical(ell), n, kP), tol()));
    }
  }
  // m = 0 shift is the q family itself.
  for (long n = 2; n <= 50; ++n) {
    CHECK(close(rho_eval(WeightSpec::shifted(2, 0, Q(1, 2)), n, kP),
                rho_eval(WeightSpec::canonical(2), n, kP), tol()));
  }
}

TEST_CASE("q = 1 gives the zero weight and q in (1/2,1) is dominated") {
  for (long ell = 2; ell <= 3; ++ell) {
    auto g = q_family_sequence(ell, Q(1), kP);
    for (long n = ell; n <= 200; ++n) CHECK(abs(rho_from_sequence(g, ell, n)) < pow2(-90, kP));
    for (auto q : {Q(3, 5), Q(3, 4), Q(9, 10)}) {
      for (long n = ell; n <= 500; n += (n < 60 ? 1 : 37)) {
        CHECK(rho_eval(WeightSpec::q_family(ell, q), n, kP) < rho_eval(WeightSpec::canonical(ell), n, kP));
      }
    }
  }
}

TEST_CASE("scaled limit of the q family") {
  const long n = 10000;
  for (auto [ell, q] : {std::pair{1L, Q(1, 4)}, std::pair{2L, Q(1, 2)}, std::pair{3L, Q(3, 4)},
                        std::pair{2L, Q(1, 3)}}) {
    Real scaled = rho_eval(WeightSpec::q_family(ell, q), n, kP) * pow(Real(n, kP), 2 * ell);
    Real limit(pochhammer(q, ell) * pochhammer(Q(1) - q, ell), kP);
    CHECK(close(scaled, limit, rel(1e-2)));
  }
}

TEST_CASE("series against the direct quotient") {
  Real direct = rho_eval(WeightSpec::canonical(2), 10, kP);
  Real s = rho_series(2, 10, 120, kP).value;
  CHECK(close(s, direct, pow2(-95, kP)));
  for (long n : {3L, 7L, 20L}) {
    Real k4 = rho_series(2, n, 4, kP).value;
    Real expect = Real(Q(9, 16), kP) * Real(n, kP) / Real(n - 1, kP) / pow(Real(n, kP), 4L);
    CHECK(close(k4, expect, tol()));
  }
  CHECK(close(rho_series(1, 5, 2, kP).value, Real(Q(1, 100), kP), tol()));
  for (long ell = 2; ell <= 4; ++ell) {
    long n = ell + 2;
    Real direct_l = rho_eval(WeightSpec::canonical(ell), n, kP);
    Real prev(0, kP);
    Real prev_err = Real::infinity(kP);
    for (long K = 2 * ell; K <= 2 * ell + 60; K += 6) {
      Real v = rho_series(ell, n, K, kP).value;
      CHECK(v >= prev);
      CHECK(v <= direct_l * Real::from_double(1 + 1e-30, kP));
      Real err = abs(v - direct_l);
      CHECK(err <= prev_err);
      prev = v;
      prev_err = err;
    }
  }
  CHECK(rho_series(3, 3, 10, kP).boundary_warning);
  CHECK(!rho_series(3, 4, 10, kP).boundary_warning);
  CHECK_THROWS_AS(rho_series(3, 2, 10, kP), std::invalid_argument);
}

TEST_CASE("expansion tables") {
  auto t2 = rho_expansion_table(2, 6);
  REQUIRE(t2.coefficients.size() == 3);
  CHECK(t2.coefficients[0] == std::pair{4L, Q(9, 16)});
  CHECK(t2.coefficients[1] == std::pair{5L, Q(3, 2)});
  CHECK(t2.coefficients[2] == std::pair{6L, Q(297, 128)});
  auto t3 = rho_expansion_table(3, 8);
  CHECK(t3.coefficients[0].second == Q(225, 64));
  CHECK(t3.coefficients[1].second == Q(405, 16));
  CHECK(t3.coefficients[2].second == Q(114975, 1024));
  auto t4 = rho_expansion_table(4, 10);
  CHECK(t4.coefficients[0].second == Q(11025, 256));
  CHECK(t4.coefficients[1].second == Q(4725, 8));
  CHECK(t4.coefficients[2].second == Q(4879665, 1024));
  auto t5 = rho_expansion_table(5, 12);
  CHECK(t5.coefficients[0].second == Q(893025, 1024));
  CHECK(t5.coefficients[1].second == Q(2480625, 128));
  CHECK(t5.coefficients[2].second == Q(4023077625L, 16384));
  for (long ell = 2; ell <= 5; ++ell) {
    for (const auto& [m, c] : rho_expansion_table(ell, 2 * ell + 20).coefficients) CHECK(c.sign() > 0);
  }
}

TEST_CASE("expansion table matches the weight asymptotically") {
  // Truncated expansion error is O(n^-(2ell+3)).
  for (long ell = 2; ell <= 3; ++ell) {
    auto t = rho_expansion_table(ell, 2 * ell + 2);
    const long n = 2000;
    Real sum(0, kP);
    for (const auto& [m, c] : t.coefficients) sum += Real(c, kP) / pow(Real(n, kP), m);
    Real direct = rho_eval(WeightSpec::canonical(ell), n, kP);
    CHECK(abs(sum - direct) / direct < rel(1e-5));
  }
}

TEST_CASE("monomial series") {
  Real direct = Real(-1, kP) * (pow(Real(5, kP), Q(3, 2)) - pow(Real(6, kP), Q(3, 2)) * 2L +
                                pow(Real(7, kP), Q(3, 2)));
  CHECK(close(monomial_lap_series(Q(3, 2), 1, 6, 150, kP), direct, pow2(-90, kP)));
  for (long ell = 1; ell <= 4; ++ell) {
    for (long nu = 0; nu < 2 * ell; ++nu) CHECK(monomial_lap_series(Q(nu), ell, ell + 3, 40, kP).is_zero());
  }
  Real prev(0, kP);
  for (long K = 4; K <= 40; K += 2) {
    Real v = monomial_lap_series(Q(3, 2), 2, 2, K, kP);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("lower bound chain") {
  auto c = lower_bound_chain(2, 2, kP);
  CHECK(c.ordered());
  CHECK(c.classical > 0L);
  CHECK(lower_bound_chain(4, 100, kP).ordered());
  auto far = lower_bound_chain(2, 1000000, kP);
  CHECK(far.ordered());
  CHECK(close(far.rho, far.classical, rel(1e-4)));
  CHECK(close(far.mid, far.classical, rel(1e-4)));
  for (long ell = 2; ell <= 5; ++ell) {
    for (long n = ell; n <= 300; ++n) CHECK(lower_bound_chain(ell, n, kP).ordered());
  }
}

TEST_CASE("hardy weights") {
  for (long n = 1; n <= 100000; n += (n < 1000 ? 1 : 997)) {
    Real bound = Real(1, kP) / (Real(4, kP) * Real(n, kP) * Real(n, kP));
    CHECK(rho_eval(WeightSpec::kpp(), n, kP) > bound);
  }
  const long n = 10000;
  Real n4 = pow(Real(n, kP), 4L);
  CHECK(close(rho_eval(WeightSpec::gks(), n, kP) * n4, Real(Q(9, 16), kP), rel(1e-2)));
  CHECK(close(rho_eval(WeightSpec::hy(20), n, kP) * n4, Real(Q(9, 16), kP), rel(1e-2)));
  // n^-5 coefficient of the HY weight by Richardson extrapolation.
  auto f = [](long m) {
    Real x = rho_eval(WeightSpec::hy(20), m, kP) * pow(Real(m, kP), 4L) - Real(Q(9, 16), kP);
    return x * Real(m, kP);
  };
  Real c5 = f(2 * n) * 2L - f(n);
  CHECK(close(c5, Real(Q(15, 16), kP), rel(5e-2)));
  CHECK(hy_truncation_bound(50, 20, kP) > 0L);
  CHECK(hy_truncation_bound(50, 30, kP) < hy_truncation_bound(50, 20, kP));
  CHECK(close(rho_eval(WeightSpec::half_power_monomial(2), 30, kP), lower_bound_chain(2, 30, kP).mid, tol()));
}

TEST_CASE("polyharmonic family") {
  auto s = WeightSpec::polyharmonic(2, {Q(1)});
  CHECK(rho_eval(s, 5, kP) > 0L);
  CHECK(close(rho_eval(s, 7, kP), rho_eval(WeightSpec::alpha2(Q(1)), 7, kP), tol()));
}
