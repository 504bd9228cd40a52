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

#include <random>

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

FinSuppSeq random_seq(std::mt19937_64& rng, long lo, long len, Precision p = kP) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Real> v;
  for (long i = 0; i < len; ++i) v.push_back(Real::from_double(d(rng), p));
  return FinSuppSeq(lo, std::move(v), p);
}

bool same(const FinSuppSeq& a, const FinSuppSeq& b, long lo, long hi, const Real& tol) {
  for (long n = lo; n <= hi; ++n) {
    if (abs(a(n) - b(n)) > tol) return false;
  }
  return true;
}

bool same(const LatticeSeq& a, const LatticeSeq& b, long lo, long hi, const Real& tol) {
  for (long n = lo; n <= hi; ++n) {
    if (abs(a(n) - b(n)) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("shift") {
  auto d3 = FinSuppSeq::delta(3, kP);
  auto s = shift(d3, 1);
  for (long n = -2; n < 8; ++n) CHECK(s(n) == Real(n == 2 ? 1 : 0, kP));
  std::mt19937_64 rng(1);
  auto u = random_seq(rng, 4, 9);
  CHECK(same(shift(shift(u, 1), -1), u, 0, 20, Real(0, kP)));
  auto g = g_param(WeightSpec::canonical(2), kP);
  CHECK(same(shift(g, 0), g, -3, 40, Real(0, kP)));
  CHECK(shift(g, 3).support_floor() == g.support_floor() - 3);
}

TEST_CASE("first order operators") {
  auto d1 = FinSuppSeq::delta(1, kP);
  auto gd = grad(d1);
  for (long n = -1; n < 5; ++n) CHECK(gd(n) == Real(n == 1 ? 1 : (n == 2 ? -1 : 0), kP));
  auto l = lap(d1);
  CHECK(l(0) == 1L);
  CHECK(l(1) == -2L);
  CHECK(l(2) == 1L);
  auto m = midop(FinSuppSeq::delta(2, kP));
  CHECK(m(1) == Real(Q(1, 2), kP));
  CHECK(m(2) == Real(Q(1, 2), kP));
}

TEST_CASE("commutation and shift relations on random sequences") {
  std::mt19937_64 rng(11);
  Real zero(0, kP);
  for (int t = 0; t < 50; ++t) {
    auto u = random_seq(rng, 1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 12));
    long lo = u.offset() - 3;
    long hi = u.end() + 3;
    CHECK(same(grad(divg(u)), lap(u), lo, hi, pow2(-120, kP)));
    CHECK(same(divg(grad(u)), lap(u), lo, hi, pow2(-120, kP)));
    CHECK(same(divg(u), shift(grad(u), 1), lo, hi, zero));
    CHECK(same(divg(u), grad(shift(u, 1)), lo, hi, zero));
  }
}

TEST_CASE("powers and half powers") {
  for (long ell = 1; ell <= 6; ++ell) {
    auto v = neg_lap_pow(FinSuppSeq::delta(ell, kP), ell);
    CHECK(v(ell) == Real(binom_rational(Q(2 * ell), ell), kP));
    for (long j = -ell; j <= ell; ++j) {
      Rational b = binom_rational(Q(2 * ell), ell + j);
      if (j % 2 != 0) b = -b;
      CHECK(v(ell + j) == Real(b, kP));
    }
  }
  std::mt19937_64 rng(5);
  auto u = random_seq(rng, 3, 10);
  CHECK(same(half_power(u, 2), neg_lap_pow(u, 1), 0, 20, Real(0, kP)));
  CHECK(same(half_power(u, 3), grad(neg_lap_pow(u, 1)), 0, 20, Real(0, kP)));
  CHECK(same(half_power(u, 0), u, 0, 20, Real(0, kP)));
  auto lu = LatticeSeq([](long n) { return Real(n * n, kP); }, 0, kP);
  auto d2 = divg_pow(lu, 2);
  for (long n = 1; n < 10; ++n) CHECK(d2(n) == 2L);
}

TEST_CASE("quadratic form examples") {
  CHECK(quad_form(FinSuppSeq::delta(1, kP), 1) == 2L);
  CHECK(quad_form(FinSuppSeq::delta(3, kP), 3) == 20L);
  CHECK(quad_form(FinSuppSeq(4, {Real(0, kP), Real(0, kP)}, kP), 2) == 0L);
  CHECK(quad_form(FinSuppSeq(5, {}, kP), 3) == 0L);
  CHECK_THROWS_AS(quad_form(FinSuppSeq::delta(1, kP), 2), std::invalid_argument);
}

TEST_CASE("parseval agreement and vanishing below ceil(ell/2)") {
  for (long p : {64L, 128L, 256L}) {
    Precision prec{p};
    Real tol = pow2(-(p - 16), prec);
    std::mt19937_64 rng(static_cast<std::uint64_t>(100 + p));
    for (long ell = 1; ell <= 6; ++ell) {
      for (int t = 0; t < 100; ++t) {
        auto u = random_seq(rng, ell + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 15), prec);
        Real q = quad_form(u, ell);
        auto w = neg_lap_pow(u, ell);
        Real pairing(prec);
        for (long n = u.offset(); n < u.end(); ++n) pairing += u(n) * w(n);
        CHECK(close(q, pairing, tol, 1));
        auto h = half_power(u, ell);
        for (long n = h.offset(); n < (ell + 1) / 2; ++n) CHECK(h(n).is_zero());
        CHECK(h.offset() >= u.offset() - (ell + 1) / 2);
        CHECK(h.end() <= u.end() + ell / 2 + 1);
      }
    }
  }
}

TEST_CASE("stencil composition") {
  auto s = DiffExpr::neg_lap_pow(2).stencil();
  CHECK(s.at(-2) == Q(1));
  CHECK(s.at(-1) == Q(-4));
  CHECK(s.at(0) == Q(6));
  CHECK(DiffExpr::neg_lap_pow(3).min_offset() == -3);
  CHECK(DiffExpr::neg_lap_pow(3).max_offset() == 3);
  CHECK(compose(atom_stencil(DiffExpr::Atom::divg), atom_stencil(DiffExpr::Atom::grad)) ==
        atom_stencil(DiffExpr::Atom::lap));
  auto e = DiffExpr::divg_pow(2).then_after(DiffExpr::neg_lap_pow(1));
  std::mt19937_64 rng(3);
  auto u = random_seq(rng, 2, 7);
  CHECK(same(e.apply(u), divg_pow(neg_lap_pow(u, 1), 2), -2, 15, pow2(-120, kP)));
}

TEST_CASE("leibniz formula") {
  std::mt19937_64 rng(17);
  for (long m = 0; m <= 6; ++m) {
    for (int t = 0; t < 10; ++t) {
      auto a = random_seq(rng, 1, 8).as_lattice();
      auto b = random_seq(rng, 2, 8).as_lattice();
      auto lhs = leibniz_div_pow(a, b, m);
      auto rhs = divg_pow(product(a, b), m);
      CHECK(same(lhs, rhs, -2, 14, pow2(-110, kP)));
    }
  }
  auto a = LatticeSeq([](long n) { return Real(n, kP); }, 0, kP);
  auto b = LatticeSeq([](long n) { return sqrt(Real(n, kP)); }, 0, kP);
  CHECK(same(leibniz_div_pow(a, b, 0), product(a, b), 0, 10, Real(0, kP)));
}

TEST_CASE("discrete mean value bounds") {
  auto sq = [](const Real& x) { return x * x; };
  auto two = [](const Real& x) { return Real(2, x.precision()); };
  for (long n = 1; n < 20; ++n) {
    auto r = discrete_mvt_bounds(sq, two, n, 2, kP);
    CHECK(r.value == 2L);
    CHECK(r.lower == 2L);
    CHECK(r.upper == 2L);
    CHECK(r.within);
  }
  auto rt = [](const Real& x) { return sqrt(x); };
  auto drt = [](const Real& x) { return Real(1, x.precision()) / (sqrt(x) * 2L); };
  auto r = discrete_mvt_bounds(rt, drt, 4, 1, kP);
  CHECK(r.value == sqrt(Real(5, kP)) - 2L);
  CHECK(r.upper == Real(Q(1, 4), kP));
  CHECK(r.within);
  auto x32 = [](const Real& x) { return pow(x, Q(3, 2)); };
  auto d3 = [](const Real& x) { return -Real(Q(3, 8), x.precision()) / pow(x, Q(3, 2)); };
  auto r3 = discrete_mvt_bounds(x32, d3, 2, 3, kP);
  CHECK(r3.within);
  CHECK(r3.lower == d3(Real(2, kP)));
  // x^(j-1/2) for j up to 4 over a range of n.
  for (long j = 1; j <= 4; ++j) {
    Rational nu = Q(2 * j - 1, 2);
    for (long N = 1; N <= 5; ++N) {
      Rational c = pochhammer(nu - Q(N - 1), N);
      auto f = [nu](const Real& x) { return pow(x, nu); };
      auto fN = [nu, N, c](const Real& x) { return Real(c, x.precision()) * pow(x, nu - Q(N)); };
      for (long n = 1; n <= 30; n += 7) CHECK(discrete_mvt_bounds(f, fN, n, N, kP).within);
    }
  }
}
