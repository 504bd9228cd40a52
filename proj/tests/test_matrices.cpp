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

#include <sstream>

#include "hrb/exactmath.hpp"
#include "hrb/matrices.hpp"
#include "support.hpp"

using namespace hrb;
using hrb::testing::close;
using hrb::testing::pow2;
using hrb::testing::Q;

namespace {

constexpr Precision kP{128};

SequenceFactory canonical(long ell) { return family_sequence(WeightSpec::canonical(ell)); }

}  // namespace

TEST_CASE("toeplitz powers") {
  auto t3 = toeplitz_power(3, 12);
  std::vector<long long> row0{20, -15, 6, -1, 0, 0, 0, 0};
  for (long j = 0; j < 8; ++j) CHECK(t3(0, j) == row0[static_cast<std::size_t>(j)]);
  auto t1 = toeplitz_power(1, 6);
  for (long i = 0; i < 6; ++i) {
    CHECK(t1(i, i) == 2);
    if (i + 1 < 6) CHECK(t1(i, i + 1) == -1);
    if (i > 0) CHECK(t1(i, i - 1) == -1);
  }
  auto t2 = toeplitz_power(2, 9);
  std::vector<long long> row4{0, 0, 1, -4, 6, -4, 1, 0, 0};
  for (long j = 0; j < 9; ++j) CHECK(t2(4, j) == row4[static_cast<std::size_t>(j)]);
  CHECK(t3.lower_bw() == 3);
  CHECK(t3.upper_bw() == 3);
  CHECK(t3(0, 5) == 0);
  CHECK_THROWS_AS(toeplitz_power(3, 6), std::invalid_argument);
}

TEST_CASE("toeplitz power is the polarized quadratic form") {
  for (long ell = 1; ell <= 4; ++ell) {
    const long size = 6 * ell;
    auto t = toeplitz_power(ell, size);
    for (long i = 0; i < size; ++i) {
      auto col = neg_lap_pow(FinSuppSeq::delta(i + ell, kP), ell);
      for (long j = 0; j < size; ++j) {
        CHECK(col(j + ell) == Real(t(j, i), kP));
        CHECK(t(i, j) == t(j, i));
      }
    }
  }
}

TEST_CASE("dirichlet power windows") {
  auto d = dirichlet_power(3, 16);
  auto t = toeplitz_power(3, 16);
  std::vector<std::vector<long long>> shown{
      {14, -14, 6, -1, 0, 0, 0, 0},  {-14, 20, -15, 6, -1, 0, 0, 0}, {6, -15, 20, -15, 6, -1, 0, 0},
      {-1, 6, -15, 20, -15, 6, -1, 0}, {0, -1, 6, -15, 20, -15, 6, -1}, {0, 0, -1, 6, -15, 20, -15, 6},
      {0, 0, 0, -1, 6, -15, 20, -15},  {0, 0, 0, 0, -1, 6, -15, 20}};
  for (long i = 0; i < 8; ++i) {
    for (long j = 0; j < 8; ++j) {
      long long want = shown[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      CHECK(d(i, j) == want);
      if (i >= 2 || j >= 2) CHECK(t(i, j) == want);
    }
  }
  CHECK(t(0, 0) == 20);
  CHECK(t(1, 0) == -15);
  for (long i = 2; i < 10; ++i) CHECK(d(i, i) == 20);
  auto d1 = dirichlet_power(1, 7);
  auto t1 = toeplitz_power(1, 7);
  for (long i = 0; i < 7; ++i)
    for (long j = 0; j < 7; ++j) CHECK(d1(i, j) == t1(i, j));
}

TEST_CASE("dirichlet and toeplitz agree outside the corner") {
  for (long ell = 1; ell <= 6; ++ell) {
    const long size = 8 * ell;
    auto d = dirichlet_power(ell, size);
    auto t = toeplitz_power(ell, size);
    for (long i = 0; i < size - 2 * ell; ++i) {
      for (long j = 0; j < size - 2 * ell; ++j) {
        if (i < ell - 1 && j < ell - 1) continue;
        CHECK(d(i, j) == t(i, j));
      }
    }
  }
}

TEST_CASE("corner defect") {
  auto c3 = corner_defect(3);
  REQUIRE(c3.size() == 2);
  CHECK(c3[0] == std::vector<long long>{-6, 1});
  CHECK(c3[1] == std::vector<long long>{1, 0});
  CHECK(corner_defect(1).empty());
  auto t2 = dirichlet_power(2, 5);
  CHECK(corner_defect(2) == std::vector<std::vector<long long>>{{t2(0, 0) - 6}});
  CHECK(corner_defect(2)[0][0] == -1);
}

TEST_CASE("band matrix storage") {
  IntBandMatrix m(5, 1, 2, 0);
  m.at(2, 4) = 7;
  m.at(3, 2) = -3;
  CHECK(m(2, 4) == 7);
  CHECK(m(3, 2) == -3);
  CHECK(m(4, 0) == 0);
  CHECK_THROWS_AS(m.at(4, 0), std::out_of_range);
  CHECK_THROWS_AS(m.at(0, 3), std::out_of_range);
  auto sq = multiply(toeplitz_power(1, 10), toeplitz_power(1, 10));
  auto t2 = toeplitz_power(2, 10);
  for (long i = 1; i < 9; ++i)
    for (long j = 1; j < 9; ++j) CHECK(sq(i, j) == t2(i, j));
  std::ostringstream os;
  write_csv(os, toeplitz_power(1, 3));
  CHECK(os.str() == "2,-1,0\n-1,2,-1\n0,-1,2\n");
}

TEST_CASE("remainder factors") {
  auto g = g_param(WeightSpec::canonical(1), kP);
  auto r = remainder_factor(g, 1, 0, 10);
  CHECK(r.lower_bw() == 0);
  CHECK(r.upper_bw() == 1);
  for (long i = 0; i < 10; ++i) {
    long n = i + 1;
    CHECK(close(r(i, i), -sqrt(g(n + 1) / g(n)), pow2(-120, kP)));
    if (i + 1 < 10) CHECK(close(r(i, i + 1), sqrt(g(n) / g(n + 1)), pow2(-120, kP)));
  }
  for (long ell = 1; ell <= 4; ++ell) {
    auto gl = g_param(WeightSpec::canonical(ell), kP);
    const long size = 30;
    for (long k = 0; k < ell; ++k) {
      auto f = remainder_factor(gl, ell, k, size);
      CHECK(f.lower_bw() == k);
      CHECK(f.upper_bw() == 1);
      for (long i = 0; i < size; ++i) {
        for (long j = 0; j < size; ++j) {
          if (j - i > 1 || i - j > k) CHECK(f(i, j).is_zero());
        }
      }
      // Diagonals -k..1 each carry nonzero entries.
      for (long dgl = -k; dgl <= 1; ++dgl) CHECK(!f(size / 2, size / 2 + dgl).is_zero());
      for (long i = k; i < size - 1; ++i) {
        Real acc(0, kP);
        Real scale(0, kP);
        for (long j = i - k; j <= i + 1; ++j) {
          Real term = f(i, j) * gl(j + ell);
          acc += term;
          scale = max(scale, abs(term));
        }
        CHECK(abs(acc) <= scale * pow2(-110, kP));
      }
    }
  }
}

TEST_CASE("factorization identity") {
  for (long ell = 1; ell <= 4; ++ell) {
    auto rep = factorization_check(canonical(ell), ell, 64, kP);
    CHECK(rep.max_residual <= pow2(-100, kP));
    CHECK(rep.first == ell);
    CHECK(rep.last == 64 - 2 * ell - 1);
    auto hi = factorization_check(canonical(ell), ell, 64, Precision{256});
    CHECK(hi.max_residual.rounded_to(kP) <= rep.max_residual * pow2(-60, kP));
  }
  auto direct = factorization_check(g_param(WeightSpec::canonical(3), Precision{256}), 3, 64);
  CHECK(direct.max_residual <= pow2(-100, Precision{256}));
}

TEST_CASE("omitting a remainder is detected") {
  for (long ell = 1; ell <= 4; ++ell) {
    for (long k = 0; k < ell; ++k) {
      FactorizationOptions opt;
      opt.omit_k = k;
      auto rep = factorization_check(canonical(ell), ell, 64, kP, opt);
      CHECK(rep.max_residual > Real::from_double(1e-6, kP));
    }
  }
}
