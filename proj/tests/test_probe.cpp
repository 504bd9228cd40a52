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

#include <cmath>

#include "hrb/cutoff.hpp"
#include "hrb/verify.hpp"
#include "support.hpp"

using namespace hrb;

namespace {

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Direct evaluation through identity_check on the cut-off vector.
double direct_criticality(long ell, long N) {
  Precision p{128};
  Precision work = widened(p, difference_guard_bits(ell, N * N + 3 * ell));
  LatticeSeq g = g_param(WeightSpec::canonical(ell), work);
  CutoffSpec c{N, CutoffShape::criticality};
  std::vector<Real> vals;
  for (long n = ell; n <= c.support_end(); ++n) vals.push_back(cutoff_value(c, n, work) * g(n));
  FinSuppSeq u(ell, std::move(vals), work);
  Real total(work);
  for (long k = 0; k < ell; ++k) total += remainder(g, u, ell, k);
  return total.to_double();
}

}  // namespace

TEST_CASE("criticality probe matches an independent remainder evaluation") {
  for (long ell = 1; ell <= 3; ++ell) {
    for (long N : {ell + 2, 8L, 15L}) {
      auto rows = criticality_probe(ell, {N});
      REQUIRE(rows.size() == 1);
      CHECK(rel_close(rows[0].total_remainder, direct_criticality(ell, N), 1e-12));
      CHECK(rel_close(rows[0].scaled, rows[0].total_remainder * std::log(static_cast<double>(N)), 1e-14));
      REQUIRE(static_cast<long>(rows[0].per_k.size()) == ell);
    }
  }
}

TEST_CASE("jet route agrees with the MPFR route") {
  for (long ell = 1; ell <= 3; ++ell) {
    ProbeOptions jet;
    jet.mpfr_limit = 1000;
    ProbeOptions full;
    full.mpfr_limit = 1000000;
    auto a = criticality_probe(ell, {100}, jet);
    auto b = criticality_probe(ell, {100}, full);
    CHECK(rel_close(a[0].total_remainder, b[0].total_remainder, 1e-9));
    for (long k = 0; k < ell; ++k) {
      CHECK(rel_close(a[0].per_k[static_cast<std::size_t>(k)], b[0].per_k[static_cast<std::size_t>(k)], 1e-8));
    }
    auto c = optimality_probe(ell, ell, {12}, jet);
    auto d = optimality_probe(ell, ell, {12}, full);
    CHECK(rel_close(c[0].remainder_sum, d[0].remainder_sum, 1e-9));
    CHECK(rel_close(c[0].weight_sum, d[0].weight_sum, 1e-9));
  }
  ProbeOptions bad;
  bad.mpfr_limit = 10;
  CHECK_THROWS_AS(criticality_probe(2, {10}, bad), std::invalid_argument);
}

TEST_CASE("criticality remainder decreases") {
  auto rows = criticality_probe(1, {10, 100, 1000});
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].total_remainder < rows[0].total_remainder);
  CHECK(rows[2].total_remainder < rows[1].total_remainder);
  for (const auto& r : rows) CHECK(r.total_remainder > 0);
  CHECK(rows[2].scaled / rows[1].scaled < 3);
  CHECK(rows[1].scaled / rows[2].scaled < 3);
  CHECK_THROWS_AS(criticality_probe(2, {3}), std::invalid_argument);
}

TEST_CASE("optimality ratio decreases") {
  for (long ell = 1; ell <= 3; ++ell) {
    auto rows = optimality_probe(ell, ell, {10, 30, 100});
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].ratio < rows[0].ratio);
    CHECK(rows[2].ratio < rows[1].ratio);
    for (const auto& r : rows) {
      CHECK(r.weight_sum > 0);
      CHECK(rel_close(r.ratio, r.remainder_sum / r.weight_sum, 1e-14));
    }
    if (ell == 2) CHECK(rows[2].weight_sum >= 0.5);
  }
}

TEST_CASE("degenerate optimality window") {
  for (long ell = 1; ell <= 3; ++ell) {
    auto rows = optimality_probe(ell, ell, {ell});
    REQUIRE(rows.size() == 1);
    CHECK(std::isfinite(rows[0].remainder_sum));
    CHECK(rows[0].remainder_sum >= 0);
  }
  CHECK_THROWS_AS(optimality_probe(2, 5, {4}), std::invalid_argument);
}
