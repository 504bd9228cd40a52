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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hrb/cutoff.hpp"
#include "hrb/errors.hpp"
#include "hrb/lattice.hpp"
#include "hrb/rational.hpp"
#include "hrb/real.hpp"
#include "hrb/weights.hpp"

namespace hrb {

// 2^-(p-20)
Real default_tolerance(Precision p);

struct IdentityReport {
  Real lhs;
  Real weight_term;
  std::vector<Real> remainders;  // indexed by k
  Real residual;                 // lhs - weight_term - sum(remainders)
  Real relative_residual;        // |residual| / max(1, lhs)
};

// Quantities entering the k-th remainder at indices n in [n_lo, n_hi]:
// a[i] = ∂^k g at n_lo + i (one extra entry at n_hi + 1) and
// w[i] = ((-Δ)^(ell-1-k) ∂^(k+1) g / ∂^(k+1) g) at n_lo + i, with w = 1 for k = ell-1.
struct RemainderCoefficients {
  long n_lo = 0;
  std::vector<Real> a;
  std::vector<Real> w;
};

// Throws AssumptionViolation (tag A1) when a divisor is not positive and
// (tag A2) when a weight w is negative.
RemainderCoefficients remainder_coefficients(const LatticeSeq& g, long ell, long k, long n_lo,
                                             long n_hi);

// Individual summands of the k-th remainder for n = ell-k, ell-k+1, ...
std::vector<Real> remainder_summands(const LatticeSeq& g, const FinSuppSeq& u, long ell, long k);
Real remainder(const LatticeSeq& g, const FinSuppSeq& u, long ell, long k);

IdentityReport identity_check(const LatticeSeq& g, const FinSuppSeq& u, long ell);

// Weighted ell = 1 identity. Mapped to IdentityReport with
// lhs = sum V |∇u|^2, weight_term = -sum (div(V∇g)/g) |u|^2 and one remainder.
IdentityReport weighted_hardy_check(const LatticeSeq& V, const LatticeSeq& g, const FinSuppSeq& u);

struct Violation {
  Assumption tag = Assumption::a1;
  long k = 0;
  long n = 0;
  Real value;
};

struct AssumptionReport {
  long ell = 0;
  long horizon = 0;
  Precision eval_precision;
  bool a1_ok = true;
  bool a2_ok = true;
  bool a2prime_ok = true;
  bool a3strict_ok = true;
  std::optional<Violation> first_violation;
  bool all_ok() const { return a1_ok && a2_ok && a2prime_ok && a3strict_ok; }
  // "verified up to N=..." or the first violation; never a proof claim.
  std::string label() const;
};

using SequenceFactory = std::function<LatticeSeq(Precision)>;

// Sequence factory of a weight family (g_param at the requested precision).
SequenceFactory family_sequence(const WeightSpec& spec);

// The quantity behind each assumption at (k, n):
// A1: ∂^k g_n; A2: (-Δ)^(ell-k) ∂^k g_n; A2': (-Δ)^ell g_n;
// A3'': (-Δ)^ell g_n for k = 0 and (-Δ)^(ell-1) ∂ g_n for k = 1.
Real assumption_quantity(const LatticeSeq& g, long ell, Assumption tag, long k, long n);

// Precision used by assumptions_check for horizon N at working precision p.
Precision assumption_precision(long ell, long N, Precision p);

// Checks every quantified inequality on indices up to N with g built at
// assumption_precision(ell, N, p).
AssumptionReport assumptions_check(const SequenceFactory& g, long ell, long N, Precision p);
// Same checks using g at its own precision.
AssumptionReport assumptions_check(const LatticeSeq& g, long ell, long N);

struct InequalityReport {
  Real lhs;
  Real rhs;
  Real margin;
};

InequalityReport inequality_check(const WeightSpec& spec, const FinSuppSeq& u);

// Random test vectors: std::mt19937_64 seeded with the 64-bit seed. Each
// vector draws a length L in [1, max_len] and a start in [ell, ell+max_len-L],
// then L entries 2 * (x >> 11) * 2^-53 - 1 in [-1, 1). Entries are doubles, so
// the same seed yields the same vector at every precision >= 53.
class TestVectorSource {
 public:
  explicit TestVectorSource(std::uint64_t seed) : rng_(seed) {}
  FinSuppSeq next(long ell, Precision p, long max_len = 15);
  double next_unit();  // [-1, 1)
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::mt19937_64 rng_;
};

struct ProbeOptions {
  Precision precision = kDefaultPrecision;
  // Indices below this use MPFR throughout; above it a double-precision
  // Taylor-jet evaluation of the smooth cutoff is used.
  long mpfr_limit = 20000;
};

struct CriticalityRow {
  long N = 0;
  std::vector<double> per_k;
  double total_remainder = 0;
  double scaled = 0;  // total_remainder * log N
};

struct OptimalityRow {
  long N = 0;
  std::vector<double> per_k;
  double remainder_sum = 0;
  double weight_sum = 0;
  double ratio = 0;
};

// u^N = ξ^N g^(ell) with the criticality cutoff; sums of all remainders.
std::vector<CriticalityRow> criticality_probe(long ell, const std::vector<long>& Ns,
                                              const ProbeOptions& opt = {});
// u^N = ξ^N g^(ell) with the plateau cutoff; remainder sum over weight sum.
std::vector<OptimalityRow> optimality_probe(long ell, long M, const std::vector<long>& Ns,
                                            const ProbeOptions& opt = {});

struct AttainabilityReport {
  long ell = 0;
  Rational q;
  long horizon = 0;
  Real lhs_partial;
  Real rhs_partial;
  Real gap;
};

// u = g^(ell)(q) cut off after the horizon. Rejects q outside (0, 1/2).
AttainabilityReport attainability_probe(long ell, const Rational& q, long horizon, Precision p);

// First n in [2, N_check] with Δ²g_n(α) < 0 for g = sqrt(n(n-1)(n-α)), if any.
std::optional<long> alpha_violation(const Rational& alpha, long n_check, Precision p);

struct AlphaRange {
  Rational lo;  // feasible, within tol of the lower boundary
  Rational hi;  // feasible, within tol of the upper boundary
  long lo_bisections = 0;
  long hi_bisections = 0;
};

AlphaRange alpha_admissible_range(long n_check, const Rational& tol, Precision p);

}  // namespace hrb
