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

#include <array>
#include <optional>
#include <vector>

#include "hrb/cutoff.hpp"
#include "hrb/verify.hpp"

namespace hrb::detail {

inline constexpr int kMaxJetOrder = 40;

// Truncated Taylor series sum_i c[i] h^i with `order` coefficients.
struct Jet {
  int order = 1;
  std::array<double, kMaxJetOrder> c{};
};

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_recip(const Jet& a);
Jet jet_exp(const Jet& a);

struct ProbeTotals {
  std::vector<double> per_k;
  double weight_sum = 0;
  long mpfr_points = 0;
  long jet_points = 0;
};

// Remainders of u = ξ g^(ell) for a cutoff ξ. Indices below
// opt.mpfr_limit are summed in MPFR from tabulated values; above it each
// summand is a double-precision evaluation in which g and ξ are expanded in
// Taylor jets around n and the differences are applied to the jets with
// exact integer tables, so the cancellation in ∂^k u never happens
// numerically. Windows where ξ is constant are annihilated exactly.
class ProbeEngine {
 public:
  ProbeEngine(long ell, CutoffSpec cutoff, ProbeOptions opt);

  ProbeTotals run(bool with_weight) const;

  // Summand of the k-th remainder at n, MPFR route at opt.precision plus guard bits.
  double summand_mpfr(long k, long n) const;
  // Same summand from the jet route; nullopt where ξ is flat on the window
  // (the summand is then 0 up to e^-100).
  std::optional<std::vector<double>> summands_jet(long n) const;
  // ρ_n g_n^2 ξ_n^2 by each route.
  double weight_mpfr(long n) const;
  double weight_jet(long n) const;

 private:
  struct Window;
  Window classify(long n) const;
  void jet_summands(long n, const Window& w, double* out) const;
  void g_jet(double n, int order, double* gamma) const;
  int g_order(double n) const;

  long ell_;
  CutoffSpec cutoff_;
  ProbeOptions opt_;
  Precision work_;
  // D[m][s + ell][i] = sum_j C(m,j) (-1)^(m-j) (s+j)^i
  std::vector<std::vector<std::array<double, kMaxJetOrder>>> D_;
  // W[k][i][i'] = D^k_i(0) D^k_i'(1) - D^k_i(1) D^k_i'(0)
  std::vector<std::vector<std::array<double, kMaxJetOrder>>> W_;
  std::vector<double> stirling_;                     // s(ell, j), j = 0..ell
  std::vector<std::array<double, kMaxJetOrder>> half_binom_;  // C(j - 1/2, i)
};

}  // namespace hrb::detail
