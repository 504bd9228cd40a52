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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hrb/lattice.hpp"
#include "hrb/rational.hpp"
#include "hrb/real.hpp"

namespace hrb {

enum class Family {
  canonical,
  q_family,
  shifted,
  alpha2,
  polyharmonic,
  kpp,
  gks,
  hy,
  birman_classical,
  half_power_monomial,
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

// Raised when the polyharmonic product under the square root is negative.
class NegativeRadicand : public std::domain_error {
 public:
  NegativeRadicand(long n, const std::string& what) : std::domain_error(what), n_(n) {}
  long n() const { return n_; }

 private:
  long n_;
};

struct WeightSpec {
  Family family = Family::canonical;
  long ell = 1;
  long m = 0;
  Rational q{1, 2};
  std::vector<Rational> alphas;
  long hy_terms = 0;

  static WeightSpec canonical(long ell);
  static WeightSpec q_family(long ell, Rational q);
  static WeightSpec shifted(long ell, long m, Rational q);
  static WeightSpec alpha2(Rational alpha);
  static WeightSpec polyharmonic(long ell, std::vector<Rational> alphas);
  static WeightSpec kpp();
  static WeightSpec gks();
  static WeightSpec hy(long K);
  static WeightSpec birman_classical(long ell);
  static WeightSpec half_power_monomial(long ell);

  // Throws std::invalid_argument when the invariants fail.
  void validate() const;
  // True when the weight is (-Δ)^ell g / g for an explicit g.
  bool has_parameter_sequence() const;
  std::string describe() const;
};

// n^q (n-1)(n-2)...(n-ell+1) for n >= 0 and 0 for n < 0, with no range check on q.
LatticeSeq q_family_sequence(long ell, const Rational& q, Precision p);

// The parameter sequence g of a weight family.
LatticeSeq g_param(const WeightSpec& spec, Precision p);

// ρ_n of the family. Differences are formed with guard bits and the result
// rounded to p. Throws for n < ell or g(n) = 0.
Real rho_eval(const WeightSpec& spec, long n, Precision p);

// (-Δ)^ell g_n / g_n at the precision of g, for any sequence.
Real rho_from_sequence(const LatticeSeq& g, long ell, long n);

struct SeriesValue {
  Real value;
  bool boundary_warning = false;  // n == ell, where the series converges slowly
};

// n^(ell-1)/((n-1)...(n-ell+1)) * sum_{k=2ell}^{K} r_k / n^k
SeriesValue rho_series(long ell, long n, long K, Precision p);

struct ExpansionTable {
  long ell = 0;
  std::vector<std::pair<long, Rational>> coefficients;  // (power of 1/n, value)
};

// Coefficients of 1/n^m for m in [2ell, max_power] in the expansion of ρ^(ell).
ExpansionTable rho_expansion_table(long ell, long max_power);

// sum_{m=2ell}^{K} C(nu,m) X_m n^(nu-m)
Real monomial_lap_series(const Rational& nu, long ell, long n, long K, Precision p);

// First omitted term of the hy(K) series times the geometric tail factor.
Real hy_truncation_bound(long n, long K, Precision p);

struct ChainReport {
  long ell = 0;
  long n = 0;
  Real rho;        // canonical weight
  Real mid;        // (-Δ)^ell n^(ell-1/2) / n^(ell-1/2)
  Real classical;  // ((1/2)_ell)^2 / n^(2ell)
  bool rho_gt_mid = false;
  bool mid_gt_classical = false;
  bool ordered() const { return rho_gt_mid && mid_gt_classical; }
};

ChainReport lower_bound_chain(long ell, long n, Precision p);

// Guard bits used when differencing a sequence of growth n^ell at index n.
long difference_guard_bits(long ell, long n);

}  // namespace hrb
