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

#include <vector>

#include "hrb/rational.hpp"

namespace hrb {

// Signed Stirling numbers of the first kind:
// x(x-1)...(x-n+1) = sum_k s(n,k) x^k.
Rational stirling_first(long n, long k);
// Stirling numbers of the second kind.
Rational stirling_second(long n, long k);
// Row s(n, 0..n).
std::vector<Rational> stirling_first_row(long n);

// Generalized binomial nu(nu-1)...(nu-m+1)/m!; zero for m < 0.
Rational binom_rational(const Rational& nu, long m);
// Rising factorial (nu)_n.
Rational pochhammer(const Rational& nu, long n);
Rational factorial(long n);

// X_m = sum_{j=-ell}^{ell} C(2 ell, ell + j) (-1)^j j^m, with X_0 = 0.
Rational x_coeff(long m, long ell);

// Coefficient r_k in the large-n expansion of the canonical weight.
// Throws std::invalid_argument for k < 2 ell.
Rational r_coeff(long k, long ell);

// r_k for k in [2 ell, k_max]; entry i holds r_{2 ell + i}.
std::vector<Rational> r_coeff_table(long ell, long k_max);

// Closed forms for the two leading coefficients.
Rational r_leading_closed_form(long ell);      // ((1/2)_ell)^2
Rational r_subleading_closed_form(long ell);   // ell(ell-1)(2ell+1)/(2(2ell-1)) ((1/2)_ell)^2
// r_k for ell = 1: zero for odd k, and C(2k,k) / (2^(2k-1) (2k-1)) for even k.
Rational r_ell1_closed_form(long k);

struct ConjectureEntry {
  long k = 0;
  Rational scaled;  // 4^(k - ell) r_k
  bool is_integer = false;
};

// Evaluates 4^(k-ell) r_k for k in [2 ell, k_max]. All entries are
// reported; a non-integer entry is a counterexample.
std::vector<ConjectureEntry> r_conjecture_check(long ell, long k_max);

}  // namespace hrb
