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

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hrb {

namespace {

void require_nonneg(long n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

void require_ell(long ell) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
}

mpz_class pow_si(long base, long e) {
  mpz_class r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

std::vector<Rational> stirling_first_row(long n) {
  require_nonneg(n, "n");
  std::vector<mpz_class> row{1};
  for (long m = 0; m < n; ++m) {
    std::vector<mpz_class> next(row.size() + 1);
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (k >= 1) next[k] += row[k - 1];
      if (k < row.size()) next[k] -= m * row[k];
    }
    row = std::move(next);
  }
  std::vector<Rational> out;
  out.reserve(row.size());
  for (const auto& z : row) out.emplace_back(z);
  return out;
}

Rational stirling_first(long n, long k) {
  require_nonneg(n, "n");
  if (k < 0 || k > n) return Rational(0);
  return stirling_first_row(n)[static_cast<std::size_t>(k)];
}

Rational stirling_second(long n, long k) {
  require_nonneg(n, "n");
  if (k < 0 || k > n) return Rational(0);
  std::vector<mpz_class> row{1};
  for (long m = 0; m < n; ++m) {
    std::vector<mpz_class> next(row.size() + 1);
    for (std::size_t j = 1; j < next.size(); ++j) {
      next[j] = row[j - 1];
      if (j < row.size()) next[j] += static_cast<unsigned long>(j) * row[j];
    }
    row = std::move(next);
  }
  return Rational(row[static_cast<std::size_t>(k)]);
}

Rational binom_rational(const Rational& nu, long m) {
  if (m < 0) return Rational(0);
  Rational r(1);
  for (long i = 0; i < m; ++i) {
    r *= (nu - Rational(i));
    r /= Rational(i + 1);
  }
  return r;
}

Rational pochhammer(const Rational& nu, long n) {
  require_nonneg(n, "n");
  Rational r(1);
  for (long i = 0; i < n; ++i) r *= (nu + Rational(i));
  return r;
}

Rational factorial(long n) {
  require_nonneg(n, "n");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational x_coeff(long m, long ell) {
  require_ell(ell);
  require_nonneg(m, "m");
  if (m == 0 || m % 2 == 1) return Rational(0);
  mpz_class sum = 0;
  for (long j = 1; j <= ell; ++j) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(2 * ell), static_cast<unsigned long>(ell + j));
    mpz_class term = c * pow_si(j, m);
    if (j % 2 == 1) {
      sum -= 2 * term;
    } else {
      sum += 2 * term;
    }
  }
  return Rational(sum);
}

namespace {

Rational r_coeff_with_row(long k, long ell, const std::vector<Rational>& srow) {
  Rational sum(0);
  const Rational half(1, 2);
  for (long m = std::max(2 * ell, k - ell + 1); m <= k; ++m) {
    long j = ell + m - k;
    if (j < 1 || j > ell) continue;
    Rational x = x_coeff(m, ell);
    if (x.sign() == 0) continue;
    sum += binom_rational(Rational(ell + m - k) - half, m) * srow[static_cast<std::size_t>(j)] * x;
  }
  return sum;
}

}  // namespace

Rational r_coeff(long k, long ell) {
  require_ell(ell);
  if (k < 2 * ell) {
    throw std::invalid_argument("r_coeff requires k >= 2 ell (k=" + std::to_string(k) +
                                ", ell=" + std::to_string(ell) + ")");
  }
  return r_coeff_with_row(k, ell, stirling_first_row(ell));
}

std::vector<Rational> r_coeff_table(long ell, long k_max) {
  require_ell(ell);
  std::vector<Rational> out;
  if (k_max < 2 * ell) return out;
  auto srow = stirling_first_row(ell);
  for (long k = 2 * ell; k <= k_max; ++k) out.push_back(r_coeff_with_row(k, ell, srow));
  return out;
}

Rational r_leading_closed_form(long ell) {
  require_ell(ell);
  Rational p = pochhammer(Rational(1, 2), ell);
  return p * p;
}

Rational r_subleading_closed_form(long ell) {
  require_ell(ell);
  return Rational(ell * (ell - 1) * (2 * ell + 1), 2 * (2 * ell - 1)) * r_leading_closed_form(ell);
}

Rational r_ell1_closed_form(long k) {
  if (k < 2) throw std::invalid_argument("r_ell1_closed_form requires k >= 2");
  if (k % 2 == 1) return Rational(0);
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k));
  return Rational(c, mpz_class(pow_si(2, 2 * k - 1) * (2 * k - 1)));
}

std::vector<ConjectureEntry> r_conjecture_check(long ell, long k_max) {
  auto table = r_coeff_table(ell, k_max);
  std::vector<ConjectureEntry> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    long k = 2 * ell + static_cast<long>(i);
    ConjectureEntry e;
    e.k = k;
    e.scaled = table[i] * Rational(pow_si(4, k - ell));
    e.is_integer = e.scaled.is_integer();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace hrb
