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

#include "hrb/weights.hpp"

#include <array>
#include <bit>
#include <sstream>

#include "hrb/exactmath.hpp"

namespace hrb {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 10> kFamilyNames{{
    {Family::canonical, "canonical"},
    {Family::q_family, "q_family"},
    {Family::shifted, "shifted"},
    {Family::alpha2, "alpha2"},
    {Family::polyharmonic, "polyharmonic"},
    {Family::kpp, "kpp"},
    {Family::gks, "gks"},
    {Family::hy, "hy"},
    {Family::birman_classical, "birman_classical"},
    {Family::half_power_monomial, "half_power_monomial"},
}};

long bit_length(long n) {
  if (n <= 0) return 1;
  return static_cast<long>(std::bit_width(static_cast<unsigned long>(n)));
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_open_unit(const Rational& q) {
  require(q > Rational(0) && q < Rational(1), "q must lie in (0,1), got " + q.to_string());
}

// (x - 1)(x - 2)...(x - ell + 1) at integer x
Real falling_tail(long n, long ell, Precision p) {
  Real r(1, p);
  for (long j = 1; j < ell; ++j) r *= Real(n - j, p);
  return r;
}

// sum_j C(2ell, ell+j) (-1)^j f(n+j) for an integer-indexed f
template <class F>
Real neg_lap_stencil(long ell, long n, Precision p, F&& f) {
  Real acc(p);
  for (long j = -ell; j <= ell; ++j) {
    Real c(binom_rational(Rational(2 * ell), ell + j), p);
    Real t = f(n + j) * c;
    if ((j % 2 + 2) % 2 == 1) {
      acc -= t;
    } else {
      acc += t;
    }
  }
  return acc;
}

Rational exact_radicand(long n, long ell, const std::vector<Rational>& alphas) {
  Rational h(1);
  for (long j = 0; j < ell; ++j) h *= Rational(n - j);
  for (const auto& a : alphas) h *= Rational(n) - a;
  return h;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames) {
    if (n == name) return fam;
  }
  return std::nullopt;
}

WeightSpec WeightSpec::canonical(long ell) {
  WeightSpec s;
  s.family = Family::canonical;
  s.ell = ell;
  s.validate();
  return s;
}

WeightSpec WeightSpec::q_family(long ell, Rational q) {
  WeightSpec s;
  s.family = Family::q_family;
  s.ell = ell;
  s.q = std::move(q);
  s.validate();
  return s;
}

WeightSpec WeightSpec::shifted(long ell, long m, Rational q) {
  WeightSpec s;
  s.family = Family::shifted;
  s.ell = ell;
  s.m = m;
  s.q = std::move(q);
  s.validate();
  return s;
}

WeightSpec WeightSpec::alpha2(Rational alpha) {
  WeightSpec s;
  s.family = Family::alpha2;
  s.ell = 2;
  s.alphas = {std::move(alpha)};
  s.validate();
  return s;
}

WeightSpec WeightSpec::polyharmonic(long ell, std::vector<Rational> alphas) {
  WeightSpec s;
  s.family = Family::polyharmonic;
  s.ell = ell;
  s.alphas = std::move(alphas);
  s.validate();
  return s;
}

WeightSpec WeightSpec::kpp() {
  WeightSpec s;
  s.family = Family::kpp;
  s.ell = 1;
  return s;
}

WeightSpec WeightSpec::gks() {
  WeightSpec s;
  s.family = Family::gks;
  s.ell = 2;
  return s;
}

WeightSpec WeightSpec::hy(long K) {
  WeightSpec s;
  s.family = Family::hy;
  s.ell = 2;
  s.hy_terms = K;
  s.validate();
  return s;
}

WeightSpec WeightSpec::birman_classical(long ell) {
  WeightSpec s;
  s.family = Family::birman_classical;
  s.ell = ell;
  s.validate();
  return s;
}

WeightSpec WeightSpec::half_power_monomial(long ell) {
  WeightSpec s;
  s.family = Family::half_power_monomial;
  s.ell = ell;
  s.validate();
  return s;
}

void WeightSpec::validate() const {
  require(ell >= 1, "ell must be >= 1");
  require(m >= 0, "m must be >= 0");
  switch (family) {
    case Family::q_family:
      require_open_unit(q);
      break;
    case Family::shifted:
      require_open_unit(q);
      break;
    case Family::alpha2:
      require(ell == 2, "alpha2 requires ell = 2");
      require(alphas.size() == 1, "alpha2 takes one alpha");
      require(alphas.front() < Rational(2), "alpha2 requires alpha < 2");
      break;
    case Family::polyharmonic:
      require(static_cast<long>(alphas.size()) == ell - 1,
              "polyharmonic(ell) takes ell-1 alphas, got " + std::to_string(alphas.size()));
      break;
    case Family::kpp:
      require(ell == 1, "kpp requires ell = 1");
      break;
    case Family::gks:
      require(ell == 2, "gks requires ell = 2");
      break;
    case Family::hy:
      require(ell == 2, "hy requires ell = 2");
      require(hy_terms >= 0, "hy requires K >= 0");
      break;
    default:
      break;
  }
}

bool WeightSpec::has_parameter_sequence() const {
  return family != Family::hy && family != Family::birman_classical;
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  os << family_name(family) << "(ell=" << ell;
  if (family == Family::q_family || family == Family::shifted) os << ",q=" << q;
  if (family == Family::shifted) os << ",m=" << m;
  if (family == Family::hy) os << ",K=" << hy_terms;
  if (!alphas.empty()) {
    os << ",alpha=";
    for (std::size_t i = 0; i < alphas.size(); ++i) os << (i ? ";" : "") << alphas[i];
  }
  os << ")";
  return os.str();
}

long difference_guard_bits(long ell, long n) { return 2 * ell * bit_length(n) + 32; }

LatticeSeq q_family_sequence(long ell, const Rational& q, Precision p) {
  require(ell >= 1, "ell must be >= 1");
  return LatticeSeq(
      [ell, q, p](long n) {
        if (n <= 0) return Real(p);
        return pow(Real(n, p), q) * falling_tail(n, ell, p);
      },
      ell, p);
}

LatticeSeq g_param(const WeightSpec& spec, Precision p) {
  spec.validate();
  const long ell = spec.ell;
  switch (spec.family) {
    case Family::canonical:
    case Family::kpp:
      return q_family_sequence(ell, Rational(1, 2), p);
    case Family::q_family:
      return q_family_sequence(ell, spec.q, p);
    case Family::shifted: {
      const long m = spec.m;
      const Rational q = spec.q;
      return LatticeSeq(
          [ell, m, q, p](long n) {
            Precision work = widened(p, m * bit_length(n + m) + 16);
            LatticeSeq base = q_family_sequence(ell + m, q, work);
            Real acc(work);
            for (long j = 0; j <= m; ++j) {
              Real t = base(n + j) * Real(binom_rational(Rational(m), j), work);
              if ((m - j) % 2 == 1) {
                acc -= t;
              } else {
                acc += t;
              }
            }
            return acc.rounded_to(p);
          },
          ell, p);
    }
    case Family::alpha2:
    case Family::polyharmonic: {
      const std::vector<Rational> alphas = spec.alphas;
      return LatticeSeq(
          [ell, alphas, p](long n) {
            Rational h = exact_radicand(n, ell, alphas);
            if (h.sign() < 0) {
              throw NegativeRadicand(n, "polyharmonic radicand negative at n=" + std::to_string(n));
            }
            return sqrt(Real(h, p));
          },
          ell, p);
    }
    case Family::gks:
      return LatticeSeq([p](long n) { return pow(Real(n, p), Rational(3, 2)); }, 1, p);
    case Family::half_power_monomial: {
      Rational nu = Rational(ell) - Rational(1, 2);
      return LatticeSeq([nu, p](long n) { return pow(Real(n, p), nu); }, 1, p);
    }
    case Family::hy:
    case Family::birman_classical:
      break;
  }
  throw std::invalid_argument(std::string(family_name(spec.family)) +
                              " has no parameter sequence");
}

Real rho_eval(const WeightSpec& spec, long n, Precision p) {
  spec.validate();
  const long ell = spec.ell;
  require(n >= ell, "rho_eval requires n >= ell (n=" + std::to_string(n) + ", ell=" +
                        std::to_string(ell) + ")");
  Precision work = widened(p, difference_guard_bits(ell + spec.m, n));
  switch (spec.family) {
    case Family::kpp: {
      Real inv = Real(1, work) / Real(n, work);
      Real one(1, work);
      return (Real(2, work) - sqrt(one - inv) - sqrt(one + inv)).rounded_to(p);
    }
    case Family::gks: {
      Real num = neg_lap_stencil(2, n, work, [&](long k) { return pow(Real(k, work), Rational(3, 2)); });
      return (num / pow(Real(n, work), Rational(3, 2))).rounded_to(p);
    }
    case Family::hy: {
      Real inv = Real(1, work) / Real(n, work);
      Real one(1, work);
      Real a = one + pow(one - inv, -2L) - pow(one - inv, Rational(-1, 2)) -
               pow(one + inv, Rational(3, 2));
      a = a * inv * inv;
      Real series(work);
      for (long k = 2; k <= spec.hy_terms + 1; ++k) {
        Real t(Rational((2 * k + 1) * (2 * k + 1)) * r_ell1_closed_form(2 * k), work);
        series += t * pow(inv, 2 * k + 2);
      }
      return ((a + series) / 4).rounded_to(p);
    }
    case Family::birman_classical: {
      Real c(r_leading_closed_form(ell), work);
      return (c / pow(Real(n, work), 2 * ell)).rounded_to(p);
    }
    default:
      break;
  }
  LatticeSeq g = g_param(spec, work);
  Real gn = g(n);
  if (gn.is_zero()) {
    throw std::invalid_argument("parameter sequence vanishes at n=" + std::to_string(n));
  }
  Real num = neg_lap_stencil(ell, n, work, [&](long k) { return g(k); });
  return (num / gn).rounded_to(p);
}

Real rho_from_sequence(const LatticeSeq& g, long ell, long n) {
  require(ell >= 1, "ell must be >= 1");
  Precision p = g.precision();
  Real gn = g(n);
  if (gn.is_zero()) {
    throw std::invalid_argument("parameter sequence vanishes at n=" + std::to_string(n));
  }
  return neg_lap_stencil(ell, n, p, [&](long k) { return g(k); }) / gn;
}

SeriesValue rho_series(long ell, long n, long K, Precision p) {
  require(ell >= 1, "ell must be >= 1");
  require(n >= ell, "rho_series requires n >= ell");
  require(K >= 2 * ell, "rho_series requires K >= 2 ell");
  Precision work = widened(p, 32);
  auto table = r_coeff_table(ell, K);
  Real inv = Real(1, work) / Real(n, work);
  // Horner in 1/n over r_{2ell..K}, then times n^(-2ell)
  Real acc(work);
  for (auto it = table.rbegin(); it != table.rend(); ++it) acc = acc * inv + Real(*it, work);
  acc *= pow(inv, 2 * ell);
  Rational pre(1);
  for (long j = 1; j < ell; ++j) pre *= Rational(n, n - j);
  SeriesValue out{(acc * Real(pre, work)).rounded_to(p), n == ell};
  return out;
}

ExpansionTable rho_expansion_table(long ell, long max_power) {
  require(ell >= 1, "ell must be >= 1");
  require(max_power >= 2 * ell, "max_power must be >= 2 ell");
  auto r = r_coeff_table(ell, max_power);
  // S(j + ell - 1, ell - 1) for j = 0..max_power - 2ell
  long jmax = max_power - 2 * ell;
  std::vector<Rational> s2;
  s2.reserve(static_cast<std::size_t>(jmax + 1));
  {
    long rows = jmax + ell;
    std::vector<mpz_class> row{1};
    std::vector<std::vector<mpz_class>> tri{row};
    for (long mrow = 0; mrow < rows; ++mrow) {
      std::vector<mpz_class> next(row.size() + 1);
      for (std::size_t j = 1; j < next.size(); ++j) {
        next[j] = row[j - 1];
        if (j < row.size()) next[j] += static_cast<unsigned long>(j) * row[j];
      }
      row = next;
      tri.push_back(row);
    }
    for (long j = 0; j <= jmax; ++j) {
      s2.emplace_back(tri[static_cast<std::size_t>(j + ell - 1)][static_cast<std::size_t>(ell - 1)]);
    }
  }
  ExpansionTable out;
  out.ell = ell;
  for (long mpow = 2 * ell; mpow <= max_power; ++mpow) {
    Rational c(0);
    for (long k = 2 * ell; k <= mpow; ++k) {
      c += s2[static_cast<std::size_t>(mpow - k)] * r[static_cast<std::size_t>(k - 2 * ell)];
    }
    out.coefficients.emplace_back(mpow, c);
  }
  return out;
}

Real monomial_lap_series(const Rational& nu, long ell, long n, long K, Precision p) {
  require(ell >= 1, "ell must be >= 1");
  require(n >= ell, "monomial_lap_series requires n >= ell");
  require(nu > Rational(0) || n > ell, "monomial_lap_series requires n > ell when nu <= 0");
  require(K >= 2 * ell, "monomial_lap_series requires K >= 2 ell");
  Rational sum(0);
  Rational inv_pow = pow(Rational(1, n), 2 * ell);
  for (long mm = 2 * ell; mm <= K; ++mm) {
    Rational x = x_coeff(mm, ell);
    if (x.sign() != 0) sum += binom_rational(nu, mm) * x * inv_pow;
    inv_pow /= Rational(n);
  }
  Precision work = widened(p, 32);
  return (Real(sum, work) * pow(Real(n, work), nu)).rounded_to(p);
}

Real hy_truncation_bound(long n, long K, Precision p) {
  require(n >= 2, "hy requires n >= 2");
  require(K >= 0, "hy requires K >= 0");
  long k = K + 2;
  Precision work = widened(p, 32);
  Real t(Rational((2 * k + 1) * (2 * k + 1)) * r_ell1_closed_form(2 * k), work);
  t = t / pow(Real(n, work), 2 * k + 2) / 4;
  Rational ratio = Rational((2 * k + 3) * (2 * k + 3), (2 * k + 1) * (2 * k + 1)) / Rational(n * n);
  require(ratio < Rational(1), "tail ratio not below 1");
  return (t / Real(Rational(1) - ratio, work)).rounded_to(p);
}

ChainReport lower_bound_chain(long ell, long n, Precision p) {
  require(ell >= 2, "lower_bound_chain requires ell >= 2");
  require(n >= ell, "lower_bound_chain requires n >= ell");
  ChainReport c{ell,
                n,
                rho_eval(WeightSpec::canonical(ell), n, p),
                rho_eval(WeightSpec::half_power_monomial(ell), n, p),
                rho_eval(WeightSpec::birman_classical(ell), n, p)};
  c.rho_gt_mid = c.rho > c.mid;
  c.mid_gt_classical = c.mid > c.classical;
  return c;
}

}  // namespace hrb
