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

#include "hrb/matrices.hpp"

#include <algorithm>

#include "hrb/weights.hpp"

namespace hrb {

namespace {

long long binom_ll(long m, long j) {
  if (j < 0 || j > m) return 0;
  long long r = 1;
  for (long i = 1; i <= j; ++i) r = r * (m - j + i) / i;
  return r;
}

void check_ell(long ell, long size) {
  if (ell < 1 || ell > 30) throw std::invalid_argument("ell must lie in [1, 30]");
  if (size < 2 * ell + 1) throw std::invalid_argument("size must be >= 2 ell + 1");
}

// sum_j C(m,j) (-1)^(m-j) v[n+j-lo]
Real fdiff(const std::vector<Real>& v, long lo, long n, long m, Precision p) {
  Real acc(p);
  for (long j = 0; j <= m; ++j) {
    Real t = v[static_cast<std::size_t>(n + j - lo)] * static_cast<long>(binom_ll(m, j));
    if ((m - j) % 2 == 1) {
      acc -= t;
    } else {
      acc += t;
    }
  }
  return acc;
}

}  // namespace

IntBandMatrix multiply(const IntBandMatrix& a, const IntBandMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  const long n = a.size();
  IntBandMatrix c(n, std::min(n - 1, a.lower_bw() + b.lower_bw()),
                  std::min(n - 1, a.upper_bw() + b.upper_bw()), 0);
  for (long i = 0; i < n; ++i) {
    for (long j = std::max(0L, i - c.lower_bw()); j <= std::min(n - 1, i + c.upper_bw()); ++j) {
      long long s = 0;
      long lo = std::max({0L, i - a.lower_bw(), j - b.upper_bw()});
      long hi = std::min({n - 1, i + a.upper_bw(), j + b.lower_bw()});
      for (long t = lo; t <= hi; ++t) s += a(i, t) * b(t, j);
      c.at(i, j) = s;
    }
  }
  return c;
}

IntBandMatrix toeplitz_power(long ell, long size) {
  check_ell(ell, size);
  IntBandMatrix m(size, ell, ell, 0);
  for (long i = 0; i < size; ++i) {
    for (long j = std::max(0L, i - ell); j <= std::min(size - 1, i + ell); ++j) {
      long long v = binom_ll(2 * ell, ell + j - i);
      m.at(i, j) = ((j - i) % 2 != 0) ? -v : v;
    }
  }
  return m;
}

IntBandMatrix dirichlet_power(long ell, long size) {
  check_ell(ell, size);
  IntBandMatrix t(size, 1, 1, 0);
  for (long i = 0; i < size; ++i) {
    t.at(i, i) = 2;
    if (i > 0) t.at(i, i - 1) = -1;
    if (i + 1 < size) t.at(i, i + 1) = -1;
  }
  IntBandMatrix r = t;
  for (long e = 1; e < ell; ++e) r = multiply(r, t);
  return r;
}

std::vector<std::vector<long long>> corner_defect(long ell) {
  if (ell < 1 || ell > 30) throw std::invalid_argument("ell must lie in [1, 30]");
  const long size = 2 * ell + 1;
  IntBandMatrix d = dirichlet_power(ell, size);
  IntBandMatrix t = toeplitz_power(ell, size);
  std::vector<std::vector<long long>> out(static_cast<std::size_t>(ell - 1));
  for (long i = 0; i < ell - 1; ++i) {
    for (long j = 0; j < ell - 1; ++j) out[static_cast<std::size_t>(i)].push_back(d(i, j) - t(i, j));
  }
  return out;
}

RealBandMatrix remainder_factor(const LatticeSeq& g, long ell, long k, long size) {
  if (ell < 1 || k < 0 || k > ell - 1) throw std::invalid_argument("remainder index k outside [0, ell-1]");
  if (size < 1) throw std::invalid_argument("size must be positive");
  Precision p = g.precision();
  // Rows m = ell..ell+size-1 use n = m - k in [ell-k, ell+size-1-k].
  const long n_lo = ell - k;
  const long n_hi = ell + size - 1 - k;
  RemainderCoefficients c = remainder_coefficients(g, ell, k, n_lo, n_hi);
  RealBandMatrix R(size, std::min(size - 1, k), std::min(size - 1, 1L), Real(p));
  for (long i = 0; i < size; ++i) {
    const long n = ell + i - k;
    const auto idx = static_cast<std::size_t>(n - n_lo);
    const Real& a0 = c.a[idx];
    const Real& a1 = c.a[idx + 1];
    Real sw = sqrt(c.w[idx]);
    Real up = sw * sqrt(a0 / a1);
    Real dn = sw * sqrt(a1 / a0);
    for (long jp = 0; jp <= k + 1; ++jp) {
      const long col = n + jp - ell;
      if (col < 0 || col >= size) continue;
      Real v(p);
      long long b1 = binom_ll(k, jp - 1);
      if (b1 != 0) {
        Real t = up * static_cast<long>(b1);
        v += ((k - jp + 1) % 2 != 0) ? -t : t;
      }
      long long b0 = binom_ll(k, jp);
      if (b0 != 0) {
        Real t = dn * static_cast<long>(b0);
        v -= ((k - jp) % 2 != 0) ? -t : t;
      }
      R.at(i, col) = std::move(v);
    }
  }
  return R;
}

FactorizationReport factorization_check(const LatticeSeq& g, long ell, long size,
                                        const FactorizationOptions& opt) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (size < 4 * ell) throw std::invalid_argument("factorization_check needs size >= 4 ell");
  const long top = opt.top_margin < 0 ? ell : opt.top_margin;
  const long bottom = opt.bottom_margin < 0 ? 2 * ell : opt.bottom_margin;
  Precision p = g.precision();
  FactorizationReport rep;
  rep.ell = ell;
  rep.size = size;
  rep.first = top;
  rep.last = size - 1 - bottom;
  rep.max_residual = Real(p);
  if (rep.first > rep.last) throw std::invalid_argument("margins leave no interior");

  IntBandMatrix T = toeplitz_power(ell, size);
  std::vector<RealBandMatrix> R;
  for (long k = 0; k < ell; ++k) R.push_back(remainder_factor(g, ell, k, size));
  const long lo = 0;
  std::vector<Real> gv = g.tabulate(lo, 2 * ell + size + 1);

  for (long i = rep.first; i <= rep.last; ++i) {
    for (long j = std::max(rep.first, i - ell); j <= std::min(rep.last, i + ell); ++j) {
      Real e(T(i, j), p);
      if (i == j) {
        const long n = ell + i;
        Real lapg = fdiff(gv, lo, n - ell, 2 * ell, p);
        if (ell % 2 == 1) lapg = -lapg;
        e -= lapg / gv[static_cast<std::size_t>(n - lo)];
      }
      for (long k = 0; k < ell; ++k) {
        if (k == opt.omit_k) continue;
        const RealBandMatrix& Rk = R[static_cast<std::size_t>(k)];
        // (RᵀR)_{ij} = sum_m R(m,i) R(m,j), rows m within [i-1, i+k]
        long m_lo = std::max({0L, i - 1, j - 1});
        long m_hi = std::min({size - 1, i + k, j + k});
        for (long m = m_lo; m <= m_hi; ++m) {
          const Real& x = Rk(m, i);
          const Real& y = Rk(m, j);
          if (x.is_zero() || y.is_zero()) continue;
          e -= x * y;
        }
      }
      Real a = abs(e);
      if (a > rep.max_residual) {
        rep.max_residual = a;
        rep.worst_row = i;
        rep.worst_col = j;
      }
    }
  }
  return rep;
}

FactorizationReport factorization_check(const SequenceFactory& g, long ell, long size, Precision p,
                                        const FactorizationOptions& opt) {
  Precision work = widened(p, difference_guard_bits(ell, size + 3 * ell));
  FactorizationReport rep = factorization_check(g(work), ell, size, opt);
  rep.max_residual = rep.max_residual.rounded_to(p);
  return rep;
}

void write_csv(std::ostream& os, const IntBandMatrix& m) {
  for (const auto& row : m.dense()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << '\n';
  }
}

void write_csv(std::ostream& os, const RealBandMatrix& m) {
  for (const auto& row : m.dense()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j].to_string();
    os << '\n';
  }
}

}  // namespace hrb
