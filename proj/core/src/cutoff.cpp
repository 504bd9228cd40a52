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

#include "hrb/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace hrb {

void CutoffSpec::validate() const {
  if (N < 1) throw std::invalid_argument("cutoff N must be >= 1");
  if (shape == CutoffShape::criticality && N > 3000000000L) {
    throw std::invalid_argument("criticality cutoff N too large");
  }
  if (shape == CutoffShape::plateau && N > 1000000L) {
    throw std::invalid_argument("plateau cutoff N too large");
  }
  if (!(eps > Rational(0) && eps < Rational(1, 2))) {
    throw std::invalid_argument("cutoff eps must lie in (0, 1/2)");
  }
}

long CutoffSpec::support_end() const {
  return shape == CutoffShape::criticality ? N * N : 2 * N * N * N;
}

Real smooth_step(const Real& tau) {
  Precision p = tau.precision();
  if (tau <= 0L) return Real(p);
  if (tau >= 1L) return Real(1, p);
  Real one(1, p);
  // 1 / (1 + exp(1/τ - 1/(1-τ)))
  Real z = one / tau - one / (one - tau);
  return one / (one + exp(z));
}

double smooth_step(double tau) {
  if (tau <= 0) return 0;
  if (tau >= 1) return 1;
  double z = 1 / tau - 1 / (1 - tau);
  if (z > 0) {
    double f = std::exp(-z);
    return f / (1 + f);
  }
  return 1 / (1 + std::exp(z));
}

Real eta(const Real& t, const Rational& eps) {
  Precision p = t.precision();
  Real e(eps, p);
  return smooth_step((t - e) / (Real(1, p) - e - e));
}

Real cutoff_value(const CutoffSpec& c, long x, Precision p) {
  c.validate();
  const long N = c.N;
  const long N2 = N * N;
  if (c.shape == CutoffShape::criticality) {
    if (x <= N) return Real(1, p);
    if (x > N2) return Real(p);
    Real L = log(Real(N, p));
    return eta((L * 2 - log(Real(x, p))) / L, c.eps);
  }
  if (x <= N) return Real(p);
  if (x > N2 && x <= 2 * N2) return Real(1, p);
  if (x > 2 * N2 * N) return Real(p);
  Real L = log(Real(N, p));
  Real lx = log(Real(x, p));
  if (x <= N2) return eta((lx - L) / L, c.eps);
  Real top = log(Real(2, p)) + L * 3;
  return eta((top - lx) / L, c.eps);
}

CutoffPiece cutoff_piece(const CutoffSpec& c, long x) {
  const long N = c.N;
  const long N2 = N * N;
  const double L = std::log(static_cast<double>(N));
  const double eps = c.eps.to_double();
  const double w = 1 - 2 * eps;
  CutoffPiece piece;
  if (c.shape == CutoffShape::criticality) {
    if (x <= N) return {0, false, 1, 0, 0};
    if (x > N2) return {2, false, 0, 0, 0};
    piece = {1, true, 0, (2 - eps) / w, -1 / (L * w)};
    return piece;
  }
  if (x <= N) return {0, false, 0, 0, 0};
  if (x <= N2) return {1, true, 0, (-1 - eps) / w, 1 / (L * w)};
  if (x <= 2 * N2) return {2, false, 1, 0, 0};
  if (x <= 2 * N2 * N) {
    double top = (std::log(2.0) + 3 * L) / L;
    return {3, true, 0, (top - eps) / w, -1 / (L * w)};
  }
  return {4, false, 0, 0, 0};
}

}  // namespace hrb
