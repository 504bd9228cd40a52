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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hrb/detail/probe_engine.hpp"
#include "hrb/exactmath.hpp"
#include "hrb/weights.hpp"

namespace hrb::detail {

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r;
  r.order = std::min(a.order, b.order);
  for (int i = 0; i < r.order; ++i) {
    double s = 0;
    for (int j = 0; j <= i; ++j) s += a.c[j] * b.c[i - j];
    r.c[i] = s;
  }
  return r;
}

Jet jet_recip(const Jet& a) {
  Jet r;
  r.order = a.order;
  r.c[0] = 1 / a.c[0];
  for (int i = 1; i < a.order; ++i) {
    double s = 0;
    for (int j = 1; j <= i; ++j) s += a.c[j] * r.c[i - j];
    r.c[i] = -s * r.c[0];
  }
  return r;
}

Jet jet_exp(const Jet& a) {
  Jet r;
  r.order = a.order;
  r.c[0] = std::exp(a.c[0]);
  for (int i = 1; i < a.order; ++i) {
    double s = 0;
    for (int j = 1; j <= i; ++j) s += j * a.c[j] * r.c[i - j];
    r.c[i] = s / i;
  }
  return r;
}

namespace {

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0;
  double comp = 0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

long binom_long(long m, long j) {
  if (j < 0 || j > m) return 0;
  long r = 1;
  for (long i = 1; i <= j; ++i) r = r * (m - j + i) / i;
  return r;
}

// sum_j C(m,j) (-1)^(m-j) v[n+j - lo]
Real fdiff(const std::vector<Real>& v, long lo, long n, long m, Precision p) {
  Real acc(p);
  for (long j = 0; j <= m; ++j) {
    const Real& x = v[static_cast<std::size_t>(n + j - lo)];
    if (x.is_zero()) continue;
    Real t = x * binom_long(m, j);
    if ((m - j) % 2 == 1) {
      acc -= t;
    } else {
      acc += t;
    }
  }
  return acc;
}

// Summand of the k-th remainder at n from tabulated g and u (index lo first).
Real mpfr_summand(const std::vector<Real>& g, const std::vector<Real>& u, long lo, long ell, long k,
                  long n, Precision p) {
  Real d0 = fdiff(u, lo, n, k, p);
  Real d1 = fdiff(u, lo, n + 1, k, p);
  if (d0.is_zero() && d1.is_zero()) return Real(p);
  Real a0 = fdiff(g, lo, n, k, p);
  Real a1 = fdiff(g, lo, n + 1, k, p);
  Real br = sqrt(a0 / a1) * d1 - sqrt(a1 / a0) * d0;
  Real s = br * br;
  if (k < ell - 1) {
    long r = ell - 1 - k;
    Real num = fdiff(g, lo, n - r, 2 * r + k + 1, p);
    if (r % 2 == 1) num = -num;
    s *= num / fdiff(g, lo, n, k + 1, p);
  }
  return s;
}

Real mpfr_weight(const std::vector<Real>& g, const std::vector<Real>& xi, long lo, long ell, long n,
                 Precision p) {
  Real lapg = fdiff(g, lo, n - ell, 2 * ell, p);
  if (ell % 2 == 1) lapg = -lapg;
  const Real& x = xi[static_cast<std::size_t>(n - lo)];
  return lapg * g[static_cast<std::size_t>(n - lo)] * x * x;
}

}  // namespace

struct ProbeEngine::Window {
  enum Kind { flat, smooth, near_edge, unresolved } kind = flat;
  double A = 0;
  double B = 0;
  double d = 0;
};

ProbeEngine::ProbeEngine(long ell, CutoffSpec cutoff, ProbeOptions opt)
    : ell_(ell), cutoff_(std::move(cutoff)), opt_(opt) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (ell > 8) throw std::invalid_argument("probe engine supports ell <= 8");
  cutoff_.validate();
  if (opt_.mpfr_limit < 64 * (2 * ell + 1)) {
    throw std::invalid_argument("mpfr_limit must be >= 64 (2 ell + 1)");
  }
  work_ = widened(opt_.precision, difference_guard_bits(ell, opt_.mpfr_limit + 2 * ell + 2));

  const long ns = 2 * ell + 2;
  D_.assign(static_cast<std::size_t>(2 * ell + 1),
            std::vector<std::array<double, kMaxJetOrder>>(static_cast<std::size_t>(ns)));
  std::vector<std::vector<std::vector<mpz_class>>> exact(
      static_cast<std::size_t>(2 * ell + 1),
      std::vector<std::vector<mpz_class>>(static_cast<std::size_t>(ns),
                                          std::vector<mpz_class>(kMaxJetOrder)));
  for (long m = 0; m <= 2 * ell; ++m) {
    for (long s = -ell; s <= ell + 1; ++s) {
      for (int i = 0; i < kMaxJetOrder; ++i) {
        mpz_class acc = 0;
        for (long j = 0; j <= m; ++j) {
          mpz_class base(s + j);
          mpz_class pw;
          mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(i));
          mpz_class t = pw * binom_long(m, j);
          if ((m - j) % 2 == 1) {
            acc -= t;
          } else {
            acc += t;
          }
        }
        exact[static_cast<std::size_t>(m)][static_cast<std::size_t>(s + ell)][static_cast<std::size_t>(i)] = acc;
        D_[static_cast<std::size_t>(m)][static_cast<std::size_t>(s + ell)][static_cast<std::size_t>(i)] = acc.get_d();
      }
    }
  }
  W_.assign(static_cast<std::size_t>(ell),
            std::vector<std::array<double, kMaxJetOrder>>(kMaxJetOrder));
  for (long k = 0; k < ell; ++k) {
    const auto& e0 = exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell)];
    const auto& e1 = exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell + 1)];
    for (int i = 0; i < kMaxJetOrder; ++i) {
      for (int ip = 0; ip < kMaxJetOrder; ++ip) {
        mpz_class w = e0[static_cast<std::size_t>(i)] * e1[static_cast<std::size_t>(ip)] -
                      e1[static_cast<std::size_t>(i)] * e0[static_cast<std::size_t>(ip)];
        W_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(ip)] = w.get_d();
      }
    }
  }
  for (const auto& s : stirling_first_row(ell)) stirling_.push_back(s.to_double());
  half_binom_.resize(static_cast<std::size_t>(ell + 1));
  for (long j = 0; j <= ell; ++j) {
    for (int i = 0; i < kMaxJetOrder; ++i) {
      half_binom_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          binom_rational(Rational(j) - Rational(1, 2), i).to_double();
    }
  }
}

int ProbeEngine::g_order(double n) const {
  double q = static_cast<double>(2 * ell_ + 2) / n;
  int extra = static_cast<int>(std::ceil(56.0 / -std::log2(q))) + 1;
  return std::min(kMaxJetOrder, static_cast<int>(2 * ell_) + extra);
}

// g(n+h) = sum_j s(ell,j) (n+h)^(j-1/2), expanded binomially in h/n.
void ProbeEngine::g_jet(double n, int order, double* gamma) const {
  std::fill(gamma, gamma + order, 0.0);
  const double sq = std::sqrt(n);
  double npow = 1;
  for (long j = 1; j <= ell_; ++j) {
    double base = stirling_[static_cast<std::size_t>(j)] * npow * sq;
    npow *= n;
    if (base == 0) continue;
    const auto& hb = half_binom_[static_cast<std::size_t>(j)];
    double t = base;
    for (int i = 0; i < order; ++i) {
      gamma[i] += hb[static_cast<std::size_t>(i)] * t;
      t /= n;
      if (std::abs(t) < 1e-290) break;
    }
  }
}

ProbeEngine::Window ProbeEngine::classify(long n) const {
  Window w;
  bool any_smooth = false;
  bool all_smooth = true;
  bool same_piece = true;
  int piece = -1;
  double flat_value = -1;
  bool flat_mixed = false;
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -tmin;
  for (long x = n; x <= n + ell_; ++x) {
    CutoffPiece pc = cutoff_piece(cutoff_, x);
    double v = pc.value;
    bool smooth = false;
    if (pc.smooth) {
      double tau = pc.A + pc.B * std::log(static_cast<double>(x));
      if (piece == -1) {
        piece = pc.id;
        w.A = pc.A;
        w.B = pc.B;
      } else if (piece != pc.id) {
        same_piece = false;
      }
      tmin = std::min(tmin, tau);
      tmax = std::max(tmax, tau);
      if (tau <= 0) {
        v = 0;
      } else if (tau >= 1) {
        v = 1;
      } else {
        smooth = true;
      }
    }
    if (smooth) {
      any_smooth = true;
    } else {
      all_smooth = false;
      if (flat_value < 0) {
        flat_value = v;
      } else if (flat_value != v) {
        flat_mixed = true;
      }
    }
  }
  if (!any_smooth) {
    if (flat_mixed) throw std::logic_error("cutoff jumps inside a window");
    w.kind = Window::flat;
    return w;
  }
  if (all_smooth && same_piece) {
    w.d = std::min(tmin, 1 - tmax);
    double rtau = std::min(w.d, 0.25);
    double nd = static_cast<double>(n);
    double rh = std::min(nd, rtau * nd / std::abs(w.B));
    if (static_cast<double>(ell_ + 1) / rh <= 0.125) {
      w.kind = Window::smooth;
      return w;
    }
  }
  // ξ sits within e^-(1/d) of a constant; confirm it is flat in double,
  // otherwise the window goes to MPFR.
  w.kind = Window::near_edge;
  for (long x = n; x <= n + ell_; ++x) {
    CutoffPiece pc = cutoff_piece(cutoff_, x);
    if (!pc.smooth) continue;
    double xi = smooth_step(pc.A + pc.B * std::log(static_cast<double>(x)));
    if (std::min(xi, 1 - xi) > 1e-30) {
      w.kind = Window::unresolved;
      break;
    }
  }
  return w;
}

void ProbeEngine::jet_summands(long n, const Window& w, double* out) const {
  const double nd = static_cast<double>(n);
  double rtau = std::min(w.d, 0.25);
  double rh = std::min(nd, rtau * nd / std::abs(w.B));
  double q = static_cast<double>(ell_ + 1) / rh;
  int px = static_cast<int>(std::ceil(56.0 / -std::log2(q))) + 1;
  int P = std::min(kMaxJetOrder, std::max(g_order(nd), px));

  Jet G;
  G.order = P;
  g_jet(nd, P, G.c.data());

  Jet tau;
  tau.order = P;
  tau.c[0] = w.A + w.B * std::log(nd);
  double inv = 1 / nd;
  double pw = inv;
  for (int i = 1; i < P; ++i) {
    tau.c[i] = w.B * ((i % 2 == 1) ? 1.0 : -1.0) * pw / i;
    pw *= inv;
  }
  Jet om = tau;
  for (int i = 0; i < P; ++i) om.c[i] = -om.c[i];
  om.c[0] += 1;
  Jet rt = jet_recip(tau);
  Jet rom = jet_recip(om);
  Jet z;
  z.order = P;
  for (int i = 0; i < P; ++i) z.c[i] = rt.c[i] - rom.c[i];
  Jet xi;
  if (z.c[0] >= 0) {
    Jet nz = z;
    for (int i = 0; i < P; ++i) nz.c[i] = -nz.c[i];
    Jet F = jet_exp(nz);
    Jet onep = F;
    onep.c[0] += 1;
    xi = jet_mul(F, jet_recip(onep));
  } else {
    Jet F = jet_exp(z);
    F.c[0] += 1;
    xi = jet_recip(F);
  }
  xi.c[0] = 0;
  Jet pi = jet_mul(G, xi);

  const auto& Dz = D_;
  for (long k = 0; k < ell_; ++k) {
    const auto& d0 = Dz[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell_)];
    const auto& d1 = Dz[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell_ + 1)];
    double a = 0;
    double b = 0;
    for (int i = 0; i < P; ++i) {
      a += G.c[i] * d0[static_cast<std::size_t>(i)];
      b += G.c[i] * d1[static_cast<std::size_t>(i)];
    }
    const auto& Wk = W_[static_cast<std::size_t>(k)];
    double num = 0;
    for (int i = 0; i < P; ++i) {
      double gi = G.c[i];
      if (gi == 0) continue;
      const auto& row = Wk[static_cast<std::size_t>(i)];
      double s = 0;
      for (int ip = 0; ip < P; ++ip) s += pi.c[ip] * row[static_cast<std::size_t>(ip)];
      num += gi * s;
    }
    double wk = 1;
    if (k < ell_ - 1) {
      long r = ell_ - 1 - k;
      const auto& dn = Dz[static_cast<std::size_t>(2 * r + k + 1)][static_cast<std::size_t>(ell_ - r)];
      const auto& dd = Dz[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(ell_)];
      double top = 0;
      double bot = 0;
      for (int i = 0; i < P; ++i) {
        top += G.c[i] * dn[static_cast<std::size_t>(i)];
        bot += G.c[i] * dd[static_cast<std::size_t>(i)];
      }
      if (r % 2 == 1) top = -top;
      wk = top / bot;
    }
    out[k] = wk * num * num / (a * b);
  }
}

double ProbeEngine::summand_mpfr(long k, long n) const {
  if (k < 0 || k >= ell_) throw std::invalid_argument("remainder index k outside [0, ell-1]");
  Precision p = widened(opt_.precision, difference_guard_bits(ell_, n + 2 * ell_ + 2));
  long lo = std::max(0L, n - ell_);
  LatticeSeq g = q_family_sequence(ell_, Rational(1, 2), p);
  std::vector<Real> gv = g.tabulate(lo, n + ell_ + 2);
  std::vector<Real> uv;
  for (long j = lo; j < n + ell_ + 2; ++j) {
    uv.push_back(gv[static_cast<std::size_t>(j - lo)] * cutoff_value(cutoff_, j, p));
  }
  return mpfr_summand(gv, uv, lo, ell_, k, n, p).to_double();
}

std::optional<std::vector<double>> ProbeEngine::summands_jet(long n) const {
  Window w = classify(n);
  if (w.kind != Window::smooth) return std::nullopt;
  std::vector<double> out(static_cast<std::size_t>(ell_));
  jet_summands(n, w, out.data());
  return out;
}

double ProbeEngine::weight_mpfr(long n) const {
  Precision p = widened(opt_.precision, difference_guard_bits(ell_, n + 2 * ell_ + 2));
  long lo = n - ell_;
  LatticeSeq g = q_family_sequence(ell_, Rational(1, 2), p);
  std::vector<Real> gv = g.tabulate(lo, n + ell_ + 1);
  std::vector<Real> xv;
  for (long j = lo; j < n + ell_ + 1; ++j) xv.push_back(cutoff_value(cutoff_, j, p));
  return mpfr_weight(gv, xv, lo, ell_, n, p).to_double();
}

double ProbeEngine::weight_jet(long n) const {
  CutoffPiece pc = cutoff_piece(cutoff_, n);
  double xi = pc.smooth ? smooth_step(pc.A + pc.B * std::log(static_cast<double>(n))) : pc.value;
  if (xi == 0) return 0;
  double nd = static_cast<double>(n);
  int P = g_order(nd);
  std::array<double, kMaxJetOrder> gamma{};
  g_jet(nd, P, gamma.data());
  const auto& d = D_[static_cast<std::size_t>(2 * ell_)][0];
  double lap = 0;
  for (int i = 0; i < P; ++i) lap += gamma[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
  if (ell_ % 2 == 1) lap = -lap;
  return lap * gamma[0] * xi * xi;
}

ProbeTotals ProbeEngine::run(bool with_weight) const {
  ProbeTotals t;
  t.per_k.assign(static_cast<std::size_t>(ell_), 0.0);
  std::vector<Accumulator> acc(static_cast<std::size_t>(ell_));
  Accumulator wacc;
  const long x_end = cutoff_.support_end();
  const long limit = opt_.mpfr_limit;
  const long hi_m = std::min(limit - 1, x_end);
  const Precision p = work_;

  // MPFR route on [0, hi_m].
  {
    const long lo = 0;
    const long top = hi_m + ell_ + 2;
    LatticeSeq g = q_family_sequence(ell_, Rational(1, 2), p);
    std::vector<Real> gv = g.tabulate(lo, top);
    std::vector<Real> xv;
    std::vector<Real> uv;
    xv.reserve(gv.size());
    uv.reserve(gv.size());
    for (long j = lo; j < top; ++j) {
      xv.push_back(cutoff_value(cutoff_, j, p));
      uv.push_back(gv[static_cast<std::size_t>(j - lo)] * xv.back());
    }
    for (long k = 0; k < ell_; ++k) {
      Real sum(p);
      for (long n = ell_ - k; n <= hi_m; ++n) sum += mpfr_summand(gv, uv, lo, ell_, k, n, p);
      acc[static_cast<std::size_t>(k)].add(sum.to_double());
    }
    if (with_weight) {
      Real sum(p);
      for (long n = ell_; n <= hi_m; ++n) sum += mpfr_weight(gv, xv, lo, ell_, n, p);
      wacc.add(sum.to_double());
    }
    t.mpfr_points = std::max(0L, hi_m + 1);
  }

  if (x_end >= limit) {
    // Only windows meeting 0 < τ < 1 on a transition piece can contribute.
    std::vector<std::pair<long, long>> ranges;
    long probe_points[] = {cutoff_.N + 1, 2 * cutoff_.N * cutoff_.N + 1};
    for (long x0 : probe_points) {
      if (x0 > x_end) continue;
      CutoffPiece pc = cutoff_piece(cutoff_, x0);
      if (!pc.smooth) continue;
      double l0 = (0 - pc.A) / pc.B;
      double l1 = (1 - pc.A) / pc.B;
      double xa = std::exp(std::min(l0, l1));
      double xb = std::exp(std::max(l0, l1));
      long a = std::max(limit, static_cast<long>(std::floor(xa)) - ell_ - 2);
      long b = std::min(x_end, static_cast<long>(std::ceil(xb)) + 2);
      if (a <= b) ranges.emplace_back(a, b);
    }
    std::vector<double> buf(static_cast<std::size_t>(ell_));
    for (auto [a, b] : ranges) {
      for (long n = a; n <= b; ++n) {
        Window w = classify(n);
        if (w.kind == Window::unresolved) {
          for (long k = 0; k < ell_; ++k) acc[static_cast<std::size_t>(k)].add(summand_mpfr(k, n));
          ++t.mpfr_points;
          continue;
        }
        if (w.kind != Window::smooth) continue;
        jet_summands(n, w, buf.data());
        for (long k = 0; k < ell_; ++k) acc[static_cast<std::size_t>(k)].add(buf[static_cast<std::size_t>(k)]);
        ++t.jet_points;
      }
    }
    if (with_weight) {
      for (long n = std::max(limit, ell_); n <= x_end; ++n) wacc.add(weight_jet(n));
    }
  }
  for (long k = 0; k < ell_; ++k) t.per_k[static_cast<std::size_t>(k)] = acc[static_cast<std::size_t>(k)].value();
  t.weight_sum = wacc.value();
  return t;
}

}  // namespace hrb::detail

namespace hrb {

std::vector<CriticalityRow> criticality_probe(long ell, const std::vector<long>& Ns,
                                              const ProbeOptions& opt) {
  std::vector<CriticalityRow> rows;
  for (long N : Ns) {
    if (N < ell + 2) throw std::invalid_argument("criticality_probe needs N >= ell + 2");
    detail::ProbeEngine eng(ell, CutoffSpec{N, CutoffShape::criticality, Rational(1, 4)}, opt);
    detail::ProbeTotals t = eng.run(false);
    CriticalityRow row;
    row.N = N;
    row.per_k = t.per_k;
    for (double v : t.per_k) row.total_remainder += v;
    row.scaled = row.total_remainder * std::log(static_cast<double>(N));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<OptimalityRow> optimality_probe(long ell, long M, const std::vector<long>& Ns,
                                            const ProbeOptions& opt) {
  if (M < ell) throw std::invalid_argument("optimality_probe needs M >= ell");
  std::vector<OptimalityRow> rows;
  for (long N : Ns) {
    if (N < M) throw std::invalid_argument("optimality_probe needs N >= M");
    detail::ProbeEngine eng(ell, CutoffSpec{N, CutoffShape::plateau, Rational(1, 4)}, opt);
    detail::ProbeTotals t = eng.run(true);
    OptimalityRow row;
    row.N = N;
    row.per_k = t.per_k;
    for (double v : t.per_k) row.remainder_sum += v;
    row.weight_sum = t.weight_sum;
    row.ratio = row.remainder_sum / row.weight_sum;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hrb
