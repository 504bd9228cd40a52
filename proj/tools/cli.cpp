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

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrb/exactmath.hpp"
#include "hrb/matrices.hpp"
#include "hrb/verify.hpp"
#include "hrb/weights.hpp"
#include "report.hpp"

namespace hrb::cli {

namespace {

struct Globals {
  long precision = 0;
  std::uint64_t seed = 42;
  std::string format = "csv";
  std::string output;
  bool hex = false;
};

struct Ctx {
  Precision p;
  std::uint64_t seed = 0;
};

// A failed check: the message names the first violated invariant and index.
using Outcome = std::optional<std::string>;
using Handler = std::function<Outcome(const Ctx&, Report&)>;

struct FamilyOpts {
  long ell = 1;
  std::string family = "canonical";
  std::string q = "1/2";
  long m = 0;
  std::vector<std::string> alpha;
  long K = 20;
  CLI::Option* ell_opt = nullptr;
};

void add_family_opts(CLI::App* sc, FamilyOpts& f) {
  f.ell_opt = sc->add_option("--ell", f.ell, "order ell");
  sc->add_option("--family", f.family, "weight family");
  sc->add_option("--q", f.q, "exponent q (q_family, shifted)");
  sc->add_option("--m", f.m, "shift m (shifted)");
  sc->add_option("--alpha", f.alpha, "alpha parameters (alpha2, polyharmonic)")->delimiter(',');
  sc->add_option("--K", f.K, "series terms (hy)");
}

WeightSpec build_spec(const FamilyOpts& f) {
  auto fam = parse_family(f.family);
  if (!fam) throw std::invalid_argument("unknown family '" + f.family + "'");
  WeightSpec s;
  s.family = *fam;
  s.ell = f.ell;
  const bool ell_given = f.ell_opt != nullptr && f.ell_opt->count() > 0;
  if (!ell_given) {
    if (*fam == Family::gks || *fam == Family::hy || *fam == Family::alpha2) s.ell = 2;
    if (*fam == Family::kpp) s.ell = 1;
  }
  s.m = f.m;
  s.q = Rational::parse(f.q);
  for (const auto& a : f.alpha) s.alphas.push_back(Rational::parse(a));
  s.hy_terms = f.K;
  s.validate();
  return s;
}

void echo_family(Report& r, const WeightSpec& s) {
  r.config("family", cell(std::string(family_name(s.family))));
  r.config("ell", cell(s.ell));
  r.config("weight", cell(s.describe()));
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Real tolerance_or(const std::string& text, Precision p) {
  if (text.empty()) return default_tolerance(p);
  return Real(Rational::parse(text), p);
}

Precision resolve_precision(const Globals& g, const CLI::Option* flag) {
  long bits = 128;
  if (flag->count() > 0) {
    bits = g.precision;
  } else if (const char* env = std::getenv("HRB_PRECISION"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    bits = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw std::invalid_argument("HRB_PRECISION is not an integer");
  }
  return checked_precision(bits);
}

// ---------------------------------------------------------------------------

Handler cmd_weights(CLI::App& app) {
  auto* sc = app.add_subcommand("weights", "tabulate rho_n for a weight family");
  auto f = std::make_shared<FamilyOpts>();
  auto n_from = std::make_shared<long>(-1);
  auto n_to = std::make_shared<long>(-1);
  add_family_opts(sc, *f);
  sc->add_option("--n-from", *n_from, "first n (default ell)");
  sc->add_option("--n-to", *n_to, "last n (default n-from)");
  return [=](const Ctx& c, Report& r) -> Outcome {
    WeightSpec s = build_spec(*f);
    long lo = *n_from < 0 ? s.ell : *n_from;
    long hi = *n_to < 0 ? lo : *n_to;
    if (lo < s.ell) throw std::invalid_argument("--n-from must be >= ell");
    if (hi < lo) throw std::invalid_argument("--n-to must be >= --n-from");
    echo_family(r, s);
    r.config("n_from", cell(lo));
    r.config("n_to", cell(hi));
    r.column("n");
    r.real_column("rho");
    for (long n = lo; n <= hi; ++n) {
      Real v = rho_eval(s, n, c.p);
      r.begin_row();
      r.put(cell(n));
      r.put_real(v);
    }
    r.summary("count", cell(hi - lo + 1));
    return std::nullopt;
  };
}

Handler cmd_coeffs(CLI::App& app) {
  auto* sc = app.add_subcommand("coeffs", "exact series coefficients");
  auto ell = std::make_shared<long>(2);
  auto k_max = std::make_shared<long>(-1);
  auto table = std::make_shared<std::string>("r");
  auto conj = std::make_shared<bool>(false);
  sc->add_option("--ell", *ell, "order ell");
  sc->add_option("--k-max", *k_max, "largest index (default 2 ell + 4)");
  sc->add_option("--table", *table, "r or expansion")->check(CLI::IsMember({"r", "expansion"}));
  sc->add_flag("--check-conjecture", *conj, "scaled 4^(k-ell) r_k column and integrality flag");
  return [=](const Ctx&, Report& r) -> Outcome {
    if (*ell < 1) throw std::invalid_argument("--ell must be >= 1");
    long km = *k_max < 0 ? 2 * *ell + 4 : *k_max;
    if (km < 2 * *ell) throw std::invalid_argument("--k-max must be >= 2 ell");
    if (*conj && *table != "r") throw std::invalid_argument("--check-conjecture needs --table r");
    r.config("ell", cell(*ell));
    r.config("k_max", cell(km));
    r.config("table", cell(*table));
    r.config("check_conjecture", cell(*conj));
    if (*table == "expansion") {
      r.column("power");
      r.column("coefficient");
      for (const auto& [pw, v] : rho_expansion_table(*ell, km).coefficients) {
        r.begin_row();
        r.put(cell(pw));
        r.put(cell(v));
      }
      return std::nullopt;
    }
    r.column("k");
    r.column("r_k");
    std::vector<ConjectureEntry> cj;
    if (*conj) {
      r.column("scaled");
      r.column("is_integer");
      cj = r_conjecture_check(*ell, km);
    }
    auto rk = r_coeff_table(*ell, km);
    Outcome fail;
    for (long k = 2 * *ell; k <= km; ++k) {
      r.begin_row();
      r.put(cell(k));
      r.put(cell(rk[static_cast<std::size_t>(k - 2 * *ell)]));
      if (*conj) {
        const auto& e = cj[static_cast<std::size_t>(k - 2 * *ell)];
        r.put(cell(e.scaled));
        r.put(cell(e.is_integer));
        if (!e.is_integer && !fail) {
          fail = "conjecture counterexample: 4^(k-ell) r_k = " + e.scaled.to_string() + " at k=" + std::to_string(k);
        }
      }
    }
    if (*conj) r.summary("conjecture_holds", cell(!fail.has_value()));
    return fail;
  };
}

Handler cmd_verify_identity(CLI::App& app) {
  auto* sc = app.add_subcommand("verify-identity", "identity residuals on seeded random u");
  auto f = std::make_shared<FamilyOpts>();
  auto trials = std::make_shared<long>(100);
  auto max_len = std::make_shared<long>(15);
  auto tol = std::make_shared<std::string>();
  add_family_opts(sc, *f);
  sc->add_option("--trials", *trials, "number of random vectors");
  sc->add_option("--max-len", *max_len, "maximal support length");
  sc->add_option("--tol", *tol, "relative tolerance (default 2^-(p-20))");
  return [=](const Ctx& c, Report& r) -> Outcome {
    WeightSpec s = build_spec(*f);
    if (*trials < 1) throw std::invalid_argument("--trials must be >= 1");
    Real t = tolerance_or(*tol, c.p);
    echo_family(r, s);
    r.config("trials", cell(*trials));
    r.config("max_len", cell(*max_len));
    r.config("tolerance", cell(t));
    LatticeSeq g = g_param(s, c.p);
    TestVectorSource src(c.seed);
    r.column("trial");
    r.column("offset");
    r.column("length");
    r.real_column("lhs");
    r.real_column("weight_term");
    r.real_column("remainder_sum");
    r.real_column("relative_residual");
    Real worst(c.p);
    long worst_trial = 0;
    Outcome fail;
    for (long i = 0; i < *trials; ++i) {
      FinSuppSeq u = src.next(s.ell, c.p, *max_len);
      IdentityReport rep = identity_check(g, u, s.ell);
      Real rem(c.p);
      for (long k = 0; k < s.ell; ++k) {
        const Real& rk = rep.remainders[static_cast<std::size_t>(k)];
        rem += rk;
        if (rk < -(t * max(Real(1, c.p), rep.lhs)) && !fail) {
          fail = "remainder k=" + std::to_string(k) + " negative at trial " + std::to_string(i);
        }
      }
      r.begin_row();
      r.put(cell(i));
      r.put(cell(u.offset()));
      r.put(cell(static_cast<long>(u.values().size())));
      r.put_real(rep.lhs);
      r.put_real(rep.weight_term);
      r.put_real(rem);
      r.put_real(rep.relative_residual);
      if (rep.relative_residual > worst || i == 0) {
        worst = rep.relative_residual;
        worst_trial = i;
      }
    }
    const bool pass = !(worst > t) && !fail;
    r.summary("max_relative_residual", cell(worst));
    r.summary("worst_trial", cell(worst_trial));
    r.summary("pass", cell(pass));
    if (!fail && worst > t) {
      fail = "identity residual " + worst.to_string() + " exceeds tolerance at trial " + std::to_string(worst_trial);
    }
    return fail;
  };
}

Handler cmd_verify_assumptions(CLI::App& app) {
  auto* sc = app.add_subcommand("verify-assumptions", "check A1, A2, A2', A3'' up to a horizon");
  auto f = std::make_shared<FamilyOpts>();
  auto N = std::make_shared<long>(1000);
  auto force = std::make_shared<bool>(false);
  add_family_opts(sc, *f);
  sc->add_option("--N", *N, "horizon");
  sc->add_flag("--force", *force, "q_family with q outside (0,1), skipping validation");
  return [=](const Ctx& c, Report& r) -> Outcome {
    SequenceFactory factory;
    long ell = f->ell;
    if (*force) {
      if (f->family != "q_family" && f->family != "canonical") {
        throw std::invalid_argument("--force applies to q_family only");
      }
      Rational q = Rational::parse(f->q);
      factory = [ell, q](Precision p) { return q_family_sequence(ell, q, p); };
      r.config("family", cell("q_family"));
      r.config("ell", cell(ell));
      r.config("q", cell(q));
      r.config("forced", cell(true));
    } else {
      WeightSpec s = build_spec(*f);
      ell = s.ell;
      factory = family_sequence(s);
      echo_family(r, s);
    }
    if (*N < ell) throw std::invalid_argument("--N must be >= ell");
    r.config("N", cell(*N));
    AssumptionReport rep = assumptions_check(factory, ell, *N, c.p);
    r.config("eval_precision", cell(rep.eval_precision.bits));
    r.column("assumption");
    r.column("ok");
    const std::pair<const char*, bool> rows[] = {
        {"A1", rep.a1_ok}, {"A2", rep.a2_ok}, {"A2'", rep.a2prime_ok}, {"A3''", rep.a3strict_ok}};
    for (const auto& [name, ok] : rows) {
      r.begin_row();
      r.put(cell(name));
      r.put(cell(ok));
    }
    r.summary("label", cell(rep.label()));
    if (rep.first_violation) {
      r.summary("violation_tag", cell(assumption_tag(rep.first_violation->tag)));
      r.summary("violation_k", cell(rep.first_violation->k));
      r.summary("violation_n", cell(rep.first_violation->n));
      r.summary("violation_value", cell(rep.first_violation->value.rounded_to(c.p)));
      return rep.label();
    }
    return std::nullopt;
  };
}

Handler cmd_check_ineq(CLI::App& app) {
  auto* sc = app.add_subcommand("check-ineq", "quadratic form versus weighted sum");
  auto f = std::make_shared<FamilyOpts>();
  auto trials = std::make_shared<long>(100);
  auto max_len = std::make_shared<long>(15);
  auto scale = std::make_shared<std::string>("1");
  auto vectors = std::make_shared<std::string>("random");
  add_family_opts(sc, *f);
  sc->add_option("--trials", *trials, "number of test vectors");
  sc->add_option("--max-len", *max_len, "maximal support length");
  sc->add_option("--scale", *scale, "multiply the weight by this constant");
  sc->add_option("--vectors", *vectors, "random or delta")->check(CLI::IsMember({"random", "delta"}));
  return [=](const Ctx& c, Report& r) -> Outcome {
    WeightSpec s = build_spec(*f);
    if (*trials < 1) throw std::invalid_argument("--trials must be >= 1");
    Rational sc_q = Rational::parse(*scale);
    Real scl(sc_q, c.p);
    Real t = default_tolerance(c.p);
    echo_family(r, s);
    r.config("trials", cell(*trials));
    r.config("vectors", cell(*vectors));
    r.config("scale", cell(sc_q));
    r.column("trial");
    r.column("offset");
    r.column("length");
    r.real_column("lhs");
    r.real_column("rhs");
    r.real_column("margin");
    TestVectorSource src(c.seed);
    Outcome fail;
    Real min_margin(c.p);
    for (long i = 0; i < *trials; ++i) {
      FinSuppSeq u = *vectors == "delta" ? FinSuppSeq::delta(s.ell + i, c.p) : src.next(s.ell, c.p, *max_len);
      InequalityReport rep = inequality_check(s, u);
      Real rhs = rep.rhs * scl;
      Real margin = rep.lhs - rhs;
      r.begin_row();
      r.put(cell(i));
      r.put(cell(u.offset()));
      r.put(cell(static_cast<long>(u.values().size())));
      r.put_real(rep.lhs);
      r.put_real(rhs);
      r.put_real(margin);
      if (i == 0 || margin < min_margin) min_margin = margin;
      if (margin < -(t * max(Real(1, c.p), rep.lhs)) && !fail) {
        fail = "inequality violated at trial " + std::to_string(i) + " (margin " + margin.to_string() + ")";
      }
    }
    r.summary("min_margin", cell(min_margin));
    r.summary("pass", cell(!fail.has_value()));
    return fail;
  };
}

void add_probe_opts(CLI::App* sc, long& limit) {
  sc->add_option("--mpfr-limit", limit, "indices below this are summed in MPFR");
}

Handler cmd_probe_criticality(CLI::App& app) {
  auto* sc = app.add_subcommand("probe-criticality", "remainders of the criticality cutoff");
  auto ell = std::make_shared<long>(1);
  auto Ns = std::make_shared<std::vector<long>>(std::vector<long>{10, 100, 1000});
  auto band = std::make_shared<double>(0);
  auto limit = std::make_shared<long>(ProbeOptions{}.mpfr_limit);
  sc->add_option("--ell", *ell, "order ell");
  sc->add_option("--Ns", *Ns, "cutoff scales")->delimiter(',');
  sc->add_option("--band", *band, "max/min bound on R log N (0: report only)");
  add_probe_opts(sc, *limit);
  return [=](const Ctx& c, Report& r) -> Outcome {
    ProbeOptions opt{c.p, *limit};
    r.config("ell", cell(*ell));
    r.config("Ns", cell(join(*Ns)));
    r.config("band", cell(*band));
    r.config("mpfr_limit", cell(*limit));
    auto rows = criticality_probe(*ell, *Ns, opt);
    r.column("N");
    r.column("total_remainder");
    r.column("scaled");
    for (long k = 0; k < *ell; ++k) r.column("R" + std::to_string(k));
    Outcome fail;
    double lo = 0;
    double hi = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      r.begin_row();
      r.put(cell(row.N));
      r.put(cell(row.total_remainder));
      r.put(cell(row.scaled));
      for (double v : row.per_k) r.put(cell(v));
      if (i == 0 || row.scaled < lo) lo = row.scaled;
      if (i == 0 || row.scaled > hi) hi = row.scaled;
      if (i > 0 && !(row.total_remainder < rows[i - 1].total_remainder) && !fail) {
        fail = "total_remainder not decreasing at N=" + std::to_string(row.N);
      }
    }
    double ratio = lo > 0 ? hi / lo : 0;
    r.summary("decreasing", cell(!fail.has_value()));
    r.summary("band_ratio", cell(ratio));
    if (!fail && *band > 0 && !(ratio <= *band)) fail = "R log N band ratio exceeds --band";
    r.summary("pass", cell(!fail.has_value()));
    return fail;
  };
}

Handler cmd_probe_optimality(CLI::App& app) {
  auto* sc = app.add_subcommand("probe-optimality", "remainder/weight ratio of the plateau cutoff");
  auto ell = std::make_shared<long>(1);
  auto M = std::make_shared<long>(-1);
  auto Ns = std::make_shared<std::vector<long>>(std::vector<long>{10, 30, 100});
  auto floor_ = std::make_shared<double>(0.5);
  auto limit = std::make_shared<long>(ProbeOptions{}.mpfr_limit);
  sc->add_option("--ell", *ell, "order ell");
  sc->add_option("--M", *M, "lower bound on N (default ell)");
  sc->add_option("--Ns", *Ns, "cutoff scales")->delimiter(',');
  sc->add_option("--floor", *floor_, "required lower bound on weight_sum");
  add_probe_opts(sc, *limit);
  return [=](const Ctx& c, Report& r) -> Outcome {
    long m = *M < 0 ? *ell : *M;
    ProbeOptions opt{c.p, *limit};
    r.config("ell", cell(*ell));
    r.config("M", cell(m));
    r.config("Ns", cell(join(*Ns)));
    r.config("floor", cell(*floor_));
    r.config("mpfr_limit", cell(*limit));
    auto rows = optimality_probe(*ell, m, *Ns, opt);
    r.column("N");
    r.column("remainder_sum");
    r.column("weight_sum");
    r.column("ratio");
    for (long k = 0; k < *ell; ++k) r.column("R" + std::to_string(k));
    Outcome fail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      r.begin_row();
      r.put(cell(row.N));
      r.put(cell(row.remainder_sum));
      r.put(cell(row.weight_sum));
      r.put(cell(row.ratio));
      for (double v : row.per_k) r.put(cell(v));
      if (i > 0 && !(row.ratio < rows[i - 1].ratio) && !fail) {
        fail = "ratio not decreasing at N=" + std::to_string(row.N);
      }
      if (!(row.weight_sum >= *floor_) && !fail) {
        fail = "weight_sum below floor at N=" + std::to_string(row.N);
      }
    }
    r.summary("pass", cell(!fail.has_value()));
    return fail;
  };
}

Handler cmd_probe_attainability(CLI::App& app) {
  auto* sc = app.add_subcommand("probe-attainability", "partial sums for u = g(q) cut at a horizon");
  auto ell = std::make_shared<long>(1);
  auto q = std::make_shared<std::string>("1/4");
  auto horizons = std::make_shared<std::vector<long>>(std::vector<long>{1000, 10000});
  auto cauchy = std::make_shared<double>(0.1);
  sc->add_option("--ell", *ell, "order ell");
  sc->add_option("--q", *q, "exponent q in (0, 1/2)");
  sc->add_option("--horizons", *horizons, "truncation horizons")->delimiter(',');
  sc->add_option("--cauchy", *cauchy, "relative bound on successive rhs differences");
  return [=](const Ctx& c, Report& r) -> Outcome {
    Rational qq = Rational::parse(*q);
    r.config("ell", cell(*ell));
    r.config("q", cell(qq));
    r.config("horizons", cell(join(*horizons)));
    r.config("cauchy", cell(*cauchy));
    r.column("horizon");
    r.real_column("lhs_partial");
    r.real_column("rhs_partial");
    r.real_column("gap");
    Outcome fail;
    std::optional<Real> prev;
    for (long h : *horizons) {
      AttainabilityReport rep = attainability_probe(*ell, qq, h, c.p);
      r.begin_row();
      r.put(cell(h));
      r.put_real(rep.lhs_partial);
      r.put_real(rep.rhs_partial);
      r.put_real(rep.gap);
      if (prev) {
        Real diff = abs(rep.rhs_partial - *prev);
        if (!(diff.to_double() < *cauchy * std::abs(rep.rhs_partial.to_double())) && !fail) {
          fail = "rhs_partial not Cauchy at horizon " + std::to_string(h);
        }
      }
      prev = rep.rhs_partial;
    }
    r.summary("pass", cell(!fail.has_value()));
    return fail;
  };
}

Handler cmd_matrix_factor(CLI::App& app) {
  auto* sc = app.add_subcommand("matrix-factor", "(-Δ)^ell = diag(ρ) + Σ R̃ᵀR̃ on a truncation");
  auto f = std::make_shared<FamilyOpts>();
  auto size = std::make_shared<long>(64);
  auto top = std::make_shared<long>(-1);
  auto bottom = std::make_shared<long>(-1);
  auto omit = std::make_shared<long>(-1);
  auto tol = std::make_shared<std::string>();
  auto dump_what = std::make_shared<std::string>("factor");
  auto dump_k = std::make_shared<long>(0);
  auto dump_file = std::make_shared<std::string>();
  add_family_opts(sc, *f);
  sc->add_option("--size", *size, "matrix size");
  sc->add_option("--top-margin", *top, "excluded top rows (default ell)");
  sc->add_option("--bottom-margin", *bottom, "excluded bottom rows (default 2 ell)");
  sc->add_option("--omit-k", *omit, "leave out one remainder factor");
  sc->add_option("--tol", *tol, "absolute tolerance (default 2^-(p-20))");
  sc->add_option("--dump", *dump_what, "matrix to dump: toeplitz, dirichlet, factor")
      ->check(CLI::IsMember({"toeplitz", "dirichlet", "factor"}));
  sc->add_option("--dump-k", *dump_k, "k of the dumped factor");
  sc->add_option("--dump-file", *dump_file, "write the dumped matrix as CSV here");
  return [=](const Ctx& c, Report& r) -> Outcome {
    WeightSpec s = build_spec(*f);
    Real t = tolerance_or(*tol, c.p);
    FactorizationOptions o{*top, *bottom, *omit};
    echo_family(r, s);
    r.config("size", cell(*size));
    r.config("top_margin", cell(*top < 0 ? s.ell : *top));
    r.config("bottom_margin", cell(*bottom < 0 ? 2 * s.ell : *bottom));
    r.config("omit_k", cell(*omit));
    r.config("tolerance", cell(t));
    SequenceFactory g = family_sequence(s);
    FactorizationReport rep = factorization_check(g, s.ell, *size, c.p, o);
    r.column("first");
    r.column("last");
    r.real_column("max_residual");
    r.column("worst_row");
    r.column("worst_col");
    r.begin_row();
    r.put(cell(rep.first));
    r.put(cell(rep.last));
    r.put_real(rep.max_residual);
    r.put(cell(rep.worst_row));
    r.put(cell(rep.worst_col));
    if (!dump_file->empty()) {
      std::ofstream os(*dump_file);
      if (!os) throw std::invalid_argument("cannot open --dump-file " + *dump_file);
      if (*dump_what == "toeplitz") {
        write_csv(os, toeplitz_power(s.ell, *size));
      } else if (*dump_what == "dirichlet") {
        write_csv(os, dirichlet_power(s.ell, *size));
      } else {
        Precision work = widened(c.p, difference_guard_bits(s.ell, *size + 3 * s.ell));
        RealBandMatrix R = remainder_factor(g(work), s.ell, *dump_k, *size);
        RealBandMatrix Rp(R.size(), R.lower_bw(), R.upper_bw(), Real(c.p));
        for (long i = 0; i < R.size(); ++i) {
          for (long j = std::max(0L, i - R.lower_bw()); j <= std::min(R.size() - 1, i + R.upper_bw()); ++j) {
            Rp.at(i, j) = R(i, j).rounded_to(c.p);
          }
        }
        write_csv(os, Rp);
      }
    }
    const bool pass = !(rep.max_residual > t);
    r.summary("pass", cell(pass));
    if (!pass) {
      return "factorization residual " + rep.max_residual.to_string() + " at (" + std::to_string(rep.worst_row) +
             "," + std::to_string(rep.worst_col) + ")";
    }
    return std::nullopt;
  };
}

Handler cmd_corner_defect(CLI::App& app) {
  auto* sc = app.add_subcommand("corner-defect", "T^ell - (-Δ)^ell on the top-left block");
  auto ell = std::make_shared<long>(3);
  sc->add_option("--ell", *ell, "order ell");
  return [=](const Ctx&, Report& r) -> Outcome {
    r.config("ell", cell(*ell));
    auto block = corner_defect(*ell);
    r.column("row");
    r.column("col");
    r.column("defect");
    std::ostringstream text;
    text << "(";
    for (std::size_t i = 0; i < block.size(); ++i) {
      text << (i ? "," : "") << "(";
      for (std::size_t j = 0; j < block[i].size(); ++j) {
        r.begin_row();
        r.put(cell(static_cast<long>(i + 1)));
        r.put(cell(static_cast<long>(j + 1)));
        r.put(cell(block[i][j]));
        text << (j ? "," : "") << block[i][j];
      }
      text << ")";
    }
    text << ")";
    r.summary("block", cell(text.str()));
    // Everything outside the block must agree away from the bottom boundary.
    const long size = 4 * *ell + 4;
    IntBandMatrix d = dirichlet_power(*ell, size);
    IntBandMatrix t = toeplitz_power(*ell, size);
    for (long i = 0; i < size - 2 * *ell; ++i) {
      for (long j = 0; j < size - 2 * *ell; ++j) {
        if (i < *ell - 1 && j < *ell - 1) continue;
        if (d(i, j) != t(i, j)) {
          return "dirichlet and toeplitz differ outside the corner at (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")";
        }
      }
    }
    r.summary("outside_agrees", cell(true));
    return std::nullopt;
  };
}

Handler cmd_alpha_range(CLI::App& app) {
  auto* sc = app.add_subcommand("alpha-range", "admissible alpha for g = sqrt(n(n-1)(n-alpha))");
  auto n_check = std::make_shared<long>(10000);
  auto tol = std::make_shared<std::string>("1e-4");
  auto probes = std::make_shared<std::vector<std::string>>();
  sc->add_option("--n-check", *n_check, "scan horizon");
  sc->add_option("--tol", *tol, "endpoint tolerance");
  sc->add_option("--probe", *probes, "alpha values to test individually")->delimiter(',');
  return [=](const Ctx& c, Report& r) -> Outcome {
    Rational t = Rational::parse(*tol);
    r.config("n_check", cell(*n_check));
    r.config("tol", cell(t));
    AlphaRange range = alpha_admissible_range(*n_check, t, c.p);
    r.column("kind");
    r.column("alpha");
    r.column("alpha_decimal");
    r.column("feasible");
    r.column("first_violation");
    r.column("bisections");
    auto row = [&](const char* kind, const Rational& a, long bis) {
      auto v = alpha_violation(a, *n_check, c.p);
      r.begin_row();
      r.put(cell(kind));
      r.put(cell(a));
      r.put(cell(a.to_double()));
      r.put(cell(!v.has_value()));
      r.put(cell(v ? *v : -1L));
      r.put(cell(bis));
    };
    row("lo", range.lo, range.lo_bisections);
    row("hi", range.hi, range.hi_bisections);
    for (const auto& s : *probes) row("probe", Rational::parse(s), 0);
    r.summary("alpha_lo", cell(range.lo.to_double()));
    r.summary("alpha_hi", cell(range.hi.to_double()));
    return std::nullopt;
  };
}

Handler cmd_compare_weights(CLI::App& app) {
  auto* sc = app.add_subcommand("compare-weights", "rho^(2), rho^GKS and rho^HY side by side");
  auto n_from = std::make_shared<long>(2);
  auto n_to = std::make_shared<long>(20);
  auto K = std::make_shared<long>(20);
  auto ns = std::make_shared<std::vector<long>>();
  sc->add_option("--n-from", *n_from, "first n");
  sc->add_option("--n-to", *n_to, "last n");
  sc->add_option("--n", *ns, "explicit n values instead of a range")->delimiter(',');
  sc->add_option("--K", *K, "hy series terms");
  return [=](const Ctx& c, Report& r) -> Outcome {
    std::vector<long> list = *ns;
    if (list.empty()) {
      if (*n_from < 2 || *n_to < *n_from) throw std::invalid_argument("need 2 <= n-from <= n-to");
      for (long n = *n_from; n <= *n_to; ++n) list.push_back(n);
    }
    std::sort(list.begin(), list.end());
    if (list.front() < 2) throw std::invalid_argument("n must be >= 2");
    r.config("n", cell(join(list)));
    r.config("K", cell(*K));
    WeightSpec rho2 = WeightSpec::canonical(2);
    WeightSpec gks = WeightSpec::gks();
    WeightSpec hy = WeightSpec::hy(*K);
    r.column("n");
    r.real_column("rho2");
    r.real_column("gks");
    r.real_column("hy");
    r.real_column("n4_rho2");
    r.real_column("n4_gks");
    r.real_column("n4_hy");
    r.real_column("hy_truncation_bound");
    r.column("rho2_gt_hy");
    long not_dominated = 0;
    for (long n : list) {
      Real a = rho_eval(rho2, n, c.p);
      Real b = rho_eval(gks, n, c.p);
      Real h = rho_eval(hy, n, c.p);
      Real n4 = pow(Real(n, c.p), 4L);
      r.begin_row();
      r.put(cell(n));
      r.put_real(a);
      r.put_real(b);
      r.put_real(h);
      r.put_real(a * n4);
      r.put_real(b * n4);
      r.put_real(h * n4);
      r.put_real(hy_truncation_bound(n, *K, c.p));
      r.put(cell(a > h));
      if (!(a > h)) ++not_dominated;
    }
    r.summary("rows_rho2_not_above_hy", cell(not_dominated));
    return std::nullopt;
  };
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Hardy-Rellich-Birman weights: tables and verification"};
  app.name("hrb");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* prec_flag = app.add_option("--precision", g.precision, "significand bits in [64, 1024] (env HRB_PRECISION)");
  app.add_option("--seed", g.seed, "64-bit seed for random test vectors");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", g.output, "write the table here instead of stdout");
  app.add_flag("--hex", g.hex, "add hex-float columns for reals");

  std::vector<std::pair<CLI::App*, Handler>> cmds;
  auto reg = [&](Handler (*make)(CLI::App&)) {
    Handler h = make(app);
    cmds.emplace_back(app.get_subcommands([](CLI::App*) { return true; }).back(), std::move(h));
  };
  reg(cmd_weights);
  reg(cmd_coeffs);
  reg(cmd_verify_identity);
  reg(cmd_verify_assumptions);
  reg(cmd_check_ineq);
  reg(cmd_probe_criticality);
  reg(cmd_probe_optimality);
  reg(cmd_probe_attainability);
  reg(cmd_matrix_factor);
  reg(cmd_corner_defect);
  reg(cmd_alpha_range);
  reg(cmd_compare_weights);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "hrb: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Ctx ctx{resolve_precision(g, prec_flag), g.seed};
    for (auto& [sc, handler] : cmds) {
      if (!sc->parsed()) continue;
      Report rep(g.hex);
      rep.config("command", cell(sc->get_name()));
      rep.config("precision", cell(ctx.p.bits));
      rep.config("seed", cell(std::to_string(g.seed)));
      rep.config("format", cell(g.format));
      rep.config("hex", cell(g.hex));
      Outcome fail = handler(ctx, rep);
      Format fmt = g.format == "json" ? Format::json : Format::csv;
      if (g.output.empty()) {
        rep.write(out, fmt);
      } else {
        std::ofstream os(g.output);
        if (!os) {
          err << "hrb: cannot open output file " << g.output << '\n';
          return kExitUsage;
        }
        rep.write(os, fmt);
      }
      if (fail) {
        err << "hrb: FAIL: " << *fail << '\n';
        return kExitFail;
      }
      return kExitPass;
    }
  } catch (const std::invalid_argument& e) {
    err << "hrb: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hrb: FAIL: " << e.what() << '\n';
    return kExitFail;
  }
  err << "hrb: no subcommand\n";
  return kExitUsage;
}

}  // namespace hrb::cli
