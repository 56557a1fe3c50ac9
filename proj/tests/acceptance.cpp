// Acceptance harness: one line per criterion, "criterion N: PASS|FAIL ...".
// With arguments, runs only the listed criteria; exit status is 0 iff all ran criteria pass.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zetadiff/asymptotics.hpp"
#include "zetadiff/bigreal.hpp"
#include "zetadiff/cli.hpp"
#include "zetadiff/contour.hpp"
#include "zetadiff/differences.hpp"
#include "zetadiff/mpcore.hpp"
#include "zetadiff/series.hpp"

using namespace zetadiff;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [miss]");
  }
};

std::string num(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

// n^{-1/4} e^{-2 sqrt(pi n/k)}
BigReal envelope(long n, long k, Bits prec) {
  BigReal N(n, prec);
  BigReal t = sqrt(BigReal(4L, prec) * const_pi(prec) * N / BigReal(k, prec));
  return exp(-t) / sqrt(sqrt(N));
}

void criterion_1(Verdict& v) {
  const std::map<long, std::string> quoted = {{1, "-7.72156e-02"},  {2, "-9.49726e-03"},  {5, "+7.15059e-04"},
                                              {10, "-2.83697e-05"}, {20, "+2.15965e-09"}, {50, "-1.08802e-11"}};
  for (const auto& [n, want] : quoted) {
    std::string got = b(n, PrecisionBudget::for_sequence(SequenceKind::b, n, 15)).value.to_sci_truncated(6);
    v.require(got == want, "b_" + std::to_string(n) + " = " + got);
  }
}

void criterion_2(Verdict& v) {
  std::vector<long> ns;
  for (long n = 1; n <= 200; ++n) ns.push_back(n);
  std::vector<BigReal> vals;
  for (auto& p : sweep(SequenceKind::b, ns, 15)) vals.push_back(p.value);

  // sign changes straight from the values, the fit's list must agree
  std::vector<long> changes;
  for (size_t i = 1; i < vals.size(); ++i)
    if (vals[i].sign() != vals[i - 1].sign()) changes.push_back(static_cast<long>(i) + 1);
  const std::vector<long> quoted = {3, 7, 13, 21, 29, 40, 52, 65, 80, 97, 115, 135, 157, 180};
  std::string list;
  for (long n : changes) list += (list.empty() ? "" : ",") + std::to_string(n);
  v.require(changes == quoted, "changes " + list);

  BetaFit fit = beta_fit(1, vals, 2 * std::sqrt(std::numbers::pi));
  v.require(fit.observed_changes == changes, "fit sees the same changes");
  double ratio = fit.alpha / (std::numbers::pi / 4);
  v.require(std::abs(ratio - 1) < 0.1, "alpha/(pi/4) = " + num(ratio));
}

void criterion_3(Verdict& v) {
  double first = 0, last = 0;
  for (long n : {100L, 200L, 400L, 800L, 1000L}) {
    auto budget = PrecisionBudget::for_sequence(SequenceKind::b, n, 15);
    Bits prec = budget.bits();
    BigReal exact = b(n, budget).value;
    double r = (abs(exact - b_asym(n, prec).main) / envelope(n, 1, prec)).to_double();
    v.require(r <= 5, "n=" + std::to_string(n) + " r=" + num(r) + " (" + std::to_string(budget.working_digits) + " digits)");
    if (n == 100) first = r;
    last = r;
  }
  v.require(last < first, "trend");
}

void criterion_4(Verdict& v) {
  auto rows = cli::figure2_rows(5, 500);
  double max_exact = 0, max_res = 0;
  long at = 0;
  for (const auto& r : rows) {
    if (std::abs(r.scaled_exact) > max_exact) {
      max_exact = std::abs(r.scaled_exact);
      at = r.n;
    }
    if (r.n >= 50) max_res = std::max(max_res, std::abs(r.scaled_exact - r.scaled_asym));
  }
  v.require(rows.size() == 496, std::to_string(rows.size()) + " rows");
  v.require(max_exact <= 1.0, "max |scaled_exact| = " + num(max_exact) + " at n=" + std::to_string(at));
  v.require(max_res < 0.2, "max residual (n>=50) = " + num(max_res));
}

void criterion_5(Verdict& v) {
  const long n = 400;
  for (RationalShift q : {RationalShift{1, 2}, RationalShift{1, 3}, RationalShift{2, 3}}) {
    ConventionReport rep = select_phase_convention(q, 200);
    auto budget = PrecisionBudget::for_sequence(SequenceKind::a, n, 15, q.k);
    Bits prec = budget.bits();
    BigReal exact = a(n, q, budget).value;
    BigReal scale = envelope(n, q.k, prec);
    double r = (abs(exact - a_asym(n, q, prec, rep.selected).main) / scale).to_double();
    double shifted = (abs(exact - a_asym(n, q, prec, PhaseConvention::scaled_shift).main) / scale).to_double();
    v.require(r <= 5, "(" + std::to_string(q.m) + "," + std::to_string(q.k) + ") " + to_string(rep.selected) +
                          " r=" + num(r) + " scaled-shift r=" + num(shifted));
  }
  double worst = 1000;
  Bits prec = digits_to_bits(40);
  for (long n : {1L, 7L, 50L, 333L, 1000L})
    for (auto conv : {PhaseConvention::scaled_shift, PhaseConvention::scaled_no_shift, PhaseConvention::rederived})
      worst = std::min(worst, oracle::agree_rel(a_asym(n, {1, 1}, prec, conv).main, b_asym(n, prec).main));
  v.require(worst >= 38, "a_asym(1,1) vs b_asym " + num(worst) + " digits");
}

void criterion_6(Verdict& v) {
  const std::map<long, std::string> quoted = {{20, "+1.93"}, {50, "+1.987"}, {100, "+1.996"}, {200, "+1.9991"}};
  for (const auto& [n, want] : quoted) {
    int sig = static_cast<int>(want.size()) - 2;
    std::string got = d(n, PrecisionBudget::for_sequence(SequenceKind::d, n, 15)).value.to_sci_truncated(sig);
    v.require(got == want + "e+00", "d_" + std::to_string(n) + " = " + got);
  }
  double worst = 1000;
  for (long n = 2; n <= 100; ++n) {
    auto budget = PrecisionBudget::for_sequence(SequenceKind::d, n, 15);
    worst = std::min(worst, oracle::agree_rel(d(n, budget, Method::moebius).value, d(n, budget).value));
  }
  v.require(worst >= 10, "binomial vs moebius n<=100: " + num(worst) + " digits");
  for (long n : {10L, 50L, 100L, 200L}) {
    auto budget = PrecisionBudget::for_sequence(SequenceKind::d, n, 15);
    BigReal dn = d(n, budget).value;
    double gap = abs(dn - D_of(BigReal(n, budget.bits()), budget)).to_double();
    v.require(gap < std::pow(n, 0.2), "|d-D|(" + std::to_string(n) + ") = " + num(gap));
  }
}

void criterion_7(Verdict& v) {
  const std::string quoted = "0.57821566490153286060651209008240243";
  auto rep = cli::identity_report(499, 40);
  std::string got = rep.value.to_fixed(40);
  v.require(got.rfind(quoted, 0) == 0, "value " + got);
  Bits prec = rep.value.precision();
  BigReal gamma = oracle::euler_gamma_em(prec);
  BigReal eps = rep.value - gamma - BigReal(mpq_class(1, 1000), prec);
  v.require(eps.log10_abs() < -30, "|value - gamma - 1e-3| = " + eps.to_sci(3));
}

void criterion_8(Verdict& v) {
  std::vector<long> ns;
  for (long n = 2; n <= 200; ++n) ns.push_back(n);
  auto pts = sweep(SequenceKind::A, ns, 15, {1, 2});
  Bits prec = digits_to_bits(30);
  BigReal gamma = oracle::euler_gamma_em(prec);
  double slack = 1e300;
  long at = 0, failures = 0;
  for (const auto& p : pts) {
    BigReal N(p.n, prec);
    BigReal half(mpq_class(1, 2), prec);
    BigReal lower = half * N * log(N) + half * (gamma - 1L) * N + half;
    double s = (round_to(p.value, prec) - lower).to_double();
    if (s < 0) ++failures;
    if (s < slack) {
      slack = s;
      at = p.n;
    }
  }
  v.require(failures == 0, "min slack " + num(slack) + " at n=" + std::to_string(at));
}

void criterion_9(Verdict& v) {
  for (RiceKind kind : {RiceKind::zeta_right, RiceKind::zeta_left, RiceKind::inv_zeta}) {
    double worst = 1000;
    for (long n : {5L, 10L, 20L}) {
      BigReal want = kind == RiceKind::zeta_right
                         ? delta(n, PrecisionBudget::for_sequence(SequenceKind::delta, n, 20)).value
                     : kind == RiceKind::zeta_left ? b(n, PrecisionBudget::for_sequence(SequenceKind::b, n, 20)).value
                                                   : d(n, PrecisionBudget::for_sequence(SequenceKind::d, n, 20)).value;
      worst = std::min(worst, oracle::agree_rel(rice_integral(kind, n, ContourSpec::for_kind(kind)).value, want));
    }
    v.require(worst >= 10, to_string(kind) + " " + num(worst) + " digits");
  }
  double worst = 1000;
  for (long n : {10L, 50L})
    worst = std::min(worst, oracle::agree_rel(saddle_contour_integral(n).value,
                                              b(n, PrecisionBudget::for_sequence(SequenceKind::b, n, 20)).value));
  v.require(worst >= 8, "saddle " + num(worst) + " digits");
}

void criterion_10(Verdict& v) {
  Bits prec = digits_to_bits(30);
  double worst = 1000;
  for (long m = 0; m <= 5; ++m) {
    // Z(m) = zeta(m) - 1/(m-1), with Z(0) = 1/2 and Z(1) = gamma
    BigReal want = m == 0   ? BigReal(mpq_class(1, 2), prec)
                   : m == 1 ? oracle::euler_gamma_em(prec)
                            : oracle::hurwitz_em(m, 1, 1, prec) - BigReal(mpq_class(1, m - 1), prec);
    auto got = newton_eval(BigComplex(BigReal(m, prec)), 20, prec);
    worst = std::min(worst, oracle::agree(got.value.re(), want));
  }
  v.require(worst >= 28, "s=0..5 " + num(worst) + " digits (30 carried)");

  BigReal at_m1 = newton_eval(BigComplex(BigReal(-1L, prec)), 500, prec).value.re();
  double d1 = oracle::agree_rel(at_m1, BigReal(mpq_class(5, 12), prec));
  v.require(d1 >= 20, "s=-1 " + num(d1) + " digits");

  BigReal half(mpq_class(1, 2), prec);
  BigReal at_half = newton_eval(BigComplex(half), 500, prec).value.re();
  BigReal zeta_half = BigReal::parse("-1.46035450880958681288949915251529801", prec);
  double d2 = oracle::agree_rel(at_half, zeta_half + 2L);
  double d3 = oracle::agree_rel(at_half, zeta_cx(BigComplex(half), prec).re() + 2L);
  v.require(d2 >= 20 && d3 >= 20, "s=1/2 " + num(d2) + " digits (tabulated), " + num(d3) + " (complex zeta)");
}

void criterion_11(Verdict& v) {
  Bits prec = digits_to_bits(30);
  Bits wide = digits_to_bits(60);
  auto ogf = ogf_coeffs(12, prec);
  auto egf = egf_coeffs(12, prec);
  double worst = 1000;
  mpz_class fact = 1;
  for (long n = 2; n <= 12; ++n) {
    fact *= n;
    BigReal want(0L, wide);
    for (long l = 2; l <= n; ++l) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(l));
      BigReal term = BigReal(binom, wide) * oracle::hurwitz_em(l, 1, 1, wide);
      want = (l % 2 == 0) ? want + term : want - term;
    }
    worst = std::min(worst, oracle::agree_rel(ogf[n], want));
    worst = std::min(worst, oracle::agree_rel(egf[n] * BigReal(fact, prec), want));
  }
  v.require(worst >= 29, "orders 2..12: " + num(worst) + " digits");
}

struct Criterion {
  std::function<void(Verdict&)> run;
  double time_limit;  // seconds, 0 = none stated
};

const std::map<int, Criterion>& criteria() {
  static const std::map<int, Criterion> all = {
      {1, {criterion_1, 60}},  {2, {criterion_2, 120}}, {3, {criterion_3, 600}}, {4, {criterion_4, 0}},
      {5, {criterion_5, 0}},   {6, {criterion_6, 0}},   {7, {criterion_7, 0}},   {8, {criterion_8, 0}},
      {9, {criterion_9, 300}}, {10, {criterion_10, 0}}, {11, {criterion_11, 0}},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    int id = std::atoi(argv[i]);
    if (!criteria().count(id)) {
      std::cerr << "unknown criterion '" << argv[i] << "' (1..11)\n";
      return 2;
    }
    which.push_back(id);
  }
  if (which.empty())
    for (const auto& [id, c] : criteria()) which.push_back(id);

  bool all_pass = true;
  for (int id : which) {
    const Criterion& c = criteria().at(id);
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0) v.require(secs < c.time_limit, "runtime " + num(secs, 3) + "s < " + num(c.time_limit) + "s");
    all_pass = all_pass && v.pass;
    std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail.str() << "  ("
              << num(secs, 3) << "s)" << std::endl;
  }
  return all_pass ? 0 : 1;
}
