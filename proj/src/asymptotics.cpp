#include "zetadiff/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "zetadiff/differences.hpp"
#include "zetadiff/errors.hpp"

namespace zetadiff {

namespace {

// Phase offsets are carried as rational multiples of pi reduced to [0, 2), so
// equivalent offsets give bit-identical cosines.
mpq_class reduce_mod2(mpq_class r) {
  mpz_class fl;
  mpq_class half = r / 2;
  mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  r -= 2 * mpq_class(fl);
  r.canonicalize();
  return r;
}

// One saddle term  scale * (2 p n/(pi k))^(1/4) e^-t cos(t - pi*offset),  t = sqrt(4 pi p n/k).
struct Term {
  BigReal amplitude;
  BigReal phase;
  BigReal main;
};

Term saddle_term(const BigReal& n, long k, long p, const mpq_class& offset, const mpq_class& scale) {
  Bits prec = n.precision() + 16;
  BigReal pi = const_pi(prec);
  BigReal np = round_to(n, prec) * p;
  BigReal t = sqrt(4 * pi * np / k);
  BigReal amp = pow(2 * np / (pi * k), BigReal(mpq_class(1, 4), prec)) * exp(-t);
  if (scale != 1) amp *= BigReal(scale, prec);
  BigReal phase = t - pi * BigReal(reduce_mod2(offset), prec);
  BigReal main = amp * cos(phase);
  Bits out = n.precision();
  return {round_to(amp, out), round_to(phase, out), round_to(main, out)};
}

BigReal error_scale(const BigReal& n, long k) {
  Bits prec = n.precision() + 16;
  BigReal pi = const_pi(prec);
  BigReal nn = round_to(n, prec);
  return round_to(pow(nn, BigReal(mpq_class(-1, 4), prec)) * exp(-2 * sqrt(pi * nn / k)), n.precision());
}

mpq_class offset_for(PhaseConvention conv, long m, long k, long p) {
  switch (conv) {
    case PhaseConvention::scaled_shift: return mpq_class(5, 8) + mpq_class(2 * p * m, k);
    case PhaseConvention::scaled_no_shift: return mpq_class(5, 8);
    case PhaseConvention::rederived: return mpq_class(5, 8) + 1 + mpq_class(p * (2 * m - 1), k);
  }
  return 0;
}

mpq_class scale_for(PhaseConvention conv, long k) {
  return conv == PhaseConvention::rederived ? mpq_class(1) : mpq_class(1, k);
}

AsymptoticEstimate from_term(Term t, BigReal err, std::string order, std::string validity) {
  return {std::move(t.main), std::move(t.amplitude), std::move(t.phase), std::move(err), std::move(order),
          std::move(validity)};
}

double fit_line(const std::vector<double>& x, const std::vector<double>& y, double& intercept) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0) throw FitError("degenerate linear fit");
  double slope = (n * sxy - sx * sy) / det;
  intercept = (sy - slope * sx) / n;
  return slope;
}

// Leading coefficient of the least-squares quadratic through (x, y).
double fit_quadratic_leading(const std::vector<double>& x, const std::vector<double>& y) {
  std::array<double, 5> s{};
  std::array<double, 3> t{};
  for (size_t i = 0; i < x.size(); ++i) {
    double p = 1;
    for (int e = 0; e < 5; ++e) {
      s[e] += p;
      if (e < 3) t[e] += p * y[i];
      p *= x[i];
    }
  }
  // Normal equations M c = t with M[i][j] = s[i+j], solved by Cramer's rule for c2.
  auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = s[i + j];
  double d = det3(m);
  if (d == 0) throw FitError("degenerate quadratic fit");
  for (int i = 0; i < 3; ++i) m[i][2] = t[i];
  return det3(m) / d;
}

double beta_arg(double n, double L) { return std::numbers::pi * (2 * std::sqrt(n / std::numbers::pi) + L); }

}  // namespace

AsymptoticEstimate b_asym(const BigReal& n) {
  if (!(n > 0.0)) throw DomainError("b_asym: n must be positive");
  return from_term(saddle_term(n, 1, 1, offset_for(PhaseConvention::rederived, 1, 1, 1), 1), error_scale(n, 1),
                   "n^(-1/4) e^(-2 sqrt(pi n))", "large n; relative accuracy O(n^(-1/2))");
}

AsymptoticEstimate b_asym(long n, Bits prec) {
  if (n < 1) throw DomainError("b_asym: n must be >= 1");
  return b_asym(BigReal(n, prec));
}

std::string to_string(PhaseConvention c) {
  switch (c) {
    case PhaseConvention::scaled_shift: return "scaled-shift";
    case PhaseConvention::scaled_no_shift: return "scaled-no-shift";
    case PhaseConvention::rederived: return "rederived";
  }
  return "?";
}

PhaseConvention phase_convention_from_string(const std::string& name) {
  for (auto c : {PhaseConvention::scaled_shift, PhaseConvention::scaled_no_shift, PhaseConvention::rederived})
    if (to_string(c) == name) return c;
  throw ValidationError("unknown phase convention '" + name + "'");
}

AsymptoticEstimate a_asym(long n, RationalShift q, Bits prec, PhaseConvention conv, long max_p) {
  q.validate();
  if (n < 1) throw DomainError("a_asym: n must be >= 1");
  if (max_p < 1) throw DomainError("a_asym: max_p must be >= 1");
  BigReal nn(n, prec);
  Term t = saddle_term(nn, q.k, 1, offset_for(conv, q.m, q.k, 1), scale_for(conv, q.k));
  std::string order = "n^(-1/4) e^(-2 sqrt(pi n/k))";
  long top = std::min(max_p, q.k);
  if (top == 1) return from_term(std::move(t), error_scale(nn, q.k), order, "large n; p = 1 saddle only");
  BigReal sum = t.main;
  for (long p = 2; p <= top; ++p) sum += saddle_term(nn, q.k, p, offset_for(conv, q.m, q.k, p), scale_for(conv, q.k)).main;
  BigReal pi = const_pi(prec);
  BigReal phase = sum.sign() < 0 ? pi : BigReal(0L, prec);
  return {sum, abs(sum), phase, error_scale(nn, q.k), order,
          "large n; p = 1.." + std::to_string(top) + " saddles, higher p below the error term"};
}

ConventionReport select_phase_convention(RationalShift q, long n, long target_digits) {
  q.validate();
  auto budget = PrecisionBudget::for_sequence(SequenceKind::a, n, target_digits, q.k);
  BigReal exact = a(n, q, budget).value;
  ConventionReport report{kDefaultConvention, n, exact, {}};
  for (auto c : {PhaseConvention::scaled_shift, PhaseConvention::scaled_no_shift, PhaseConvention::rederived}) {
    auto est = a_asym(n, q, budget.bits(), c);
    report.scaled_residual.push_back(((exact - est.main) / est.error_scale).to_double());
  }
  // At k = 1 all conventions coincide; ties keep the default.
  double best = std::abs(report.scaled_residual[static_cast<size_t>(kDefaultConvention)]);
  for (size_t i = 0; i < report.scaled_residual.size(); ++i) {
    if (std::abs(report.scaled_residual[i]) < best * (1 - 1e-9)) {
      best = std::abs(report.scaled_residual[i]);
      report.selected = static_cast<PhaseConvention>(i);
    }
  }
  return report;
}

BigReal an12_main(long n, Bits prec) {
  if (n < 2) throw DomainError("an12_main: n must be >= 2");
  Bits wp = prec + 16;
  BigReal g = const_euler(wp);
  BigReal psi = harmonic(n - 1, wp) - g;
  BigReal main = psi * n / 2 + (g - BigReal(mpq_class(1, 2), wp) + const_log2(wp) / 2) * n;
  return round_to(main, prec);
}

SaddleData saddle(long n, long k, long p, Bits prec) {
  if (n < 1 || k < 1 || p < 1) throw DomainError("saddle: n, k, p must be >= 1");
  Bits wp = prec + 16;
  BigReal pi = const_pi(wp);
  BigReal r = sqrt(pi * p / k);
  BigComplex x0(r, r);
  BigReal rn = sqrt(BigReal(n, wp));
  BigComplex sigma = x0 * rn;
  // omega(x sqrt n) = x sqrt n [2 log x - 2 - log(2 pi p/k) - i pi/2] + log(n)/2 - log x + log(2 pi) - x^2/2
  BigReal lam = 2 * pi * p / k;
  BigComplex lx = log(x0);
  BigComplex bracket = lx * 2L - 2L - log(lam) - BigComplex(BigReal(0L, wp), pi / 2);
  BigComplex omega = x0 * rn * bracket + log(BigReal(n, wp)) / 2 - lx + log(2 * pi) - x0 * x0 * BigReal(mpq_class(1, 2), wp);
  BigComplex omega2 = BigComplex(BigReal(2L, wp)) / (x0 * rn);
  BigReal dir = pi * 5 / 8;
  return {round_to(sigma, prec), round_to(x0, prec), round_to(dir, prec), round_to(omega, prec),
          round_to(omega2, prec)};
}

BigComplex omega_exact(const BigComplex& s, long n, long k, long p, Bits prec) {
  if (!(s.re() > 0.0)) throw DomainError("omega_exact: needs Re(s) > 0");
  Bits wp = prec + 16;
  BigReal pi = const_pi(wp);
  BigComplex sw = round_to(s, wp);
  BigReal lognfact = log(BigReal(factorial(n), wp));
  BigComplex w = -(sw * log(2 * pi * p / k)) - BigComplex(BigReal(0L, wp), pi / 2) * sw;
  w = w + lognfact + lgamma_cx(sw, wp) * 2L - lgamma_cx(sw + n, wp);
  return round_to(w, prec);
}

BigComplex saddle_formula(const BigComplex& f_at_x0, const BigComplex& f2_at_x0, const BigReal& N) {
  if (f2_at_x0.re().is_zero() && f2_at_x0.im().is_zero())
    throw DegenerateSaddleError("saddle_formula: second derivative vanishes");
  Bits prec = max(max(f_at_x0.precision(), f2_at_x0.precision()), N.precision());
  BigReal two_pi = 2 * const_pi(prec);
  BigComplex root = sqrt(BigComplex(two_pi) / (f2_at_x0 * N));
  return root * exp(-(f_at_x0 * N));
}

BigComplex saddle_formula(const BigComplex& f_at_x0, const BigComplex& f2_at_x0, const BigReal& N,
                          const BigReal& direction) {
  BigComplex v = saddle_formula(f_at_x0, f2_at_x0, N);
  // The square root contributes arg in (-pi/2, pi/2]; flip if the opposite
  // orientation is closer to the requested direction.
  Bits prec = v.precision();
  BigReal pi = const_pi(prec);
  BigReal root_arg = -arg(f2_at_x0 * N) / 2;
  BigReal diff = direction - root_arg;
  // distance of diff to the nearest multiple of 2 pi
  BigReal turns = round_int(diff / (2 * pi));
  BigReal dist = abs(diff - turns * 2 * pi);
  if (dist > pi / 2) return -v;
  return v;
}

BigReal saddle_reconstruction(long n, Bits prec) {
  Bits wp = prec + 16;
  SaddleData sd = saddle(n, 1, 1, wp);
  BigReal one(1L, wp);
  BigComplex g = saddle_formula(-sd.omega_at_sigma, -sd.omega2_at_sigma, one, sd.direction);
  BigReal pi = const_pi(wp);
  BigReal k0 = -one / (4 * pi * pi);
  BigComplex plus = g * sd.x0 * (k0 / sqrt(BigReal(n, wp)));
  return round_to(plus.re() * 2, prec);
}

BetaFit beta_fit(long lo, const std::vector<BigReal>& b_values, double K) {
  if (b_values.empty()) throw FitError("beta_fit: empty range");
  if (!(K > 0)) throw FitError("beta_fit: K must be positive");
  BetaFit fit;
  fit.K = K;
  long hi = lo + static_cast<long>(b_values.size()) - 1;
  auto bval = [&](long n) -> const BigReal& { return b_values[static_cast<size_t>(n - lo)]; };
  for (long n = lo + 1; n <= hi; ++n)
    if (bval(n).sign() * bval(n - 1).sign() < 0) fit.observed_changes.push_back(n);
  if (fit.observed_changes.empty()) throw FitError("beta_fit: no sign changes in range");

  // A zero of beta sits where 2 sqrt(n/pi) + L = j + 1/2. Each observed change
  // places a zero near n - 1/2; L is determined mod 1 by the circular mean of
  // the implied offsets, then refined by least squares with fixed j.
  std::vector<double> u;
  for (long n : fit.observed_changes) u.push_back(2 * std::sqrt((n - 0.5) / std::numbers::pi));
  double cs = 0, sn = 0;
  for (double x : u) {
    double off = 0.5 - x;
    cs += std::cos(2 * std::numbers::pi * off);
    sn += std::sin(2 * std::numbers::pi * off);
  }
  double L0 = std::atan2(sn, cs) / (2 * std::numbers::pi);
  double acc = 0, sq = 0;
  std::vector<double> j(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    j[i] = std::round(u[i] + L0 - 0.5);
    acc += j[i] + 0.5 - u[i];
  }
  double L = acc / static_cast<double>(u.size());
  for (size_t i = 0; i < u.size(); ++i) sq += std::pow(j[i] + 0.5 - u[i] - L, 2);
  fit.zero_rms = std::sqrt(sq / static_cast<double>(u.size()));

  // Zeros fix L only mod 1; the signs pick between L and L + 1.
  auto agreement = [&](double Lc) {
    long agree = 0;
    for (long n = std::max(lo, 1L); n <= hi; ++n) {
      double c = std::cos(beta_arg(static_cast<double>(n), Lc));
      if ((c > 0) == (bval(n).sign() > 0)) ++agree;
    }
    return agree;
  };
  long a0 = agreement(L), a1 = agreement(L + 1);
  if (a1 > a0) L += 1;
  fit.sign_agreement = std::max(a0, a1);
  fit.L = L - 2 * std::ceil((L - 1) / 2);  // into (-1, 1]
  fit.points = hi - std::max(lo, 1L) + 1;

  for (long n = std::max(lo, 1L) + 1; n <= hi; ++n) {
    double c0 = std::cos(beta_arg(n - 1.0, fit.L)), c1 = std::cos(beta_arg(static_cast<double>(n), fit.L));
    if ((c0 > 0) != (c1 > 0)) fit.predicted_changes.push_back(n);
  }

  if (fit.observed_changes.size() >= 3) {
    std::vector<double> kk, qq;
    for (size_t i = 0; i < fit.observed_changes.size(); ++i) {
      kk.push_back(static_cast<double>(i + 1));
      qq.push_back(static_cast<double>(fit.observed_changes[i]));
    }
    fit.alpha = fit_quadratic_leading(kk, qq);
  }

  // Amplitude: with K fixed, the best intercept of log|b| - log|cos| + K sqrt n.
  std::vector<double> res;
  for (long n = std::max(lo, 1L); n <= hi; ++n) {
    double c = std::cos(beta_arg(static_cast<double>(n), fit.L));
    if (std::abs(c) <= 0.5 || bval(n).is_zero()) continue;
    res.push_back(bval(n).log10_abs() * std::numbers::ln10 - std::log(std::abs(c)) + K * std::sqrt(double(n)));
  }
  if (!res.empty()) {
    double mean = 0;
    for (double r : res) mean += r;
    mean /= static_cast<double>(res.size());
    double var = 0;
    for (double r : res) var += (r - mean) * (r - mean);
    fit.log_intercept = mean;
    fit.log_rms = std::sqrt(var / static_cast<double>(res.size()));
  }
  return fit;
}

BetaFit beta_fit(long lo, long hi, double K) {
  if (lo < 0 || hi < lo) throw FitError("beta_fit: empty range");
  std::vector<long> ns;
  for (long n = lo; n <= hi; ++n) ns.push_back(n);
  std::vector<BigReal> vals;
  for (auto& pt : sweep(SequenceKind::b, ns, 15)) vals.push_back(std::move(pt.value));
  return beta_fit(lo, vals, K);
}

double fit_decay_constant(long lo, const std::vector<BigReal>& b_values, double L) {
  std::vector<double> x, y;
  for (size_t i = 0; i < b_values.size(); ++i) {
    double n = static_cast<double>(lo) + static_cast<double>(i);
    if (n < 1 || b_values[i].is_zero()) continue;
    double c = std::cos(beta_arg(n, L));
    if (std::abs(c) <= 0.5) continue;
    x.push_back(std::sqrt(n));
    y.push_back(b_values[i].log10_abs() * std::numbers::ln10 - std::log(std::abs(c)));
  }
  if (x.size() < 2) throw FitError("fit_decay_constant: too few usable points");
  double c;
  return -fit_line(x, y, c);
}

std::vector<double> b_asym_zeros(double max_n) {
  std::vector<double> zeros;
  for (long j = -1;; ++j) {
    double z = std::numbers::pi * std::pow(j + 9.0 / 8.0, 2) / 4;
    if (z > max_n) break;
    zeros.push_back(z);
  }
  return zeros;
}

}  // namespace zetadiff
