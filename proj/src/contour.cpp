#include "zetadiff/contour.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "zetadiff/errors.hpp"
#include "zetadiff/mpcore.hpp"
#include "zetadiff/quadrature.hpp"

namespace zetadiff {

namespace {

constexpr long kMaxN = 100;
constexpr long kDigitCap = 30;
constexpr long kGuardDigits = 10;

// Bounds used for truncation certificates.
constexpr double kZeta32 = 2.6124;        // zeta(3/2), rounded up
constexpr double kInvZeta32 = 2.1733;     // zeta(3/2)/zeta(3), bounds 1/|zeta| on Re s = 3/2
constexpr double kLeftLine = 0.5882;      // |zeta(-1/2+it)| <= kLeftLine * sqrt(t^2 + 1/4)
constexpr double kZeta2 = 1.6450;         // bounds |zeta| and 1/|zeta| for Re s >= 2

double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1); }

// n!/(s(s-1)...(s-n))
BigComplex rice_kernel(const BigComplex& s, long n, const BigReal& nfact) {
  BigComplex prod = s;
  for (long j = 1; j <= n; ++j) prod *= (s - j);
  return BigComplex(nfact) / prod;
}

// n!/(u(u+1)...(u+n))
BigComplex reflected_kernel(const BigComplex& u, long n, const BigReal& nfact) {
  BigComplex prod = u;
  for (long j = 1; j <= n; ++j) prod *= (u + j);
  return BigComplex(nfact) / prod;
}

long cancellation(RiceKind kind, long n) {
  if (kind == RiceKind::zeta_left)
    return static_cast<long>(std::ceil(2 * std::sqrt(std::numbers::pi * n) / std::numbers::ln10)) + 1;
  return static_cast<long>(std::ceil(std::log10(static_cast<double>(n) + 1)));
}

double b_scale(long n) {
  double x = static_cast<double>(n);
  return std::pow(2 * x / std::numbers::pi, 0.25) * std::exp(-2 * std::sqrt(std::numbers::pi * x));
}

// Natural size of the result, for turning significant digits into an absolute tolerance.
double result_scale(RiceKind kind, long n) {
  switch (kind) {
    case RiceKind::zeta_right: return std::max(1.0, n * std::log(static_cast<double>(n)));
    case RiceKind::zeta_left: return b_scale(n);
    case RiceKind::inv_zeta: return 1.0;
  }
  return 1.0;
}

long working_digits_for(long target, long cancel) {
  if (target + cancel > kDigitCap)
    throw BudgetError("quadrature oracle is capped at " + std::to_string(kDigitCap) + " digits; target " +
                          std::to_string(target) + " plus cancellation " + std::to_string(cancel) + " exceeds it",
                      target + cancel);
  return target + cancel + kGuardDigits;
}

std::vector<double> uniform_breaks(double length, double step) {
  std::vector<double> b{0.0};
  long count = std::max(1L, static_cast<long>(std::ceil(length / step)));
  for (long i = 1; i < count; ++i) b.push_back(length * static_cast<double>(i) / static_cast<double>(count));
  b.push_back(length);
  return b;
}

// Vertical line: fine panels near the real axis (poles sit half a unit away), then steps of 2.
std::vector<double> vertical_breaks(double T) {
  std::vector<double> b{0.0};
  for (double t : {0.125, 0.25, 0.5, 1.0, 2.0})
    if (t < T) b.push_back(t);
  for (double t = 4.0; t < T; t += 2.0) b.push_back(t);
  b.push_back(T);
  return b;
}

// Horizontal tail: panel length grows with distance from the origin.
std::vector<double> horizontal_breaks(double c, double T, double length) {
  std::vector<double> b{0.0};
  double tau = 0;
  for (;;) {
    double step = std::max(1.0, 0.5 * std::hypot(c + tau, T));
    tau += step;
    if (tau >= length) break;
    b.push_back(tau);
  }
  b.push_back(length);
  return b;
}

// Vertical-line truncation bound beyond T, already divided by pi.
double vertical_tail_bound(RiceKind kind, long n, double T) {
  double lf = log_factorial(n), x = static_cast<double>(n);
  switch (kind) {
    case RiceKind::zeta_right: return kZeta32 * std::exp(lf - x * std::log(T)) / x / std::numbers::pi;
    case RiceKind::inv_zeta: return kInvZeta32 * std::exp(lf - x * std::log(T)) / x / std::numbers::pi;
    case RiceKind::zeta_left:
      return kLeftLine * (std::exp(lf - (x - 1) * std::log(T)) / (x - 1) + 0.5 * std::exp(lf - x * std::log(T)) / x) /
             std::numbers::pi;
  }
  return INFINITY;
}

// Horizontal ray at height T beyond Re s = x (x >= max(2, n+1)): zeta(2) n!/(n (x-n)^n)/pi.
double horizontal_tail_bound(long n, double x) {
  return kZeta2 * std::exp(log_factorial(n) - static_cast<double>(n) * std::log(x - static_cast<double>(n))) /
         static_cast<double>(n) / std::numbers::pi;
}

BigReal to_big(double x, Bits prec) { return BigReal(x, prec); }

void check_n(long n, long lo, const char* who) {
  if (n < lo) throw DomainError(std::string(who) + ": n must be >= " + std::to_string(lo));
  if (n > kMaxN) throw DomainError(std::string(who) + ": quadrature paths are limited to n <= 100");
}

}  // namespace

std::string to_string(RiceKind k) {
  switch (k) {
    case RiceKind::zeta_right: return "zeta-right";
    case RiceKind::zeta_left: return "zeta-left";
    case RiceKind::inv_zeta: return "inv-zeta";
  }
  return "?";
}

RiceKind rice_kind_from_string(const std::string& name) {
  if (name == "zeta-right" || name == "right") return RiceKind::zeta_right;
  if (name == "zeta-left" || name == "left") return RiceKind::zeta_left;
  if (name == "inv-zeta" || name == "inv") return RiceKind::inv_zeta;
  throw ValidationError("unknown contour kind '" + name + "'");
}

ContourSpec ContourSpec::vertical(double c) {
  ContourSpec s;
  s.abscissa = c;
  return s;
}

ContourSpec ContourSpec::saddle(double c1, double c2) {
  ContourSpec s;
  s.shape = Shape::saddle_path;
  s.c1 = c1;
  s.c2 = c2;
  return s;
}

ContourSpec ContourSpec::for_kind(RiceKind kind) { return vertical(kind == RiceKind::zeta_left ? -0.5 : 1.5); }

void ContourSpec::validate() const {
  if (panels < 1) throw ValidationError("panels must be >= 1");
  if (order < 2) throw ValidationError("quadrature order must be >= 2");
  if (target_digits < 1) throw ValidationError("target digits must be >= 1");
  if (!(T >= 0) || !std::isfinite(T)) throw ValidationError("T must be finite and >= 0");
  if (shape == Shape::vertical) {
    if (!std::isfinite(abscissa) || abscissa == std::round(abscissa))
      throw ValidationError("abscissa must avoid the integers");
  } else {
    double rp = std::sqrt(std::numbers::pi);
    if (!(c1 > 0 && c1 < rp && rp < c2 && c2 < 2 * rp))
      throw ValidationError("saddle path needs 0 < c1 < sqrt(pi) < c2 < 2 sqrt(pi)");
  }
}

BigReal rice_sum_residues(const std::function<BigReal(long)>& phi, long n0, long n, Bits prec) {
  if (n < 0 || n0 < 0) throw DomainError("rice_sum_residues: indices must be >= 0");
  BigReal sum(0L, prec);
  mpz_class nfact = factorial(n);
  for (long k = n0; k <= n; ++k) {
    // Res_{s=k} n!/(s(s-1)...(s-n)) = n! / prod_{j != k} (k - j)
    mpz_class den = 1;
    for (long j = 0; j <= n; ++j)
      if (j != k) den *= (k - j);
    BigReal res = BigReal(mpq_class(nfact, den), prec);
    sum += phi(k) * res;
  }
  if (n % 2) sum = -sum;
  return sum;
}

ContourResult rice_integral(RiceKind kind, long n, const ContourSpec& spec) {
  spec.validate();
  if (spec.shape != ContourSpec::Shape::vertical) throw ValidationError("rice_integral needs a vertical line");
  check_n(n, kind == RiceKind::zeta_left ? 4 : 2, "rice_integral");
  double c = spec.abscissa;
  bool right = kind != RiceKind::zeta_left;
  if (right && !(c > 1 && c < 2)) throw DomainError("rice_integral: the right-hand lines need 1 < c < 2");
  if (!right && !(c > -1 && c < 0)) throw DomainError("rice_integral: the left line needs -1 < c < 0");

  long wd = working_digits_for(spec.target_digits, cancellation(kind, n));
  Bits prec = digits_to_bits(wd);
  double tol = result_scale(kind, n) * std::pow(10.0, -static_cast<double>(spec.target_digits));
  double T = spec.T > 0 ? spec.T : std::max(8.0, n / 2.0);

  ContourResult out;
  out.working_digits = wd;
  out.T = T;

  std::vector<Segment> segs;
  BigReal cr = to_big(c, prec), Tr = to_big(T, prec), zero(0L, prec);
  segs.push_back({BigComplex(cr, zero), BigComplex(cr, Tr), vertical_breaks(T)});
  double trunc;
  if (spec.tail == TailMode::truncate) {
    trunc = vertical_tail_bound(kind, n, T);
    if (trunc > tol / 4) {
      double need = T;
      while (vertical_tail_bound(kind, n, need) > tol / 4) need *= 1.25;
      throw TruncationError("truncation bound " + std::to_string(trunc) + " at T=" + std::to_string(T) +
                            " exceeds the tolerance " + std::to_string(tol / 4) + "; T >= " +
                            std::to_string(std::ceil(need)) + " is required");
    }
  } else {
    double lo = std::max({2.0, static_cast<double>(n) + 1, c + 1});
    double need = static_cast<double>(n) +
                  std::exp((std::log(kZeta2 / (static_cast<double>(n) * std::numbers::pi)) + log_factorial(n) -
                            std::log(tol / 4)) /
                           static_cast<double>(n));
    double xmax = std::max(lo, need);
    trunc = horizontal_tail_bound(n, xmax);
    segs.push_back({BigComplex(cr, Tr), BigComplex(to_big(xmax, prec), Tr), horizontal_breaks(c, T, xmax - c)});
  }
  out.truncation_bound = BigReal(trunc, prec);

  BigReal nfact(factorial(n), prec);
  std::function<BigComplex(const BigComplex&)> f = [&](const BigComplex& s) {
    BigComplex k = rice_kernel(s, n, nfact);
    BigComplex z = zeta_cx(s, prec);
    return kind == RiceKind::inv_zeta ? k / z : k * z;
  };

  QuadratureOptions opt;
  opt.order = spec.order;
  opt.refine = spec.panels;
  // The result is Im(integral)/pi; split the quadrature budget over the segments.
  opt.tolerance = BigReal(tol / 4 * std::numbers::pi / static_cast<double>(segs.size()), prec);

  BigComplex total(prec);
  BigReal qerr(0L, prec);
  for (const Segment& seg : segs) {
    PathIntegral part = integrate_segment(seg, f, opt);
    total += part.value;
    qerr += part.error_estimate;
    out.evaluations += part.evaluations;
    out.panels += part.panels;
  }
  BigReal pi = const_pi(prec);
  BigReal value = total.im() / pi;
  if (n % 2 == 0) value = -value;  // (-1)^(n-1)
  out.value = value;
  out.quadrature_error = qerr / pi;
  if (out.quadrature_error > BigReal(tol / 2, prec))
    throw TruncationError("quadrature error estimate " + out.quadrature_error.to_sci(3) + " exceeds the tolerance");
  out.central = BigReal(0L, prec);
  out.slanted = BigReal(0L, prec);
  out.vertical = value;
  return out;
}

ContourResult saddle_contour_integral(long n, const ContourSpec& spec) {
  spec.validate();
  if (spec.shape != ContourSpec::Shape::saddle_path) throw ValidationError("saddle_contour_integral needs a saddle path");
  check_n(n, 4, "saddle_contour_integral");
  long wd = working_digits_for(spec.target_digits, 2);
  Bits prec = digits_to_bits(wd);
  double tol = b_scale(n) * std::pow(10.0, -static_cast<double>(spec.target_digits));

  const double rn = std::sqrt(static_cast<double>(n));
  const double a = std::sqrt(std::numbers::pi * n);  // sigma = a + ia
  const double phi = 5 * std::numbers::pi / 8;
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  // Points on the slanted line are sigma + t e^{i phi}.
  double t_real = -a / sphi;                // meets the real axis
  double t_c2 = (spec.c2 * rn - a) / cphi;  // meets Re u = c2 sqrt(n)
  bool use_c2 = t_c2 > t_real;              // c2 vertical reached before the real axis
  double t_start = use_c2 ? t_c2 : t_real;
  double t_c1 = (spec.c1 * rn - a) / cphi;  // meets Re u = c1 sqrt(n), t > 0
  double w = std::min({4 * std::pow(static_cast<double>(n), 0.25), 0.5 * t_c1, 0.5 * -t_start});
  double y1 = a + t_c1 * sphi;
  double T = spec.T > 0 ? spec.T : y1 + rn;
  if (T < y1) throw ValidationError("T must lie above the point where the slanted line meets c1 sqrt(n)");

  BigReal pi = const_pi(prec);
  BigReal ar(a, prec);
  BigComplex sigma(ar, ar);
  BigComplex e(to_big(cphi, prec), to_big(sphi, prec));
  auto on_line = [&](double t) { return sigma + e * to_big(t, prec); };
  BigReal nfact(factorial(n), prec);
  BigReal log2pi = log(2 * pi);
  std::function<BigComplex(const BigComplex&)> F = [&](const BigComplex& u) {
    BigComplex pw = exp(-((u + 1L) * log2pi));
    BigComplex sn = sin(u * (pi / 2));
    return pw * sn * zeta_cx(u + 1L, prec) * gamma_cx(u + 1L, prec) * reflected_kernel(u, n, nfact);
  };

  double step = std::max(0.5, std::pow(static_cast<double>(n), 0.25) / 2);
  std::vector<Segment> vertical_group, slanted_group, central_group;
  BigReal zero(0L, prec);
  if (use_c2) {
    BigComplex top = on_line(t_c2);
    vertical_group.push_back({BigComplex(top.re(), zero), top, uniform_breaks(top.im().to_double(), step)});
  }
  slanted_group.push_back({on_line(t_start), on_line(-w), uniform_breaks(-w - t_start, step)});
  central_group.push_back({on_line(-w), on_line(w), uniform_breaks(2 * w, step)});
  slanted_group.push_back({on_line(w), on_line(t_c1), uniform_breaks(t_c1 - w, step)});
  BigReal x1(spec.c1 * rn, prec);
  BigComplex p1(x1, to_big(y1, prec)), p2(x1, to_big(T, prec));
  if (T > y1) vertical_group.push_back({p1, p2, uniform_breaks(T - y1, std::max(step, 1.0))});

  // Beyond T, continue along 5pi/8 where the integrand decays faster than exponentially.
  double cap_step = std::max(1.0, rn / 2);
  double cap_len = 0;
  double prev = INFINITY;
  long shrinking = 0;
  double trunc = INFINITY;
  for (int i = 1; i <= 400; ++i) {
    double len = cap_step * i;
    double mag = abs(F(p2 + e * to_big(len, prec))).to_double();
    shrinking = mag < prev ? shrinking + 1 : 0;
    prev = mag;
    if (shrinking >= 3 && mag * cap_step < tol * 1e-3) {
      cap_len = len;
      trunc = mag * cap_step;
      break;
    }
  }
  if (cap_len == 0) throw TruncationError("saddle path: integrand does not decay along the final ray");
  vertical_group.push_back({p2, p2 + e * to_big(cap_len, prec), uniform_breaks(cap_len, cap_step)});

  QuadratureOptions opt;
  opt.order = spec.order;
  opt.refine = spec.panels;
  size_t nseg = vertical_group.size() + slanted_group.size() + central_group.size();
  // b = -(2/pi) Im(integral)
  opt.tolerance = BigReal(tol / 4 * std::numbers::pi / 2 / static_cast<double>(nseg), prec);

  ContourResult out;
  out.working_digits = wd;
  out.T = T;
  out.truncation_bound = BigReal(trunc * 2 / std::numbers::pi, prec);
  BigReal qerr(0L, prec);
  auto run = [&](const std::vector<Segment>& group) {
    BigComplex sum(prec);
    for (const Segment& seg : group) {
      PathIntegral part = integrate_segment(seg, F, opt);
      sum += part.value;
      qerr += part.error_estimate;
      out.evaluations += part.evaluations;
      out.panels += part.panels;
    }
    return -(sum.im() * 2) / pi;
  };
  out.slanted = run(slanted_group);
  out.central = run(central_group);
  out.vertical = run(vertical_group);
  out.value = out.central + out.slanted + out.vertical;
  out.quadrature_error = qerr * 2 / pi;
  if (out.quadrature_error > BigReal(tol / 2, prec))
    throw TruncationError("quadrature error estimate " + out.quadrature_error.to_sci(3) + " exceeds the tolerance");
  return out;
}

}  // namespace zetadiff
