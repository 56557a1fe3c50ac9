#include "zetadiff/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "zetadiff/errors.hpp"
#include "zetadiff/kernels.hpp"

namespace zetadiff {

namespace {

// P_m(x) and P_m'(x) by the three-term recurrence.
void legendre(long m, const BigReal& x, BigReal& p, BigReal& dp) {
  Bits prec = x.precision();
  BigReal p0(1L, prec), p1 = x;
  for (long k = 2; k <= m; ++k) {
    BigReal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  p = p1;
  // (1 - x^2) P_m' = m (P_{m-1} - x P_m)
  dp = m * (p0 - x * p1) / (1L - x * x);
}

GaussLegendre compute_rule(long m, Bits prec) {
  Bits wp = prec + 32;
  GaussLegendre rule;
  rule.nodes.resize(static_cast<size_t>(m));
  rule.weights.resize(static_cast<size_t>(m));
  for (long i = 0; i < (m + 1) / 2; ++i) {
    // Largest roots first; Newton from the standard cosine guess.
    BigReal x(std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5)), wp);
    BigReal p(wp), dp(wp);
    for (int it = 0; it < 200; ++it) {
      legendre(m, x, p, dp);
      BigReal dx = p / dp;
      x -= dx;
      if (dx.is_zero() || dx.log10_abs() < -static_cast<double>(bits_to_digits(wp)) - 2) break;
    }
    legendre(m, x, p, dp);
    BigReal w = BigReal(2L, wp) / ((1L - x * x) * dp * dp);
    size_t hi = static_cast<size_t>(m - 1 - i), lo = static_cast<size_t>(i);
    rule.nodes[hi] = round_to(x, prec);
    rule.nodes[lo] = round_to(-x, prec);
    rule.weights[hi] = round_to(w, prec);
    rule.weights[lo] = round_to(w, prec);
  }
  if (m % 2 == 1) rule.nodes[static_cast<size_t>(m / 2)] = BigReal(0L, prec);
  return rule;
}

struct Panel {
  BigComplex value;
  BigReal error;
  long evaluations = 0;
  long leaves = 0;
};

}  // namespace

const GaussLegendre& gauss_legendre(long order, Bits prec) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<std::pair<long, mpfr_prec_t>, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{order, prec.count}];
  if (!slot) slot = std::make_unique<GaussLegendre>(compute_rule(order, prec));
  return *slot;
}

PathIntegral integrate_segment(const Segment& seg, const std::function<BigComplex(const BigComplex&)>& f,
                               const QuadratureOptions& opt) {
  if (seg.breaks.size() < 2) throw ValidationError("integrate_segment: needs at least one panel");
  if (opt.refine < 1 || opt.order < 2) throw ValidationError("integrate_segment: bad quadrature options");
  Bits prec = seg.start.precision();
  const GaussLegendre& rule = gauss_legendre(opt.order, prec);
  BigComplex delta = seg.end - seg.start;
  BigReal length(seg.breaks.back(), prec);
  BigComplex dir = delta / length;  // unit direction, ds = dir dtau

  std::vector<std::pair<double, double>> base;
  for (size_t i = 0; i + 1 < seg.breaks.size(); ++i) {
    double a = seg.breaks[i], b = seg.breaks[i + 1];
    for (long r = 0; r < opt.refine; ++r)
      base.emplace_back(a + (b - a) * static_cast<double>(r) / static_cast<double>(opt.refine),
                        r + 1 == opt.refine ? b : a + (b - a) * static_cast<double>(r + 1) / static_cast<double>(opt.refine));
  }

  auto gauss = [&](const BigReal& a, const BigReal& b) {
    BigReal half = (b - a) / 2, mid = (a + b) / 2;
    std::vector<BigComplex> terms;
    terms.reserve(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      BigReal tau = mid + half * rule.nodes[i];
      terms.push_back(f(seg.start + dir * tau) * rule.weights[i]);
    }
    return kernels::pairwise_sum(std::move(terms)) * half * dir;
  };

  std::function<Panel(const BigReal&, const BigReal&, const BigComplex&, const BigReal&, long)> refine;
  refine = [&](const BigReal& a, const BigReal& b, const BigComplex& whole, const BigReal& tol, long depth) -> Panel {
    BigReal mid = (a + b) / 2;
    BigComplex left = gauss(a, mid), right = gauss(mid, b);
    BigComplex halves = left + right;
    BigReal err = abs(halves - whole);
    long evals = 2 * opt.order;
    if (err <= tol || depth >= opt.max_depth) return {halves, err, evals, 1};
    BigReal sub = tol / 2;
    Panel l = refine(a, mid, left, sub, depth + 1);
    Panel r = refine(mid, b, right, sub, depth + 1);
    return {l.value + r.value, l.error + r.error, evals + l.evaluations + r.evaluations, l.leaves + r.leaves};
  };

  long count = static_cast<long>(base.size());
  BigReal share = opt.tolerance / count;
  std::vector<Panel> panels(base.size());
  auto values = kernels::omp::map_complex(count, [&](long i) {
    BigReal a(base[i].first, prec), b(base[i].second, prec);
    Panel p = refine(a, b, gauss(a, b), share, 0);
    p.evaluations += opt.order;
    panels[i] = p;
    return p.value;
  });
  PathIntegral out{kernels::pairwise_sum(std::move(values)), BigReal(0L, prec), 0, 0};
  for (auto& p : panels) {
    out.error_estimate += p.error;
    out.evaluations += p.evaluations;
    out.panels += p.leaves;
  }
  return out;
}

}  // namespace zetadiff
