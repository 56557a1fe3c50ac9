#include "zetadiff/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "zetadiff/differences.hpp"
#include "zetadiff/errors.hpp"
#include "zetadiff/mpcore.hpp"

namespace zetadiff {

namespace {

constexpr long kEnvelopeFrom = 50;
constexpr double kSlack = 1.001;  // covers rounding in the double-precision bound

double log_envelope(double n) {
  return std::log(2.0) + 0.25 * std::log(2 * n / std::numbers::pi) - 2 * std::sqrt(std::numbers::pi * n);
}

BigReal envelope(long n, Bits prec) {
  BigReal pi = const_pi(prec);
  BigReal x(n, prec);
  return 2 * sqrt(sqrt(2 * x / pi)) * exp(-(2 * sqrt(pi * x)));
}

// Is s a nonnegative integer m with C(s,n) = 0 for n > m?
std::optional<long> terminating_index(const BigComplex& s) {
  if (!s.im().is_zero()) return std::nullopt;
  BigReal r = round_int(s.re());
  if (!(r == s.re()) || r < 0.0) return std::nullopt;
  return r.to_long();
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<BigReal> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw ValidationError("TruncatedSeries: needs at least the constant term");
  for (const auto& c : coeffs_)
    if (!c.is_finite()) throw ValidationError("TruncatedSeries: coefficients must be finite");
}

TruncatedSeries TruncatedSeries::zero(long order, Bits prec) {
  if (order < 0) throw DomainError("TruncatedSeries: order must be >= 0");
  return TruncatedSeries(std::vector<BigReal>(static_cast<size_t>(order) + 1, BigReal(0L, prec)));
}

TruncatedSeries TruncatedSeries::monomial(long power, long order, Bits prec) {
  TruncatedSeries out = zero(order, prec);
  if (power >= 0 && power <= order) out.coeffs_[static_cast<size_t>(power)] = BigReal(1L, prec);
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  long m = std::min(a.order(), b.order());
  std::vector<BigReal> c;
  for (long i = 0; i <= m; ++i) c.push_back(a[i] + b[i]);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  long m = std::min(a.order(), b.order());
  std::vector<BigReal> c;
  for (long i = 0; i <= m; ++i) c.push_back(a[i] - b[i]);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  long m = std::min(a.order(), b.order());
  Bits prec = max(a[0].precision(), b[0].precision());
  std::vector<BigReal> c;
  for (long i = 0; i <= m; ++i) {
    BigReal sum(0L, prec);
    for (long j = 0; j <= i; ++j) sum += a[j] * b[i - j];
    c.push_back(std::move(sum));
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const TruncatedSeries& a, const BigReal& c) {
  std::vector<BigReal> out;
  for (const auto& x : a.coeffs_) out.push_back(x * c);
  return TruncatedSeries(std::move(out));
}

double newton_tail_bound(const BigComplex& s, long N) {
  if (N < 0) throw DomainError("newton_tail_bound: N must be >= 0");
  std::complex<double> z(s.re().to_double(), s.im().to_double());
  if (auto m = terminating_index(s); m && *m <= N) return 0.0;
  double r = std::abs(z);
  double q = std::max(0.0, r - 1);
  double p = 0.25 + q;
  // Beyond n2 the bound n^p e^{-2 sqrt(pi n)} is decreasing and the incomplete-gamma estimate holds.
  long n2 = std::max(N + 1, static_cast<long>(std::ceil((2 * p + 1) * (2 * p + 1) / std::numbers::pi)) + 1);

  double logc = 0;  // log |C(s,n)|
  double sum = 0;
  for (long n = 0; n <= n2; ++n) {
    if (n > N) sum += std::exp(log_envelope(static_cast<double>(n)) + logc);
    if (n < n2) logc += std::log(std::abs(z - static_cast<double>(n))) - std::log(static_cast<double>(n) + 1);
  }
  // |C(s,n)| <= |C(s,n2)| (n/n2)^q for n > n2, since |s-j|/(j+1) <= 1 + (|s|-1)/(j+1).
  double x2 = static_cast<double>(n2);
  double logA = std::log(2.0) + 0.25 * std::log(2 / std::numbers::pi) + logc - q * std::log(x2);
  // sum_{n>n2} n^p e^{-2 sqrt(pi n)} <= (4 pi)^{-p}/(2 pi) Gamma(2p+2, y2), y2 = 2 sqrt(pi n2),
  // and Gamma(a, y) <= y^{a-1} e^{-y}/(1 - (a-1)/y) for y > a-1.
  double a = 2 * p + 2, y2 = 2 * std::sqrt(std::numbers::pi * x2);
  double logG = (a - 1) * std::log(y2) - y2 - std::log(1 - (a - 1) / y2);
  sum += std::exp(logA - p * std::log(4 * std::numbers::pi) - std::log(2 * std::numbers::pi) + logG);
  return sum * kSlack;
}

long newton_terms_for(const BigComplex& s, double tolerance) {
  if (!(tolerance > 0)) throw DomainError("newton_terms_for: tolerance must be positive");
  long hi = 16;
  while (newton_tail_bound(s, hi) > tolerance) {
    hi *= 2;
    if (hi > (1L << 22)) throw TruncationError("newton series: no feasible N for this tolerance");
  }
  long lo = hi / 2;
  if (newton_tail_bound(s, lo) <= tolerance) return lo;
  while (hi - lo > 1) {
    long mid = (lo + hi) / 2;
    (newton_tail_bound(s, mid) <= tolerance ? hi : lo) = mid;
  }
  return hi;
}

NewtonValue newton_eval(const BigComplex& s, long N, Bits prec, double tolerance) {
  if (N < 1) throw DomainError("newton_eval: N must be >= 1");
  double tail = newton_tail_bound(s, N);
  if (tolerance > 0 && tail > tolerance)
    throw TruncationError("newton series tail bound " + std::to_string(tail) + " exceeds " +
                          std::to_string(tolerance) + "; N >= " + std::to_string(newton_terms_for(s, tolerance)) +
                          " is needed");

  // Largest |b_n C(s,n)| sets how many digits cancel in the partial sum.
  std::complex<double> z(s.re().to_double(), s.im().to_double());
  double logc = 0, peak = 0;
  for (long n = 0; n <= N; ++n) {
    peak = std::max(peak, (n == 0 ? std::log(0.5) : log_envelope(static_cast<double>(n))) + logc);
    logc += std::log(std::abs(z - static_cast<double>(n))) - std::log(static_cast<double>(n) + 1);
  }
  long extra = static_cast<long>(std::ceil(std::max(0.0, peak) / std::numbers::ln10));
  long target = bits_to_digits(prec) + extra + 5;

  std::vector<long> ns(static_cast<size_t>(N) + 1);
  for (long n = 0; n <= N; ++n) ns[static_cast<size_t>(n)] = n;
  std::vector<SequencePoint> bs = sweep(SequenceKind::b, ns, target);
  Bits wp = digits_to_bits(target + 5);

  for (long n = kEnvelopeFrom; n <= N; ++n) {
    const BigReal& bn = bs[static_cast<size_t>(n)].value;
    if (abs(bn) > envelope(n, wp))
      throw EnvelopeViolation("|b_" + std::to_string(n) + "| = " + abs(bn).to_sci(4) +
                              " exceeds the tail envelope used for the Newton series");
  }

  BigComplex sb = round_to(s, wp);
  BigComplex c(BigReal(1L, wp), BigReal(0L, wp));
  std::vector<BigComplex> terms;
  terms.reserve(ns.size());
  for (long n = 0; n <= N; ++n) {
    BigComplex t = c * bs[static_cast<size_t>(n)].value;
    terms.push_back(n % 2 ? -t : t);
    c = c * (sb - n) / BigReal(n + 1, wp);
  }
  BigComplex sum(wp);
  for (auto& t : terms) sum += t;
  return {round_to(sum, prec), BigReal(tail, prec), N + 1};
}

TruncatedSeries ogf_coeffs(long M, Bits prec) {
  if (M < 2) throw DomainError("ogf_coeffs: M must be >= 2");
  Bits wp{prec.count + prec.count / 2};
  // u = z/(1-z)
  std::vector<BigReal> uc(static_cast<size_t>(M) + 1, BigReal(1L, wp));
  uc[0] = BigReal(0L, wp);
  TruncatedSeries u(std::move(uc));
  // psi(1+u) + gamma = sum_{k>=1} (-1)^{k+1} zeta(k+1) u^k, by Horner in u
  TruncatedSeries f = TruncatedSeries::zero(M, wp);
  for (long k = M; k >= 1; --k) {
    BigReal zk = zeta_int(k + 1, wp);
    if (k % 2 == 0) zk = -zk;
    f = (f + TruncatedSeries::monomial(0, M, wp) * zk) * u;
  }
  // z/(1-z)^2 = sum n z^n
  std::vector<BigReal> w;
  for (long n = 0; n <= M; ++n) w.emplace_back(n, wp);
  TruncatedSeries g = f * TruncatedSeries(std::move(w));
  std::vector<BigReal> out;
  for (const auto& x : g.coefficients()) out.push_back(round_to(x, prec));
  return TruncatedSeries(std::move(out));
}

TruncatedSeries egf_coeffs(long M, Bits prec) {
  if (M < 2) throw DomainError("egf_coeffs: M must be >= 2");
  std::vector<BigReal> ez, zs;
  BigReal inv_fact(1L, prec);
  for (long n = 0; n <= M; ++n) {
    if (n > 0) inv_fact /= n;
    ez.push_back(inv_fact);
    if (n < 2) {
      zs.emplace_back(0L, prec);
    } else {
      BigReal t = zeta_int(n, prec) * inv_fact;
      zs.push_back(n % 2 ? -t : t);
    }
  }
  return TruncatedSeries(std::move(ez)) * TruncatedSeries(std::move(zs));
}

}  // namespace zetadiff
