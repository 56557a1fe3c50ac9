#include "zetadiff/mpcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "zeta_internal.hpp"
#include "zetadiff/errors.hpp"

namespace zetadiff {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ------------------------------------------------------------ Bernoulli

std::mutex g_bernoulli_mutex;
std::vector<mpq_class> g_bernoulli;  // index i -> B_{2i}/(2i)!, index 0 unused

// Tangent numbers T_1..T_n (Brent-Harvey), then
// B_{2k}/(2k)! = (-1)^{k-1} 2k T_k / (2^{2k}(2^{2k}-1)(2k)!).
void grow_bernoulli(long upto) {
  std::vector<mpz_class> t(static_cast<size_t>(upto) + 1);
  t[1] = 1;
  for (long k = 2; k <= upto; ++k) t[k] = (k - 1) * t[k - 1];
  for (long k = 2; k <= upto; ++k)
    for (long j = k; j <= upto; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  g_bernoulli.assign(static_cast<size_t>(upto) + 1, mpq_class(0));
  mpz_class fact = 1;  // (2k)!
  for (long k = 1; k <= upto; ++k) {
    fact *= (2 * k - 1) * (2 * k);
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(2 * k));
    mpq_class v(2 * k * t[k], p2 * (p2 - 1) * fact);
    v.canonicalize();
    g_bernoulli[k] = (k % 2 == 1) ? v : mpq_class(-v);
  }
}

// ------------------------------------------------------------ Borwein weights

struct BorweinWeights {
  std::vector<mpz_class> w;  // (-1)^k (d_k - d_n)
  mpz_class dn;
};

std::mutex g_borwein_mutex;
std::map<long, std::shared_ptr<const BorweinWeights>> g_borwein;

std::shared_ptr<const BorweinWeights> borwein_weights(long n) {
  std::lock_guard lock(g_borwein_mutex);
  auto it = g_borwein.find(n);
  if (it != g_borwein.end()) return it->second;
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), all integers.
  std::vector<mpz_class> d(static_cast<size_t>(n) + 1);
  mpq_class term(1);
  mpq_class acc(0);
  for (long i = 0; i <= n; ++i) {
    if (i > 0) {
      term *= mpq_class(2 * (n + i - 1) * (n - i + 1), (2 * i - 1) * i);
      term.canonicalize();
    }
    acc += term;
    d[i] = acc.get_num() / acc.get_den();
  }
  auto out = std::make_shared<BorweinWeights>();
  out->dn = d[n];
  out->w.resize(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k) {
    mpz_class v = d[k] - d[n];
    out->w[k] = (k % 2 == 0) ? v : mpz_class(-v);
  }
  g_borwein.emplace(n, out);
  return out;
}

long borwein_terms(mpfr_prec_t wp) {
  return static_cast<long>(std::ceil((static_cast<double>(wp) + 3.0) * kLn2 / std::log(3.0 + std::sqrt(8.0)))) + 1;
}

// Number of terms for the plain Dirichlet sum with tail below 2^-(wp+2).
double direct_terms(long s, mpfr_prec_t wp) {
  return std::ceil(std::exp2((static_cast<double>(wp) + 2.0) / static_cast<double>(s - 1)));
}

BigReal zeta_direct(long s, mpfr_prec_t wp) {
  // sum_{j<J} j^-s; tail sum_{j>=J} j^-s <= J^-s + J^{1-s}/(s-1) < 2^-wp.
  long J = static_cast<long>(direct_terms(s, wp)) + 1;
  Bits p{wp};
  BigReal sum(1L, p);
  BigReal term(p);
  for (long j = 2; j < J; ++j) {
    mpfr_ui_pow_ui(term.get(), static_cast<unsigned long>(j), static_cast<unsigned long>(s), MPFR_RNDN);
    mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDN);
    sum += term;
  }
  return sum;
}

// Shared by zeta_cx and lattice_zeta.
BigReal first_term_bound_threshold(const BigReal& scale, mpfr_prec_t wp) { return ldexp(abs(scale), -wp); }

}  // namespace

mpq_class bernoulli_scaled(long i) {
  if (i < 1) throw DomainError("bernoulli_scaled: index must be >= 1");
  std::lock_guard lock(g_bernoulli_mutex);
  if (static_cast<long>(g_bernoulli.size()) <= i) grow_bernoulli(std::max(2 * i, 64L));
  return g_bernoulli[i];
}

mpz_class factorial(long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

std::vector<mpz_class> binomial_row(long n) {
  std::vector<mpz_class> row(static_cast<size_t>(n) + 1);
  row[0] = 1;
  for (long j = 0; j < n; ++j) {
    row[j + 1] = row[j] * (n - j);
    mpz_divexact_ui(row[j + 1].get_mpz_t(), row[j + 1].get_mpz_t(), static_cast<unsigned long>(j + 1));
  }
  return row;
}

void RationalShift::validate() const {
  if (k < 1 || m < 1 || m > k)
    throw ValidationError("rational shift needs 1 <= m <= k, got m=" + std::to_string(m) + " k=" + std::to_string(k));
}

// ------------------------------------------------------------ integer zeta

namespace detail {

std::vector<BigReal> zeta_block(long s_begin, long s_end, Bits prec) {
  if (s_begin < 2 || zeta_block_start(s_begin) != s_begin || s_end > s_begin + kZetaBlock || s_end <= s_begin)
    throw DomainError("zeta_block: misaligned range");
  const mpfr_prec_t wp = prec.count + 24;
  const long n = borwein_terms(wp);
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(s_end - s_begin));

  std::shared_ptr<const BorweinWeights> weights;
  std::vector<BigReal> powers;  // (k+1)^-s for the current s
  auto need_borwein = [&](long s) { return direct_terms(s, wp) > static_cast<double>(n) / 4.0; };

  for (long s = s_begin; s < s_end; ++s) {
    if (!need_borwein(s)) {
      out.push_back(round_to(zeta_direct(s, wp), prec));
      continue;
    }
    Bits p{wp};
    if (!weights) {
      weights = borwein_weights(n);
      powers.assign(static_cast<size_t>(n), BigReal(p));
      for (long k = 0; k < n; ++k) {
        mpfr_ui_pow_ui(powers[k].get(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(s_begin), MPFR_RNDN);
        mpfr_ui_div(powers[k].get(), 1, powers[k].get(), MPFR_RNDN);
      }
      for (long t = s_begin; t < s; ++t)
        for (long k = 1; k < n; ++k) mpfr_div_ui(powers[k].get(), powers[k].get(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
    }
    BigReal acc(p), term(p);
    for (long k = 0; k < n; ++k) {
      mpfr_mul_z(term.get(), powers[k].get(), weights->w[k].get_mpz_t(), MPFR_RNDN);
      acc += term;
    }
    // zeta(s) = -acc / (d_n (1 - 2^{1-s}))
    BigReal denom(p);
    mpfr_set_ui_2exp(denom.get(), 1, -(s - 1), MPFR_RNDN);
    denom = 1L - denom;
    mpfr_mul_z(denom.get(), denom.get(), weights->dn.get_mpz_t(), MPFR_RNDN);
    out.push_back(round_to(-acc / denom, prec));
    for (long k = 1; k < n; ++k) mpfr_div_ui(powers[k].get(), powers[k].get(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
  }
  return out;
}

}  // namespace detail

BigReal zeta_int(long ell, Bits prec) {
  if (ell < 2) throw DomainError("zeta_int: argument must be >= 2 (pole at 1), got " + std::to_string(ell));
  long start = detail::zeta_block_start(ell);
  auto block = detail::zeta_block(start, ell + 1, prec);
  return std::move(block.back());
}

BigReal zeta_int(long ell, const PrecisionBudget& budget) { return zeta_int(ell, budget.bits()); }

// ------------------------------------------------------------ Hurwitz

BigReal lattice_zeta(long ell, unsigned long offset, unsigned long step, Bits prec) {
  if (ell < 2) throw DomainError("Hurwitz zeta: order must be >= 2, got " + std::to_string(ell));
  if (offset == 0 || step == 0) throw DomainError("Hurwitz zeta: offset and step must be positive");
  const mpfr_prec_t wp = prec.count + 24 + static_cast<mpfr_prec_t>(std::log2(static_cast<double>(ell) + 1.0));
  Bits p{wp};
  const double off = static_cast<double>(offset), st = static_cast<double>(step);

  auto power = [&](BigReal& dst, unsigned long base) {
    mpfr_ui_pow_ui(dst.get(), base, static_cast<unsigned long>(ell), MPFR_RNDN);
    mpfr_ui_div(dst.get(), 1, dst.get(), MPFR_RNDN);
  };

  // Plain sum when terms fall below 2^-wp (relative to the first) quickly.
  double ratio_bits = (static_cast<double>(wp) + 4.0) / static_cast<double>(ell);
  double direct_j = (off * std::exp2(ratio_bits) - off) / st;
  double em_x = (static_cast<double>(wp) * kLn2 + static_cast<double>(ell)) / kTwoPi + 2.0;
  if (direct_j < std::max(em_x, 64.0)) {
    // Tail after the last term y^-ell is at most y^-ell * (1 + y/(step(ell-1))).
    BigReal sum(p), term(p);
    power(sum, offset);
    BigReal threshold = ldexp(sum, -wp);
    for (unsigned long y = offset + step;; y += step) {
      power(term, y);
      sum += term;
      double widen = 1.0 + static_cast<double>(y) / (st * static_cast<double>(ell - 1));
      if (term * BigReal(widen, p) < threshold) break;
    }
    return round_to(sum, prec);
  }

  long N = std::max(1L, static_cast<long>(std::ceil(em_x - off / st)));
  for (int attempt = 0; attempt < 12; ++attempt, N *= 2) {
    BigReal direct(p), term(p);
    for (long j = 0; j < N; ++j) {
      power(term, offset + static_cast<unsigned long>(j) * step);
      direct += term;
    }
    const unsigned long y = offset + static_cast<unsigned long>(N) * step;
    BigReal yr(y, p);
    BigReal y_pow(p);  // y^-ell
    power(y_pow, y);
    BigReal tail = y_pow * yr / (static_cast<long>(step) * (ell - 1));
    tail += ldexp(y_pow, -1);
    BigReal threshold = first_term_bound_threshold(direct, wp);
    // g_i = (ell)_{2i-1} step^{2i-1} y^{-ell-2i+1}
    BigReal g = y_pow * static_cast<long>(step) * ell / yr;
    BigReal q2 = BigReal(static_cast<long>(step), p) / yr;
    q2 *= q2;
    BigReal prev_abs(p), t(p);
    bool converged = false;
    const long max_terms = 4 * wp;
    for (long i = 1; i < max_terms; ++i) {
      mpq_class bi = bernoulli_scaled(i);
      mpfr_mul_q(t.get(), g.get(), bi.get_mpq_t(), MPFR_RNDN);
      BigReal at = abs(t);
      if (i > 1 && at > prev_abs) break;  // diverging: need larger N
      tail += t;
      if (at < threshold) {
        converged = true;
        break;
      }
      prev_abs = at;
      g *= q2;
      g *= (ell + 2 * i - 1);
      g *= (ell + 2 * i);
    }
    if (converged) return round_to(direct + tail, prec);
  }
  throw TruncationError("Hurwitz zeta: Euler-Maclaurin failed to converge");
}

BigReal hurwitz_int(long ell, RationalShift q, Bits prec) {
  q.validate();
  if (ell < 2) throw DomainError("hurwitz_int: order must be >= 2, got " + std::to_string(ell));
  // zeta(ell, m/k) = k^ell * sum_j (jk + m)^-ell
  Bits wp = prec + 16;
  BigReal s = lattice_zeta(ell, static_cast<unsigned long>(q.m), static_cast<unsigned long>(q.k), wp);
  BigReal kp(wp);
  mpfr_ui_pow_ui(kp.get(), static_cast<unsigned long>(q.k), static_cast<unsigned long>(ell), MPFR_RNDN);
  return round_to(s * kp, prec);
}

BigReal hurwitz_int(long ell, RationalShift q, const PrecisionBudget& budget) {
  return hurwitz_int(ell, q, budget.bits());
}

// ------------------------------------------------------------ gamma, digamma, harmonic

BigReal euler_gamma(const PrecisionBudget& budget) { return const_euler(budget.bits()); }

BigReal digamma_rational(RationalShift q, Bits prec) {
  q.validate();
  Bits wp = prec + 32;
  BigReal gamma = const_euler(wp);
  if (q.m == q.k) return round_to(-gamma, prec);
  // Gauss: psi(m/k) = -gamma - ln(2k) - (pi/2) cot(pi m/k) + 2 sum_{j=1}^{floor((k-1)/2)} cos(2 pi j m/k) ln sin(pi j/k)
  BigReal pi = const_pi(wp);
  BigReal out = -gamma - log(BigReal(2L * q.k, wp));
  out -= ldexp(pi, -1) * cot(pi * q.m / q.k);
  BigReal sum(wp);
  for (long j = 1; j <= (q.k - 1) / 2; ++j) {
    BigReal c = cos(pi * (2 * j * q.m % (2 * q.k)) / q.k);
    sum += c * log(sin(pi * j / q.k));
  }
  out += ldexp(sum, 1);
  return round_to(out, prec);
}

BigReal digamma_rational(RationalShift q, const PrecisionBudget& budget) {
  return digamma_rational(q, budget.bits());
}

mpq_class harmonic_exact(long n) {
  if (n < 0) throw DomainError("harmonic: n must be >= 0");
  // Common-denominator accumulation keeps this linear in n bigint ops.
  mpz_class num = 0, den = 1;
  for (long j = 1; j <= n; ++j) {
    num = num * j + den;
    den *= j;
  }
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

BigReal harmonic(long n, Bits prec) { return BigReal(harmonic_exact(n), prec); }
BigReal harmonic(long n, const PrecisionBudget& budget) { return harmonic(n, budget.bits()); }

// ------------------------------------------------------------ complex gamma

namespace {

bool is_nonpositive_integer(const BigComplex& s) {
  if (!s.im().is_zero() || s.re().sign() > 0) return false;
  return mpfr_integer_p(s.re().get()) != 0;
}

mpfr_prec_t complex_guard(const BigComplex& s) {
  double mag = std::max(std::fabs(s.re().to_double()), std::fabs(s.im().to_double()));
  return 24 + 2 * static_cast<mpfr_prec_t>(std::log2(mag + 2.0));
}

// Stirling series for log Gamma at z with Re(z) large enough; absolute error < 2^-wp.
BigComplex stirling_lgamma(const BigComplex& z, mpfr_prec_t wp) {
  Bits p{wp};
  BigReal pi = const_pi(p);
  BigComplex lz = log(z);
  BigComplex out = (z - BigReal(0.5, p)) * lz - z + ldexp(log(ldexp(pi, 1)), -1);
  BigComplex zinv = BigComplex(BigReal(1L, p)) / z;
  BigComplex zinv2 = zinv * zinv;
  BigComplex zpow = zinv;  // z^{-(2i-1)}
  // Remainder after i terms is at most the next term times sec^{2i+2}(arg(z)/2).
  double half_arg = std::fabs(arg(z).to_double()) / 2.0;
  double sec_log2 = -std::log2(std::cos(half_arg));
  BigReal eps(p);
  mpfr_set_ui_2exp(eps.get(), 1, -wp, MPFR_RNDN);
  BigReal prev(p);
  for (long i = 1; i < 4 * wp; ++i) {
    mpq_class c = bernoulli_scaled(i) * mpq_class(factorial(2 * i - 2));
    BigComplex term = zpow;
    mpfr_mul_q(term.re().get(), term.re().get(), c.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(term.im().get(), term.im().get(), c.get_mpq_t(), MPFR_RNDN);
    BigReal mag = abs(term);
    if (i > 1 && mag > prev) throw TruncationError("Stirling series diverged; shift too small");
    out += term;
    if (ldexp(mag, static_cast<long>(std::ceil(sec_log2 * static_cast<double>(2 * i + 2)))) < eps) return out;
    prev = mag;
    zpow *= zinv2;
  }
  throw TruncationError("Stirling series did not converge");
}

}  // namespace

BigComplex lgamma_cx(const BigComplex& s, Bits prec) {
  if (s.re().sign() <= 0) throw DomainError("lgamma_cx: needs Re(s) > 0");
  const mpfr_prec_t wp = prec.count + complex_guard(s);
  Bits p{wp};
  BigComplex z = round_to(s, p);
  double x_min = static_cast<double>(wp) * kLn2 / kTwoPi + 4.0;
  long shift = std::max(0L, static_cast<long>(std::ceil(x_min - z.re().to_double())));
  BigComplex correction(p);
  for (long j = 0; j < shift; ++j) correction += log(z + j);
  BigComplex out = stirling_lgamma(z + shift, wp) - correction;
  return round_to(out, prec);
}

BigComplex gamma_cx(const BigComplex& s, Bits prec) {
  if (is_nonpositive_integer(s)) throw DomainError("gamma_cx: pole at nonpositive integer");
  const mpfr_prec_t wp = prec.count + complex_guard(s);
  Bits p{wp};
  BigComplex z = round_to(s, p);
  if (z.re() < 0.5) {
    // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    BigReal pi = const_pi(p);
    BigComplex g = exp(lgamma_cx(1L - z, p));
    BigComplex den = sin(z * pi) * g;
    return round_to(BigComplex(pi) / den, prec);
  }
  return round_to(exp(lgamma_cx(z, p)), prec);
}

BigComplex gamma_cx(const BigComplex& s, const PrecisionBudget& budget) { return gamma_cx(s, budget.bits()); }

// ------------------------------------------------------------ complex zeta

namespace {

BigComplex zeta_cx_em(const BigComplex& s, mpfr_prec_t wp) {
  Bits p{wp};
  const double sigma = s.re().to_double();
  const double mag = abs(s).to_double();
  if (sigma > 2.0) {
    // Plain Dirichlet sum when its tail N^{1-sigma}/(sigma-1) + N^-sigma is already below 2^-wp.
    double terms = std::ceil(std::exp((static_cast<double>(wp) + 2) * kLn2 / (sigma - 1.0)));
    if (terms <= 64) {
      BigComplex sum(BigReal(1L, p), BigReal(0L, p));
      for (long j = 2; j <= static_cast<long>(terms); ++j) sum += pow_neg(static_cast<unsigned long>(j), s);
      return sum;
    }
  }
  long N = static_cast<long>(std::ceil((static_cast<double>(wp) * kLn2 + mag) / kTwoPi)) + 2;
  for (int attempt = 0; attempt < 10; ++attempt, N *= 2) {
    BigComplex sum(p);
    for (long j = 1; j < N; ++j) sum += pow_neg(static_cast<unsigned long>(j), s);
    BigComplex n_pow = pow_neg(static_cast<unsigned long>(N), s);  // N^-s
    BigReal nr(N, p);
    // N^{1-s}/(s-1) + N^{-s}/2
    BigComplex tail = n_pow * nr / (s - 1L);
    tail += n_pow * BigReal(0.5, p);
    BigReal scale = abs(sum) + BigReal(1L, p);
    BigReal eps = ldexp(scale, -wp);
    // g_i = (s)_{2i-1} N^{-s-2i+1}
    BigComplex g = s * n_pow / nr;
    BigReal inv_n2 = BigReal(1L, p) / (nr * nr);
    BigReal prev(p);
    for (long i = 1; i < 4 * wp; ++i) {
      mpq_class bi = bernoulli_scaled(i);
      BigComplex t = g;
      mpfr_mul_q(t.re().get(), t.re().get(), bi.get_mpq_t(), MPFR_RNDN);
      mpfr_mul_q(t.im().get(), t.im().get(), bi.get_mpq_t(), MPFR_RNDN);
      BigReal at = abs(t);
      if (i > 1 && at > prev) break;  // retry with larger N
      tail += t;
      // Next term bounds the remainder, times |s+2i+1|/(sigma+2i+1).
      BigComplex g_next = g * (s + (2 * i - 1)) * (s + 2 * i) * inv_n2;
      mpq_class bn = bernoulli_scaled(i + 1);
      BigReal next = abs(g_next);
      mpfr_mul_q(next.get(), next.get(), bn.get_mpq_t(), MPFR_RNDN);
      next = abs(next);
      double fac = abs(s + (2 * i + 1)).to_double() / (sigma + 2.0 * static_cast<double>(i) + 1.0);
      if (sigma + 2.0 * static_cast<double>(i) + 1.0 > 0.0 && next * BigReal(fac, p) < eps) return sum + tail;
      prev = at;
      g = std::move(g_next);
    }
  }
  throw TruncationError("zeta_cx: Euler-Maclaurin failed to converge");
}

}  // namespace

BigComplex zeta_cx(const BigComplex& s, Bits prec) {
  if (s.im().is_zero() && mpfr_cmp_ui(s.re().get(), 1) == 0) throw DomainError("zeta_cx: pole at s = 1");
  const mpfr_prec_t wp = prec.count + complex_guard(s);
  Bits p{wp};
  BigComplex z = round_to(s, p);
  if (z.re().sign() < 0) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    BigReal pi = const_pi(p);
    BigComplex w = 1L - z;
    BigComplex factor = exp(z * log(BigReal(2L, p)) + (z - 1L) * log(pi));
    BigComplex out = factor * sin(z * ldexp(pi, -1)) * gamma_cx(w, p) * zeta_cx_em(w, wp);
    return round_to(out, prec);
  }
  return round_to(zeta_cx_em(z, wp), prec);
}

BigComplex zeta_cx(const BigComplex& s, const PrecisionBudget& budget) { return zeta_cx(s, budget.bits()); }

// ------------------------------------------------------------ Moebius

std::vector<int> mobius_upto(long N) {
  if (N < 1) throw DomainError("mobius_upto: N must be >= 1");
  std::vector<int> mu(static_cast<size_t>(N) + 1, 1);
  std::vector<long> primes;
  std::vector<bool> composite(static_cast<size_t>(N) + 1, false);
  mu[0] = 0;
  for (long i = 2; i <= N; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (long pr : primes) {
      long v = i * pr;
      if (v > N) break;
      composite[v] = true;
      if (i % pr == 0) {
        mu[v] = 0;
        break;
      }
      mu[v] = -mu[i];
    }
  }
  return mu;
}

}  // namespace zetadiff
