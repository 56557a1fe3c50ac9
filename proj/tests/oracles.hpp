#pragma once

// Independent reference computations for the unit tests. Everything here is
// deliberately naive: plain sums, exact rationals, fixed truncation points.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

#include "zetadiff/bigreal.hpp"

namespace oracle {

using zetadiff::BigReal;
using zetadiff::Bits;

/// -log10 |a - b|, capped at 1000 for exact agreement.
inline double agree(const BigReal& a, const BigReal& b) {
  BigReal d = a - b;
  if (d.is_zero()) return 1000.0;
  return -d.log10_abs();
}

/// Significant digits of agreement relative to |b|.
inline double agree_rel(const BigReal& a, const BigReal& b) {
  BigReal d = a - b;
  if (d.is_zero()) return 1000.0;
  return b.log10_abs() - d.log10_abs();
}

/// Bernoulli numbers B_0..B_n (B_1 = +1/2 convention is irrelevant here) by Akiyama-Tanigawa.
inline std::vector<mpq_class> bernoulli_at(long n) {
  std::vector<mpq_class> out(static_cast<size_t>(n) + 1), a(static_cast<size_t>(n) + 1);
  for (long m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (long j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out[m] = a[0];
  }
  return out;
}

/// sum_{j>=0} (j+q)^-s, q = qn/qd, by a fixed partial sum of N terms and 30 Euler-Maclaurin corrections.
inline BigReal hurwitz_em(long s, long qn, long qd, Bits prec, long N = 400) {
  static const std::vector<mpq_class> B = bernoulli_at(62);
  mpq_class q(qn, qd);
  q.canonicalize();
  BigReal sum(prec);
  for (long j = 0; j < N; ++j) {
    BigReal x(mpq_class(q + j), prec);
    sum += zetadiff::pow(x, -s);
  }
  BigReal x(mpq_class(q + N), prec);
  BigReal tail = zetadiff::pow(x, 1 - s) / (s - 1) + zetadiff::pow(x, -s) / 2L;
  mpz_class fact = 1;
  BigReal poch(1L, prec);  // (s)_{2i-1}
  for (long i = 1; i <= 30; ++i) {
    fact *= (2 * i - 1) * (2 * i);
    if (i == 1) poch = BigReal(s, prec);
    else poch = poch * (s + 2 * i - 3) * (s + 2 * i - 2);
    BigReal c(mpq_class(B[2 * i] / fact), prec);
    tail += c * poch * zetadiff::pow(x, -s - 2 * i + 1);
  }
  return sum + tail;
}

inline mpq_class harmonic_naive(long n) {
  mpq_class h = 0;
  for (long j = 1; j <= n; ++j) {
    h += mpq_class(1, j);
    h.canonicalize();
  }
  return h;
}

/// mu(n) by trial division.
inline int mobius_naive(long n) {
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// Euler's constant from H_N - ln N - 1/(2N) + sum_k B_{2k}/(2k N^{2k}).
inline BigReal euler_gamma_em(Bits prec, long N = 1000) {
  static const std::vector<mpq_class> B = bernoulli_at(40);
  BigReal h(harmonic_naive(N), prec);
  BigReal nr(N, prec);
  BigReal out = h - zetadiff::log(nr) - BigReal(1L, prec) / (2 * N);
  for (long k = 1; k <= 20; ++k) {
    BigReal c(mpq_class(B[2 * k] / (2 * k)), prec);
    out += c * zetadiff::pow(nr, -2 * k);
  }
  return out;
}

}  // namespace oracle
