#pragma once

// Special-function kernel: zeta and Hurwitz zeta at integers, digamma at
// rationals, Euler's constant, harmonic numbers, complex Gamma and zeta,
// Moebius sieve.

#include <gmpxx.h>

#include <vector>

#include "zetadiff/bigreal.hpp"
#include "zetadiff/precision.hpp"

namespace zetadiff {

/// The shift m/k of a Hurwitz zeta argument, 1 <= m <= k.
struct RationalShift {
  long m = 1;
  long k = 1;
  void validate() const;
  friend bool operator==(const RationalShift&, const RationalShift&) = default;
};

BigReal zeta_int(long ell, Bits prec);
BigReal zeta_int(long ell, const PrecisionBudget& budget);

/// sum_{j>=0} (j*step + offset)^(-ell) for positive integers offset, step and ell >= 2.
/// Equals zeta(ell, offset/step) / step^ell.
BigReal lattice_zeta(long ell, unsigned long offset, unsigned long step, Bits prec);

BigReal hurwitz_int(long ell, RationalShift q, Bits prec);
BigReal hurwitz_int(long ell, RationalShift q, const PrecisionBudget& budget);

BigReal euler_gamma(const PrecisionBudget& budget);

BigReal digamma_rational(RationalShift q, Bits prec);
BigReal digamma_rational(RationalShift q, const PrecisionBudget& budget);

mpq_class harmonic_exact(long n);
BigReal harmonic(long n, Bits prec);
BigReal harmonic(long n, const PrecisionBudget& budget);

BigComplex gamma_cx(const BigComplex& s, Bits prec);
BigComplex gamma_cx(const BigComplex& s, const PrecisionBudget& budget);
/// log Gamma(s) for Re(s) > 0, continuous along rays from the positive axis.
BigComplex lgamma_cx(const BigComplex& s, Bits prec);

BigComplex zeta_cx(const BigComplex& s, Bits prec);
BigComplex zeta_cx(const BigComplex& s, const PrecisionBudget& budget);

/// mu(0..N); entry 0 is unused and set to 0.
std::vector<int> mobius_upto(long N);

/// B_{2i}/(2i)! as an exact rational, i >= 1. Thread-safe; grows a shared cache.
mpq_class bernoulli_scaled(long i);

/// n! as an exact integer.
mpz_class factorial(long n);
/// C(n, j) for j = 0..n, by the exact ratio update.
std::vector<mpz_class> binomial_row(long n);

}  // namespace zetadiff
