#pragma once

// The Newton series of zeta(s) - 1/(s-1) in the binomial basis, and truncated
// power series for the ordinary and exponential generating functions of delta_n.

#include <vector>

#include "zetadiff/bigreal.hpp"

namespace zetadiff {

/// Coefficients 0..order() of a power series; everything above is unknown.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::vector<BigReal> coefficients);
  /// 0 + 0 z + ... + 0 z^order.
  static TruncatedSeries zero(long order, Bits prec);
  /// z^power, truncated at `order`.
  static TruncatedSeries monomial(long power, long order, Bits prec);

  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  const BigReal& operator[](long i) const { return coeffs_.at(static_cast<size_t>(i)); }
  const std::vector<BigReal>& coefficients() const { return coeffs_; }

  /// Results carry the smaller of the two orders.
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const BigReal& c);

 private:
  std::vector<BigReal> coeffs_;
};

struct NewtonValue {
  BigComplex value;
  /// Certified bound on sum_{n>N} B(n) |C(s,n)|, B(n) = 2 (2n/pi)^{1/4} e^{-2 sqrt(pi n)}.
  BigReal tail_bound;
  long terms = 0;
};

/// sum_{n=0..N} (-1)^n b_n C(s,n), which converges to zeta(s) - 1/(s-1) (Euler's
/// constant at s = 1) everywhere. C(s,n) by the running product.
/// A positive `tolerance` makes a larger tail bound a TruncationError naming the N needed.
/// Throws EnvelopeViolation if some |b_n|, n >= 50, exceeds B(n).
NewtonValue newton_eval(const BigComplex& s, long N, Bits prec, double tolerance = 0);

/// Upper bound on sum_{n>N} B(n) |C(s,n)|, in doubles (slightly inflated).
double newton_tail_bound(const BigComplex& s, long N);

/// Smallest N (searched by doubling, then bisection) whose tail bound is <= tolerance.
long newton_terms_for(const BigComplex& s, double tolerance);

/// [z^n] of z/(1-z)^2 (psi(1/(1-z)) + gamma), i.e. delta_n for n >= 2; M >= 2.
/// Composition runs at 1.5x the requested precision.
TruncatedSeries ogf_coeffs(long M, Bits prec);

/// [z^n] of e^z sum_{n>=2} zeta(n)(-z)^n/n!, i.e. delta_n/n!; M >= 2.
TruncatedSeries egf_coeffs(long M, Bits prec);

}  // namespace zetadiff
