#pragma once

#include "zetadiff/bigreal.hpp"

namespace zetadiff {

/// Which difference sequence a budget is sized for. The kinds differ only in
/// how small the result is relative to the binomial terms.
enum class SequenceKind { delta, b, A, a, d, c };

/// Decimal digits: what the caller wants, what the arithmetic carries.
struct PrecisionBudget {
  long target_digits = 15;
  long working_digits = 35;
  long guard_digits = 20;

  /// target + guard, for quantities with no cancellation.
  static PrecisionBudget plain(long target, long guard = 20);
  /// Sized for the alternating binomial sum of `kind` at index n (k only matters for kind a).
  static PrecisionBudget for_sequence(SequenceKind kind, long n, long target, long k = 1, long guard = 20);

  Bits bits() const { return digits_to_bits(working_digits); }
  /// Same target, at least `digits` working digits.
  PrecisionBudget widened(long digits) const;
  /// Throws ValidationError if the budget is internally inconsistent.
  void validate() const;
};

/// E(n): natural-log exponent of the exponential smallness of the sequence.
double smallness_exponent(SequenceKind kind, long n, long k = 1);
/// Digits lost to cancellation: ceil(0.30103 n) + ceil(E(n)/ln 10).
long cancellation_digits(SequenceKind kind, long n, long k = 1);
/// Minimum working digits for the given target and guard.
long required_working_digits(SequenceKind kind, long n, long target, long k = 1, long guard = 20);

/// Absolute error tolerance 10^(-digits) at the given precision.
BigReal tolerance(long digits, Bits prec);

}  // namespace zetadiff
