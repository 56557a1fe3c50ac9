#include "zetadiff/precision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zetadiff/errors.hpp"

namespace zetadiff {

PrecisionBudget PrecisionBudget::plain(long target, long guard) {
  return PrecisionBudget{target, target + guard, guard};
}

PrecisionBudget PrecisionBudget::for_sequence(SequenceKind kind, long n, long target, long k, long guard) {
  return PrecisionBudget{target, required_working_digits(kind, n, target, k, guard), guard};
}

PrecisionBudget PrecisionBudget::widened(long digits) const {
  PrecisionBudget out = *this;
  out.working_digits = std::max(working_digits, digits);
  return out;
}

void PrecisionBudget::validate() const {
  if (target_digits <= 0 || guard_digits <= 0 || working_digits <= 0)
    throw ValidationError("precision budget fields must be positive");
  if (working_digits < target_digits + guard_digits)
    throw ValidationError("working digits " + std::to_string(working_digits) + " below target + guard " +
                          std::to_string(target_digits + guard_digits));
}

double smallness_exponent(SequenceKind kind, long n, long k) {
  const double pi = std::numbers::pi;
  switch (kind) {
    case SequenceKind::b:
    case SequenceKind::c:
      return 2.0 * std::sqrt(pi * static_cast<double>(n));
    case SequenceKind::a:
      return 2.0 * std::sqrt(pi * static_cast<double>(n) / static_cast<double>(std::max(k, 1L)));
    case SequenceKind::delta:
    case SequenceKind::A:
    case SequenceKind::d:
      return 0.0;
  }
  return 0.0;
}

long cancellation_digits(SequenceKind kind, long n, long k) {
  if (n <= 0) return 0;
  double binom = std::ceil(std::log10(2.0) * static_cast<double>(n));
  double small = std::ceil(smallness_exponent(kind, n, k) / std::numbers::ln10);
  return static_cast<long>(binom + small);
}

long required_working_digits(SequenceKind kind, long n, long target, long k, long guard) {
  return cancellation_digits(kind, n, k) + target + guard;
}

BigReal tolerance(long digits, Bits prec) {
  BigReal ten(10L, prec);
  return pow(ten, -digits);
}

}  // namespace zetadiff
