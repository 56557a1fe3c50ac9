#pragma once

// Alternating binomial differences of zeta-type values, each computed by the
// direct binomial sum and, where one exists, an independent rearranged series.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "zetadiff/bigreal.hpp"
#include "zetadiff/mpcore.hpp"
#include "zetadiff/precision.hpp"

namespace zetadiff {

enum class Method { binomial, series, residue_adjusted, moebius };

std::string to_string(Method m);
/// Throws ValidationError on an unknown name.
Method method_from_string(const std::string& name);

struct SequencePoint {
  long n = 0;
  BigReal value;
  Method method = Method::binomial;
  long achieved_digits = 0;
};

/// A Dirichlet character of period k stored exactly: chi(j) = exp(2 pi i phase[j]),
/// or 0 where no phase is set.
class CharacterTable {
 public:
  CharacterTable(long k, std::vector<std::optional<mpq_class>> phases);

  static CharacterTable principal(long k);
  /// The nonprincipal character mod 4.
  static CharacterTable mod4();

  long period() const { return k_; }
  /// Phase of chi(j) for 1 <= j <= k, nullopt where chi(j) = 0.
  const std::optional<mpq_class>& phase(long j) const { return phases_.at(static_cast<size_t>(j - 1)); }
  BigComplex value(long j, Bits prec) const;
  std::vector<BigComplex> values(Bits prec) const;

  /// Throws ValidationError unless this is a genuine character.
  void validate() const;

 private:
  long k_;
  std::vector<std::optional<mpq_class>> phases_;
};

/// delta_n = sum_{l=2..n} C(n,l)(-1)^l zeta(l).
SequencePoint delta(long n, const PrecisionBudget& budget, Method method = Method::binomial);
/// b_n = n(1 - gamma - H_{n-1}) - 1/2 + delta_n for n >= 1, b_0 = 1/2.
SequencePoint b(long n, const PrecisionBudget& budget);
/// A_n(m,k) = sum_{l=2..n} C(n,l)(-1)^l zeta(l, m/k)/k^l.
SequencePoint A(long n, RationalShift q, const PrecisionBudget& budget);
/// a_n(m,k) = A_n - (m/k - 1/2) + (n/k)[psi(m/k) + ln k + 1 - H_{n-1}].
SequencePoint a(long n, RationalShift q, const PrecisionBudget& budget);
/// sum_{l=2..n} C(n,l)(-1)^l L(chi, l) = sum_m chi(m) A_n(m,k).
BigComplex dirichlet_diff(const CharacterTable& chi, long n, const PrecisionBudget& budget);
/// d_n = sum_{l=2..n} C(n,l)(-1)^l / zeta(l).
SequencePoint d(long n, const PrecisionBudget& budget, Method method = Method::binomial);
/// c_n = -sum_{l=1..n} C(n,l)(-1)^l zeta(l+1)/(l+1).
SequencePoint c(long n, const PrecisionBudget& budget);
/// D(x) = sum_l mu(l)[e^{-x/l} - 1 + x/l].
BigReal D_of(const BigReal& x, const PrecisionBudget& budget);

/// Binomial-method values for many n at once, at the precision the largest n
/// needs for `target_digits`. Parallel over n; deterministic.
std::vector<SequencePoint> sweep(SequenceKind kind, const std::vector<long>& ns, long target_digits,
                                 RationalShift q = {1, 1});

/// Working digits the binomial method needs, for budget checks and reports.
long required_digits(SequenceKind kind, long n, long target_digits, RationalShift q = {1, 1});

}  // namespace zetadiff
