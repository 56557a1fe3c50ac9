#pragma once

// Integral representations of the binomial differences: residue sums, and
// numerical quadrature along vertical lines and along a saddle-point path.
//
// For an integrand f that is real on the real axis, the closed contour around
// the poles collapses to (1/pi) Im of an integral over the upper half of the
// path, which is what is computed here.

#include <functional>
#include <string>

#include "zetadiff/bigreal.hpp"

namespace zetadiff {

enum class RiceKind {
  zeta_right,  // Re s = c in (1, 2): delta_n
  zeta_left,   // Re s = c in (-1, 0): b_n
  inv_zeta,    // 1/zeta on Re s = c in (1, 2): d_n
};

std::string to_string(RiceKind k);
/// Accepts "zeta-right"/"right", "zeta-left"/"left", "inv-zeta"/"inv".
RiceKind rice_kind_from_string(const std::string& name);

/// What happens above the truncation height T of a vertical line.
///  deform:   the rest of the line is replaced by a horizontal ray to +infinity
///            (no poles in between), integrated and truncated with a certified bound.
///  truncate: the line stops at T; fails unless the kernel bound beyond T is small enough.
enum class TailMode { deform, truncate };

struct ContourSpec {
  enum class Shape { vertical, saddle_path };
  Shape shape = Shape::vertical;
  double abscissa = 1.5;
  /// Saddle path: vertical pieces at c1 sqrt(n) and c2 sqrt(n), 0 < c1 < sqrt(pi) < c2 < 2 sqrt(pi).
  double c1 = 1.0;
  double c2 = 3.0;
  /// Height where the vertical piece stops; 0 picks a default.
  double T = 0;
  /// Base-panel subdivision factor.
  long panels = 1;
  long order = 20;
  TailMode tail = TailMode::deform;
  /// Significant digits relative to the natural size of the result.
  long target_digits = 10;

  static ContourSpec vertical(double c);
  static ContourSpec saddle(double c1 = 1.0, double c2 = 3.0);
  /// The usual line for each kind: 3/2, -1/2, 3/2.
  static ContourSpec for_kind(RiceKind kind);
  /// Throws ValidationError.
  void validate() const;
};

struct ContourResult {
  BigReal value;
  BigReal quadrature_error;
  BigReal truncation_bound;
  double T = 0;
  long panels = 0;
  long evaluations = 0;
  long working_digits = 0;
  /// Saddle path only; these sum to value.
  BigReal central;
  BigReal slanted;
  BigReal vertical;
};

/// sum_{k=n0..n} (-1)^n phi(k) Res_{s=k} n!/(s(s-1)...(s-n)), i.e. the
/// alternating binomial sum of phi through the residue identity.
BigReal rice_sum_residues(const std::function<BigReal(long)>& phi, long n0, long n, Bits prec);

/// Quadrature of the integral representation on a vertical line. n <= 100.
/// Throws TruncationError if T (truncate mode) or the quadrature cannot meet the target,
/// BudgetError if the target plus cancellation exceeds 30 digits.
ContourResult rice_integral(RiceKind kind, long n, const ContourSpec& spec);

/// b_n from the reflected integrand (2 pi)^(-u-1) sin(pi u/2) zeta(1+u) n! Gamma(u+1)/(u(u+1)...(u+n))
/// along the saddle path through (1+i) sqrt(pi n): a slanted line at angle 5pi/8 from the real
/// axis (or from the c2 vertical) up to Re u = c1 sqrt(n), then up that vertical to T, then on
/// along 5pi/8 until the integrand is negligible. 4 <= n <= 100.
ContourResult saddle_contour_integral(long n, const ContourSpec& spec = ContourSpec::saddle());

}  // namespace zetadiff
