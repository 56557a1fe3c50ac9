#pragma once

// Gauss-Legendre rules and adaptive panel quadrature along straight segments
// in the complex plane.

#include <functional>
#include <vector>

#include "zetadiff/bigreal.hpp"

namespace zetadiff {

/// Nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<BigReal> nodes;
  std::vector<BigReal> weights;
};

/// Rule of the given order at the given precision; computed once and cached.
const GaussLegendre& gauss_legendre(long order, Bits prec);

/// A straight piece of a path, split into base panels at `breaks`
/// (arc-length positions from `start`, first 0, last = length).
struct Segment {
  BigComplex start;
  BigComplex end;
  std::vector<double> breaks;
};

struct QuadratureOptions {
  long order = 20;
  /// Each base panel is split this many times before adaptive refinement.
  long refine = 1;
  long max_depth = 12;
  /// Absolute tolerance for the whole path.
  BigReal tolerance;
};

struct PathIntegral {
  BigComplex value;        // integral of f(s) ds
  BigReal error_estimate;  // sum over leaves of |I(panel) - I(halves)|
  long evaluations = 0;
  long panels = 0;         // accepted leaf panels
};

/// Adaptive Gauss-Legendre over each base panel: a panel is accepted when the
/// rule on the whole panel and on its two halves agree to the panel's share of
/// the tolerance. Base panels run on the omp kernels; the result does not
/// depend on the thread count.
PathIntegral integrate_segment(const Segment& seg, const std::function<BigComplex(const BigComplex&)>& f,
                               const QuadratureOptions& opt);

}  // namespace zetadiff
