#pragma once

// Saddle-point estimates of the exponentially small differences, the saddle
// data behind them, and the empirical oscillation/decay fit for b_n.

#include <string>
#include <vector>

#include "zetadiff/bigreal.hpp"
#include "zetadiff/mpcore.hpp"

namespace zetadiff {

/// main = amplitude * cos(phase); error_scale is the size of the stated O-term
/// without its (unknown) constant.
struct AsymptoticEstimate {
  BigReal main;
  BigReal amplitude;
  BigReal phase;
  BigReal error_scale;
  std::string error_order;
  std::string validity;
};

/// Main term (2n/pi)^(1/4) e^(-2 sqrt(pi n)) cos(2 sqrt(pi n) - 5pi/8).
/// n may be any positive real (continuous evaluation for zero prediction).
AsymptoticEstimate b_asym(long n, Bits prec);
AsymptoticEstimate b_asym(const BigReal& n);

/// Which phase/amplitude to use for the Hurwitz analog.
///  scaled_shift:     (1/k)(2n/(pi k))^(1/4) e^-t cos(t - 5pi/8 - 2pi m/k)
///  scaled_no_shift:  same without the -2pi m/k
///  rederived:        (2n/(pi k))^(1/4) e^-t cos(t - 5pi/8 - pi - pi(2m-1)/k)
/// with t = sqrt(4 pi n/k). All three agree at m = k = 1.
enum class PhaseConvention { scaled_shift, scaled_no_shift, rederived };

std::string to_string(PhaseConvention c);
/// Throws ValidationError on an unknown name.
PhaseConvention phase_convention_from_string(const std::string& name);

/// The convention matching exact values (see select_phase_convention).
inline constexpr PhaseConvention kDefaultConvention = PhaseConvention::rederived;

/// Main term of a_n(m,k). With max_p > 1 the saddles of the higher Hurwitz
/// terms (p = 2..max_p, at most k) are added; they lie below the error term
/// and are for diagnostics only.
AsymptoticEstimate a_asym(long n, RationalShift q, Bits prec, PhaseConvention conv = kDefaultConvention,
                          long max_p = 1);

struct ConventionReport {
  PhaseConvention selected;
  long n;
  BigReal exact;
  /// (exact - main)/error_scale for each convention, indexed by enum value.
  std::vector<double> scaled_residual;
};

/// Evaluates a(n, q) exactly and picks the convention with the smallest residual.
ConventionReport select_phase_convention(RationalShift q, long n = 200, long target_digits = 15);

/// (n/2) psi(n) + n(gamma - 1/2 + ln(2)/2), the smooth part of A_n(1,2).
BigReal an12_main(long n, Bits prec);

/// The approximate saddle of the simplified integrand for the (p, k) term.
struct SaddleData {
  BigComplex sigma;           // x0 * sqrt(n)
  BigComplex x0;              // (1+i) sqrt(pi p/k)
  BigReal direction;          // steepest-descent angle, 5pi/8
  BigComplex omega_at_sigma;  // from the large-n expansion
  BigComplex omega2_at_sigma; // 2/(x0 sqrt(n))
};

SaddleData saddle(long n, long k, long p, Bits prec);

/// omega(s) = -s log(2 pi p/k) - i pi s/2 + log(n! Gamma(s)^2 / Gamma(s+n)),
/// evaluated directly (Re s > 0).
BigComplex omega_exact(const BigComplex& s, long n, long k, long p, Bits prec);

/// sqrt(2pi/(N f'')) e^(-N f). The square-root branch is the one whose
/// argument lies closest to `direction` (radians), i.e. the orientation in
/// which the path crosses the saddle. Throws DegenerateSaddleError if f'' = 0.
BigComplex saddle_formula(const BigComplex& f_at_x0, const BigComplex& f2_at_x0, const BigReal& N);
BigComplex saddle_formula(const BigComplex& f_at_x0, const BigComplex& f2_at_x0, const BigReal& N,
                          const BigReal& direction);

/// b_n reconstructed from the saddle data: twice the real part of
/// K0 (x0/sqrt n) * integral of e^omega across sigma, K0 = -1/(4 pi^2).
BigReal saddle_reconstruction(long n, Bits prec);

/// Fit of cos(pi(2 sqrt(n/pi) + L)) e^(-K sqrt n) to b_n over an index range.
struct BetaFit {
  double L = 0;              // reduced to (-1, 1]
  double zero_rms = 0;       // rms of (observed zero - fitted zero) in the 2 sqrt(n/pi) scale
  double alpha = 0;          // leading coefficient of the quadratic fit of sign-change positions
  double K = 0;
  double log_intercept = 0;  // best c in log|b_n| ~ c + log|cos| - K sqrt n
  double log_rms = 0;
  long sign_agreement = 0;   // indices where sign(beta) == sign(b)
  long points = 0;
  std::vector<long> observed_changes;   // n with sign(b_n) != sign(b_{n-1})
  std::vector<long> predicted_changes;  // same for beta
};

/// b values are b_lo..b_hi in order. Throws FitError if there are no sign changes.
BetaFit beta_fit(long lo, const std::vector<BigReal>& b_values, double K);
/// Computes b_lo..b_hi itself.
BetaFit beta_fit(long lo, long hi, double K);

/// Least-squares K with the phase fixed at L: log|b_n| - log|cos| ~ c - K sqrt n,
/// over indices where |cos| > 1/2.
double fit_decay_constant(long lo, const std::vector<BigReal>& b_values, double L);

/// Zeros of the b_asym main term in (0, max_n]: n_j = pi (j + 9/8)^2 / 4 for j >= -1.
std::vector<double> b_asym_zeros(double max_n);

}  // namespace zetadiff
