#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zetadiff/contour.hpp"
#include "zetadiff/differences.hpp"
#include "zetadiff/errors.hpp"
#include "zetadiff/mpcore.hpp"
#include "zetadiff/quadrature.hpp"

using namespace zetadiff;

namespace {

const Bits kPrec = digits_to_bits(40);

BigReal exact(SequenceKind kind, long n) {
  auto budget = PrecisionBudget::for_sequence(kind, n, 30);
  switch (kind) {
    case SequenceKind::delta: return delta(n, budget).value;
    case SequenceKind::d: return d(n, budget).value;
    default: return b(n, budget).value;
  }
}

// Significant digits of agreement measured against `scale` rather than |b|.
double agree_scaled(const BigReal& a, const BigReal& b, double scale) {
  BigReal diff = a - b;
  if (diff.is_zero()) return 1000.0;
  return std::log10(scale) - diff.log10_abs();
}

double b_scale(long n) {
  return std::pow(2.0 * n / std::numbers::pi, 0.25) * std::exp(-2 * std::sqrt(std::numbers::pi * n));
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials of degree < 2m exactly") {
  for (long m : {2L, 5L, 20L}) {
    const auto& rule = gauss_legendre(m, kPrec);
    REQUIRE(rule.nodes.size() == static_cast<size_t>(m));
    for (size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i - 1] < rule.nodes[i]);
    for (long deg = 0; deg < 2 * m; ++deg) {
      BigReal sum(0L, kPrec);
      for (size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * pow(rule.nodes[i], deg);
      BigReal want = deg % 2 ? BigReal(0L, kPrec) : BigReal(mpq_class(2, deg + 1), kPrec);
      CHECK(oracle::agree(sum, want) > 36);
    }
  }
  // degree 2m is not integrated exactly
  const auto& rule = gauss_legendre(3, kPrec);
  BigReal sum(0L, kPrec);
  for (size_t i = 0; i < 3; ++i) sum += rule.weights[i] * pow(rule.nodes[i], 6);
  CHECK(oracle::agree(sum, BigReal(mpq_class(2, 7), kPrec)) < 3);
}

TEST_CASE("segment quadrature of analytic functions") {
  // integral of exp over the segment from 0 to 1+2i is e^{1+2i} - 1
  BigComplex a(0.0, 0.0, kPrec), z(1.0, 2.0, kPrec);
  Segment seg{a, z, {0.0, 1.0, std::sqrt(5.0)}};
  QuadratureOptions opt;
  opt.tolerance = BigReal(1e-30, kPrec);
  auto r = integrate_segment(seg, [](const BigComplex& s) { return exp(s); }, opt);
  BigComplex want = exp(z) - 1L;
  CHECK(oracle::agree(r.value.re(), want.re()) > 30);
  CHECK(oracle::agree(r.value.im(), want.im()) > 30);
  CHECK(r.error_estimate < 1e-30);
  // 1/s along a path that stays away from 0: log(end/start)
  BigComplex s0(1.0, -1.0, kPrec), s1(-1.0, 1.0, kPrec);
  Segment up{s0, BigComplex(1.0, 1.0, kPrec), {0.0, 2.0}};
  Segment left{BigComplex(1.0, 1.0, kPrec), s1, {0.0, 2.0}};
  auto inv = [](const BigComplex& s) { return BigComplex(1.0, 0.0, s.precision()) / s; };
  BigComplex total = integrate_segment(up, inv, opt).value + integrate_segment(left, inv, opt).value;
  CHECK(oracle::agree(total.re(), BigReal(0L, kPrec)) > 30);
  CHECK(oracle::agree(total.im(), const_pi(kPrec)) > 30);
}

TEST_CASE("residue sums equal alternating binomial sums") {
  // phi = 1 sums to zero; phi = 1/(s+1) gives 1/(n+1)
  for (long n : {1L, 4L, 9L}) {
    CHECK(rice_sum_residues([](long) { return BigReal(1L, kPrec); }, 0, n, kPrec).is_zero());
    BigReal r = rice_sum_residues([](long k) { return BigReal(mpq_class(1, k + 1), kPrec); }, 0, n, kPrec);
    CHECK(oracle::agree(r, BigReal(mpq_class(1, n + 1), kPrec)) > 38);
  }
  // zeta on 2..n gives delta_n
  for (long n : {5L, 12L}) {
    BigReal r = rice_sum_residues([](long k) { return oracle::hurwitz_em(k, 1, 1, kPrec); }, 2, n, kPrec);
    CHECK(oracle::agree_rel(r, exact(SequenceKind::delta, n)) > 30);
  }
  // random integer polynomials against the direct sum in exact arithmetic
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 5), size(1, 14);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> p(static_cast<size_t>(deg(rng)) + 1);
    for (auto& c : p) c = coef(rng);
    long n = size(rng);
    auto eval = [&](long k) {
      mpz_class v = 0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * k + *it;
      return v;
    };
    mpz_class direct = 0, binom = 1;
    for (long k = 0; k <= n; ++k) {
      direct += (k % 2 ? -1 : 1) * binom * eval(k);
      binom = binom * (n - k) / (k + 1);
    }
    BigReal r = rice_sum_residues([&](long k) { return BigReal(eval(k), kPrec); }, 0, n, kPrec);
    CHECK(oracle::agree(r, BigReal(direct, kPrec)) > 30);
  }
}

TEST_CASE("line integrals reproduce the binomial differences") {
  SUBCASE("zeta to the right of 1 gives delta_n") {
    for (long n : {5L, 8L, 10L, 16L}) {
      auto r = rice_integral(RiceKind::zeta_right, n, ContourSpec::for_kind(RiceKind::zeta_right));
      INFO("n = " << n);
      CHECK(oracle::agree_rel(r.value, exact(SequenceKind::delta, n)) > 10);
      CHECK(r.truncation_bound.to_double() < 1e-10 * n);
    }
  }
  SUBCASE("zeta to the left of 0 gives b_n") {
    for (long n : {5L, 10L, 20L}) {
      auto r = rice_integral(RiceKind::zeta_left, n, ContourSpec::for_kind(RiceKind::zeta_left));
      INFO("n = " << n);
      CHECK(oracle::agree_rel(r.value, exact(SequenceKind::b, n)) > 10);
    }
    auto r = rice_integral(RiceKind::zeta_left, 10, ContourSpec::vertical(-0.5));
    CHECK(r.value.to_sci_truncated(6) == "-2.83697e-05");
  }
  SUBCASE("1/zeta gives d_n") {
    auto r = rice_integral(RiceKind::inv_zeta, 20, ContourSpec::for_kind(RiceKind::inv_zeta));
    CHECK(oracle::agree(r.value, exact(SequenceKind::d, 20)) > 10);
    CHECK(std::abs(r.value.to_double() - 1.93) < 0.01);
  }
  SUBCASE("any abscissa between the same poles gives the same value") {
    auto lo = rice_integral(RiceKind::zeta_right, 8, ContourSpec::vertical(1.2));
    auto hi = rice_integral(RiceKind::zeta_right, 8, ContourSpec::vertical(1.9));
    CHECK(oracle::agree_rel(lo.value, hi.value) > 10);
  }
}

TEST_CASE("truncating the line") {
  ContourSpec spec = ContourSpec::for_kind(RiceKind::zeta_right);
  spec.tail = TailMode::truncate;
  spec.T = 20;
  CHECK_THROWS_AS(rice_integral(RiceKind::zeta_right, 5, spec), TruncationError);
  spec.T = 300;
  auto cut = rice_integral(RiceKind::zeta_right, 12, spec);
  auto deformed = rice_integral(RiceKind::zeta_right, 12, ContourSpec::for_kind(RiceKind::zeta_right));
  CHECK(cut.truncation_bound.to_double() < 12 * std::log(12.0) * 1e-10);
  CHECK(oracle::agree_rel(cut.value, deformed.value) > 10);
}

TEST_CASE("contour arguments are validated") {
  CHECK_THROWS_AS(rice_integral(RiceKind::zeta_right, 5, ContourSpec::vertical(2.0)), ValidationError);
  CHECK_THROWS_AS(rice_integral(RiceKind::zeta_right, 5, ContourSpec::vertical(0.5)), DomainError);
  CHECK_THROWS_AS(rice_integral(RiceKind::zeta_left, 5, ContourSpec::vertical(1.5)), DomainError);
  CHECK_THROWS_AS(rice_integral(RiceKind::zeta_right, 101, ContourSpec::vertical(1.5)), DomainError);
  ContourSpec deep = ContourSpec::vertical(1.5);
  deep.target_digits = 29;
  CHECK_THROWS_AS(rice_integral(RiceKind::zeta_right, 50, deep), BudgetError);
  deep.panels = 0;
  CHECK_THROWS_AS(deep.validate(), ValidationError);
  CHECK_THROWS_AS(ContourSpec::saddle(2.0, 3.0).validate(), ValidationError);
  CHECK_THROWS_AS(ContourSpec::saddle(1.0, 1.5).validate(), ValidationError);
  ContourSpec low = ContourSpec::saddle();
  low.T = 1;
  CHECK_THROWS_AS(saddle_contour_integral(10, low), ValidationError);
  CHECK(rice_kind_from_string("left") == RiceKind::zeta_left);
  CHECK(rice_kind_from_string(to_string(RiceKind::inv_zeta)) == RiceKind::inv_zeta);
  CHECK_THROWS_AS(rice_kind_from_string("middle"), ValidationError);
}

TEST_CASE("saddle path reproduces b_n and concentrates near the saddle") {
  for (long n : {10L, 50L}) {
    auto r = saddle_contour_integral(n);
    INFO("n = " << n);
    CHECK(agree_scaled(r.value, exact(SequenceKind::b, n), b_scale(n)) > 8);
    auto line = rice_integral(RiceKind::zeta_left, n, ContourSpec::for_kind(RiceKind::zeta_left));
    CHECK(oracle::agree_rel(r.value, line.value) > 8);
    CHECK(oracle::agree(r.central + r.slanted + r.vertical, r.value) > 40);
    double share = (abs(r.vertical) / abs(r.value)).to_double();
    CHECK(share < std::exp(-0.1 * std::sqrt(static_cast<double>(n))));
  }
}

TEST_CASE("saddle path at n = 100 to 10 digits") {
  ContourSpec spec = ContourSpec::saddle();
  spec.target_digits = 10;
  auto r = saddle_contour_integral(100, spec);
  CHECK(oracle::agree_rel(r.value, exact(SequenceKind::b, 100)) > 10);
  double share = (abs(r.vertical) / abs(r.value)).to_double();
  CHECK(share < std::exp(-0.1 * 10.0));
}

TEST_CASE("moving the verticals does not change the saddle-path value") {
  auto a = saddle_contour_integral(30, ContourSpec::saddle(1.0, 3.0));
  auto b = saddle_contour_integral(30, ContourSpec::saddle(0.5, 2.2));
  CHECK(agree_scaled(a.value, b.value, b_scale(30)) > 9);
}

TEST_CASE("refining the base panels changes the result by less than the error estimate") {
  ContourSpec spec = ContourSpec::for_kind(RiceKind::zeta_left);
  auto coarse = rice_integral(RiceKind::zeta_left, 8, spec);
  spec.panels = 2;
  auto fine = rice_integral(RiceKind::zeta_left, 8, spec);
  CHECK(abs(coarse.value - fine.value) <= coarse.quadrature_error + fine.quadrature_error);
  CHECK(fine.evaluations > coarse.evaluations);
}

TEST_CASE("contour values do not depend on the thread count") {
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto one = rice_integral(RiceKind::inv_zeta, 10, ContourSpec::for_kind(RiceKind::inv_zeta));
  omp_set_num_threads(4);
  auto four = rice_integral(RiceKind::inv_zeta, 10, ContourSpec::for_kind(RiceKind::inv_zeta));
  omp_set_num_threads(saved);
  CHECK(one.value == four.value);
  CHECK(one.evaluations == four.evaluations);
}
