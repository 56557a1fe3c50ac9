#include <doctest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "zetadiff/differences.hpp"
#include "zetadiff/errors.hpp"
#include "zetadiff/mpcore.hpp"
#include "zetadiff/series.hpp"

using namespace zetadiff;

namespace {

const Bits kPrec = digits_to_bits(30);

// zeta(m) - 1/(m-1) at integers, Euler's constant at m = 1.
BigReal z_at(long m, Bits prec) {
  if (m == 0) return BigReal(mpq_class(1, 2), prec);
  if (m == 1) return const_euler(prec);
  return oracle::hurwitz_em(m, 1, 1, prec) - BigReal(mpq_class(1, m - 1), prec);
}

BigComplex z_of(const BigComplex& s, Bits prec) {
  return zeta_cx(s, prec) - BigComplex(BigReal(1L, prec)) / (s - 1L);
}

double agree_cx(const BigComplex& a, const BigComplex& b) {
  BigReal d = abs(a - b);
  return d.is_zero() ? 1000.0 : -d.log10_abs();
}

}  // namespace

TEST_CASE("truncated series arithmetic keeps the smaller order") {
  std::vector<BigReal> geo(8, BigReal(1L, kPrec));  // 1/(1-z) to order 7
  std::vector<BigReal> lin{BigReal(1L, kPrec), BigReal(-1L, kPrec), BigReal(0L, kPrec), BigReal(0L, kPrec)};
  TruncatedSeries one = TruncatedSeries(geo) * TruncatedSeries(lin);
  CHECK(one.order() == 3);
  CHECK(one[0] == BigReal(1L, kPrec));
  for (long i = 1; i <= 3; ++i) CHECK(one[i].is_zero());
  CHECK((TruncatedSeries(geo) + TruncatedSeries::monomial(2, 5, kPrec)).order() == 5);
  CHECK((TruncatedSeries(geo) - TruncatedSeries(geo))[7].is_zero());
  CHECK_THROWS_AS(TruncatedSeries(std::vector<BigReal>{}), ValidationError);
}

TEST_CASE("Newton series terminates at nonnegative integers") {
  for (long m = 0; m <= 10; ++m) {
    auto r = newton_eval(BigComplex(BigReal(m, kPrec)), 20, kPrec);
    INFO("m = " << m);
    CHECK(r.tail_bound.is_zero());
    CHECK(r.value.im().is_zero());
    CHECK(oracle::agree(r.value.re(), z_at(m, kPrec)) > 28);
  }
}

TEST_CASE("Newton series at s = -1 and s = 1/2 with 500 terms") {
  auto minus_one = newton_eval(BigComplex(-1.0, 0.0, kPrec), 500, kPrec);
  CHECK(oracle::agree(minus_one.value.re(), BigReal(mpq_class(5, 12), kPrec)) > 20);
  CHECK(minus_one.tail_bound < 1e-20);

  auto half = newton_eval(BigComplex(0.5, 0.0, kPrec), 500, kPrec);
  BigReal want = BigReal::parse("-1.46035450880958681288949915251529801", kPrec) + 2L;
  CHECK(oracle::agree(half.value.re(), want) > 20);
  CHECK(agree_cx(half.value, z_of(BigComplex(0.5, 0.0, kPrec), kPrec)) > 20);
  CHECK(half.tail_bound < 1e-20);
}

TEST_CASE("the tail bound covers the truncation error") {
  const double points[][2] = {{0.5, 0.0}, {-1.5, 0.0}, {-2.7, 0.4}, {2.5, 0.0}, {0.3, 1.0},
                              {1.0, 2.0}, {-0.5, -2.5}, {0.0, 3.0}, {2.0, -2.0}, {1.5, 0.5}};
  for (const auto& p : points) {
    BigComplex s(p[0], p[1], kPrec);
    auto r = newton_eval(s, 80, kPrec);
    INFO("s = " << p[0] << " + " << p[1] << "i");
    BigReal err = abs(r.value - z_of(s, kPrec));
    CHECK(err <= r.tail_bound);
    CHECK(r.tail_bound < 1e-6);
  }
}

TEST_CASE("tail bound decreases with N and names the N it needs") {
  BigComplex s(1.0, 2.0, kPrec);
  double prev = newton_tail_bound(s, 10);
  for (long N : {20L, 40L, 80L, 160L}) {
    double t = newton_tail_bound(s, N);
    CHECK(t < prev);
    prev = t;
  }
  long need = newton_terms_for(s, 1e-15);
  CHECK(newton_tail_bound(s, need) <= 1e-15);
  CHECK(newton_tail_bound(s, need - 1) > 1e-15);
  try {
    newton_eval(s, 20, kPrec, 1e-15);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(std::string(e.what()).find("N >= " + std::to_string(need)) != std::string::npos);
  }
  CHECK_THROWS_AS(newton_eval(s, 0, kPrec), DomainError);
}

TEST_CASE("generating-function coefficients are delta_n") {
  const long M = 12;
  auto ogf = ogf_coeffs(M, kPrec);
  auto egf = egf_coeffs(M, kPrec);
  REQUIRE(ogf.order() == M);
  REQUIRE(egf.order() == M);
  CHECK(ogf[0].is_zero());
  CHECK(ogf[1].is_zero());
  CHECK(egf[0].is_zero());
  CHECK(egf[1].is_zero());
  BigReal pi = const_pi(kPrec);
  CHECK(oracle::agree(ogf[2], pi * pi / 6L) > 29);
  CHECK(oracle::agree(egf[2] * 2L, pi * pi / 6L) > 29);
  BigReal fact(1L, kPrec);
  for (long n = 2; n <= M; ++n) {
    fact *= n;
    BigReal want = delta(n, PrecisionBudget::for_sequence(SequenceKind::delta, n, 30)).value;
    INFO("n = " << n);
    CHECK(oracle::agree_rel(ogf[n], want) > 29);
    CHECK(oracle::agree_rel(egf[n] * fact, want) > 29);
    CHECK(oracle::agree_rel(ogf[n], egf[n] * fact) > 29);
  }
  CHECK_THROWS_AS(ogf_coeffs(1, kPrec), DomainError);
  CHECK_THROWS_AS(egf_coeffs(1, kPrec), DomainError);
}
