#include "zetadiff/differences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zetadiff/errors.hpp"
#include "zetadiff/kernels.hpp"

namespace zetadiff {

namespace {

constexpr long kSeriesGuardDigits = 10;

void require_budget(SequenceKind kind, long n, const PrecisionBudget& budget, long k = 1) {
  budget.validate();
  long need = required_working_digits(kind, n, budget.target_digits, k, budget.guard_digits);
  if (budget.working_digits < need)
    throw BudgetError("working precision of " + std::to_string(budget.working_digits) + " digits is too small at n=" +
                          std::to_string(n) + "; " + std::to_string(need) + " digits required",
                      need);
}

long achieved(SequenceKind kind, long n, const PrecisionBudget& budget, long k = 1) {
  long usable = budget.working_digits - cancellation_digits(kind, n, k) - budget.guard_digits / 2;
  return std::max(0L, std::min(budget.target_digits, usable));
}

// Values phi[l] for the binomial sum of each kind, l = 0..nmax.
std::vector<BigReal> phi_table(SequenceKind kind, long nmax, RationalShift q, Bits prec) {
  std::vector<BigReal> phi(static_cast<size_t>(nmax) + 1, BigReal(prec));
  switch (kind) {
    case SequenceKind::delta:
    case SequenceKind::b: {
      auto z = kernels::zeta_table(nmax, prec);
      for (long l = 2; l <= nmax; ++l) phi[l] = (*z)[l];
      break;
    }
    case SequenceKind::d: {
      auto z = kernels::zeta_table(nmax, prec);
      for (long l = 2; l <= nmax; ++l) phi[l] = BigReal(1L, prec) / (*z)[l];
      break;
    }
    case SequenceKind::c: {
      auto z = kernels::zeta_table(nmax + 1, prec);
      for (long l = 1; l <= nmax; ++l) phi[l] = (*z)[l + 1] / (l + 1);
      break;
    }
    case SequenceKind::A:
    case SequenceKind::a: {
      if (nmax < 2) break;
      auto vals = kernels::omp::map_real(nmax - 1, [&](long i) {
        return lattice_zeta(i + 2, static_cast<unsigned long>(q.m), static_cast<unsigned long>(q.k), prec);
      });
      for (long l = 2; l <= nmax; ++l) phi[l] = std::move(vals[l - 2]);
      break;
    }
  }
  return phi;
}

long lower_index(SequenceKind kind) { return kind == SequenceKind::c ? 1 : 2; }

// Residue terms that turn delta / A into the exponentially small b / a.
BigReal residue_part(SequenceKind kind, long n, RationalShift q, Bits prec) {
  BigReal h = harmonic(n - 1, prec);
  if (kind == SequenceKind::b) {
    BigReal g = const_euler(prec);
    return BigReal(n, prec) * (1L - g - h) - BigReal(0.5, prec);
  }
  // -(m/k - 1/2) + (n/k)[psi(m/k) + ln k + 1 - H_{n-1}]
  BigReal psi = digamma_rational(q, prec);
  BigReal lnk = log(BigReal(q.k, prec));
  BigReal shift(mpq_class(2 * q.m - q.k, 2 * q.k), prec);
  return BigReal(mpq_class(n, q.k), prec) * (psi + lnk + 1L - h) - shift;
}

std::vector<BigReal> finish(SequenceKind kind, const std::vector<long>& ns, std::vector<BigReal> raw, RationalShift q,
                            Bits prec) {
  for (size_t i = 0; i < ns.size(); ++i) {
    long n = ns[i];
    switch (kind) {
      case SequenceKind::b:
        if (n == 0) raw[i] = BigReal(0.5, prec);
        else raw[i] += residue_part(kind, n, q, prec);
        break;
      case SequenceKind::a:
        raw[i] += residue_part(kind, n, q, prec);
        break;
      case SequenceKind::c:
        raw[i] = -raw[i];
        break;
      default:
        break;
    }
  }
  return raw;
}

std::vector<BigReal> binomial_values(SequenceKind kind, const std::vector<long>& ns, RationalShift q, Bits prec) {
  long nmax = ns.empty() ? 0 : *std::max_element(ns.begin(), ns.end());
  auto phi = phi_table(kind, nmax, q, prec);
  auto raw = kernels::omp::binomial_sweep(phi, lower_index(kind), ns, prec);
  return finish(kind, ns, std::move(raw), q, prec);
}

BigReal single(SequenceKind kind, long n, RationalShift q, const PrecisionBudget& budget) {
  return std::move(binomial_values(kind, {n}, q, budget.bits()).front());
}

// log of the tail bound sum_{j>J} w_j L^{1-j}/(j-1) where log w_j is supplied.
template <class LogWeight>
long tail_order(long L, double digits, long jmax, LogWeight&& log_weight) {
  const double target = -(digits + 2.0) * std::log(10.0);
  const double lnL = std::log(static_cast<double>(L));
  for (long J = 2; J < jmax; ++J) {
    long j = J + 1;
    double t = log_weight(j) + (1.0 - static_cast<double>(j)) * lnL - std::log(static_cast<double>(j - 1));
    double t2 = log_weight(j + 1) - static_cast<double>(j) * lnL - std::log(static_cast<double>(j));
    // Terms must already be shrinking geometrically (ratio below 1/2) for the bound to hold.
    if (t < target && t2 - t < -std::log(2.0)) return J;
  }
  return jmax;
}

double log_binomial(long n, long j) {
  if (j > n) return -INFINITY;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(j) + 1.0) -
         std::lgamma(static_cast<double>(n - j) + 1.0);
}

// T_j = 1/zeta(j) - sum_{l<=L} mu(l) l^-j for j = 2..J; |T_j| <= L^{1-j}/(j-1).
std::vector<BigReal> moebius_remainders(long J, long L, const std::vector<int>& mu, Bits prec) {
  std::vector<BigReal> out(static_cast<size_t>(J) + 1, BigReal(prec));
  std::vector<BigReal> pw(static_cast<size_t>(L) + 1, BigReal(prec));
  for (long l = 1; l <= L; ++l) {
    pw[l] = BigReal(1L, prec);
    mpfr_div_ui(pw[l].get(), pw[l].get(), static_cast<unsigned long>(l) * static_cast<unsigned long>(l), MPFR_RNDN);
  }
  auto zt = kernels::zeta_table(std::max(J, 2L), prec);
  for (long j = 2; j <= J; ++j) {
    BigReal partial(prec);
    for (long l = 1; l <= L; ++l) {
      if (mu[l] > 0) partial += pw[l];
      else if (mu[l] < 0) partial -= pw[l];
      mpfr_div_ui(pw[l].get(), pw[l].get(), static_cast<unsigned long>(l), MPFR_RNDN);
    }
    out[j] = BigReal(1L, prec) / (*zt)[j] - partial;
  }
  return out;
}

// (1 - 1/l)^n - 1 + n/l
BigReal rearranged_term(long n, long l, Bits prec) {
  BigReal r(mpq_class(l - 1, l), prec);
  BigReal out(prec);
  mpfr_pow_ui(out.get(), r.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  out -= 1L;
  out += BigReal(mpq_class(n, l), prec);
  return out;
}

BigReal delta_series(long n, const PrecisionBudget& budget) {
  if (n < 2) return BigReal(budget.bits());
  const long L = std::max(4 * n, 16L);
  const double digits = static_cast<double>(budget.working_digits);
  Bits prec = digits_to_bits(budget.working_digits + kSeriesGuardDigits);
  BigReal head = kernels::pairwise_sum(kernels::omp::map_real(L, [&](long i) { return rearranged_term(n, i + 1, prec); }));
  long J = tail_order(L, digits, n, [&](long j) { return log_binomial(n, j); });
  J = std::min(J, n);
  auto tails = kernels::omp::map_real(J - 1, [&](long i) {
    long j = i + 2;
    return lattice_zeta(j, static_cast<unsigned long>(L + 1), 1, prec);
  });
  auto row = binomial_row(n);
  BigReal tail(prec);
  for (long j = 2; j <= J; ++j) {
    BigReal t = tails[j - 2];
    t *= row[j];
    if (j % 2 == 0) tail += t;
    else tail -= t;
  }
  return round_to(head + tail, budget.bits());
}

BigReal d_moebius(long n, const PrecisionBudget& budget) {
  if (n < 2) return BigReal(budget.bits());
  const long L = std::max(4 * n, 16L);
  const double digits = static_cast<double>(budget.working_digits);
  long J = std::min(tail_order(L, digits, n, [&](long j) { return log_binomial(n, j); }), n);
  // T_j loses about (j-1) log10 L digits to cancellation against 1/zeta(j).
  long extra = static_cast<long>(std::ceil(static_cast<double>(J - 1) * std::log10(static_cast<double>(L))));
  Bits prec = digits_to_bits(budget.working_digits + kSeriesGuardDigits + extra);
  auto mu = mobius_upto(L);
  BigReal head = kernels::pairwise_sum(kernels::omp::map_real(L, [&](long i) {
    long l = i + 1;
    if (mu[l] == 0) return BigReal(prec);
    BigReal t = rearranged_term(n, l, prec);
    return mu[l] > 0 ? t : -t;
  }));
  auto T = moebius_remainders(J, L, mu, prec);
  auto row = binomial_row(n);
  BigReal tail(prec);
  for (long j = 2; j <= J; ++j) {
    BigReal t = T[j];
    t *= row[j];
    if (j % 2 == 0) tail += t;
    else tail -= t;
  }
  return round_to(head + tail, budget.bits());
}

SequencePoint make_point(long n, BigReal value, Method method, long digits) {
  SequencePoint p;
  p.n = n;
  p.value = std::move(value);
  p.method = method;
  p.achieved_digits = digits;
  return p;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::binomial: return "binomial";
    case Method::series: return "series";
    case Method::residue_adjusted: return "residue-adjusted";
    case Method::moebius: return "moebius";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "binomial") return Method::binomial;
  if (name == "series") return Method::series;
  if (name == "residue-adjusted") return Method::residue_adjusted;
  if (name == "moebius") return Method::moebius;
  throw ValidationError("unknown method '" + name + "'");
}

// ------------------------------------------------------------ characters

CharacterTable::CharacterTable(long k, std::vector<std::optional<mpq_class>> phases) : k_(k), phases_(std::move(phases)) {
  for (auto& p : phases_)
    if (p) {
      p->canonicalize();
      // Reduce into [0, 1).
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), p->get_num_mpz_t(), p->get_den_mpz_t());
      *p -= fl;
    }
  validate();
}

CharacterTable CharacterTable::principal(long k) {
  if (k < 1) throw ValidationError("character period must be >= 1");
  std::vector<std::optional<mpq_class>> ph(static_cast<size_t>(k));
  for (long j = 1; j <= k; ++j)
    if (std::gcd(j, k) == 1) ph[j - 1] = mpq_class(0);
  return CharacterTable(k, std::move(ph));
}

CharacterTable CharacterTable::mod4() {
  return CharacterTable(4, {mpq_class(0), std::nullopt, mpq_class(1, 2), std::nullopt});
}

void CharacterTable::validate() const {
  if (k_ < 1) throw ValidationError("character period must be >= 1");
  if (static_cast<long>(phases_.size()) != k_)
    throw ValidationError("character table needs exactly k = " + std::to_string(k_) + " values");
  for (long j = 1; j <= k_; ++j) {
    bool unit = std::gcd(j, k_) == 1;
    if (unit != phase(j).has_value())
      throw ValidationError("chi(" + std::to_string(j) + ") must be " + (unit ? "a root of unity" : "zero"));
  }
  if (*phase(1) != 0) throw ValidationError("chi(1) must equal 1");
  for (long x = 1; x <= k_; ++x) {
    if (!phase(x)) continue;
    for (long y = x; y <= k_; ++y) {
      if (!phase(y)) continue;
      long xy = (x * y) % k_;
      if (xy == 0) xy = k_;
      mpq_class diff = *phase(xy) - *phase(x) - *phase(y);
      diff.canonicalize();
      if (diff.get_den() != 1)
        throw ValidationError("table is not multiplicative at " + std::to_string(x) + "*" + std::to_string(y));
    }
  }
}

BigComplex CharacterTable::value(long j, Bits prec) const {
  long r = ((j - 1) % k_ + k_) % k_ + 1;
  const auto& p = phase(r);
  if (!p) return BigComplex(prec);
  mpq_class four = *p * 4;
  four.canonicalize();
  if (four.get_den() == 1) {
    static const double re[] = {1, 0, -1, 0}, im[] = {0, 1, 0, -1};
    long idx = four.get_num().get_si() % 4;
    return BigComplex(re[idx], im[idx], prec);
  }
  BigReal theta = BigReal(*p, prec) * const_pi(prec) * 2L;
  return polar(BigReal(1L, prec), theta);
}

std::vector<BigComplex> CharacterTable::values(Bits prec) const {
  std::vector<BigComplex> out;
  for (long j = 1; j <= k_; ++j) out.push_back(value(j, prec));
  return out;
}

// ------------------------------------------------------------ sequences

long required_digits(SequenceKind kind, long n, long target_digits, RationalShift q) {
  return required_working_digits(kind, n, target_digits, q.k);
}

SequencePoint delta(long n, const PrecisionBudget& budget, Method method) {
  if (n < 0) throw DomainError("delta: n must be >= 0");
  if (method == Method::series) {
    budget.validate();
    return make_point(n, delta_series(n, budget), method, budget.target_digits);
  }
  if (method != Method::binomial) throw ValidationError("delta supports methods binomial and series");
  require_budget(SequenceKind::delta, n, budget);
  return make_point(n, single(SequenceKind::delta, n, {1, 1}, budget), method,
                    achieved(SequenceKind::delta, n, budget));
}

SequencePoint b(long n, const PrecisionBudget& budget) {
  if (n < 0) throw DomainError("b: n must be >= 0");
  require_budget(SequenceKind::b, n, budget);
  return make_point(n, single(SequenceKind::b, n, {1, 1}, budget), Method::binomial,
                    achieved(SequenceKind::b, n, budget));
}

SequencePoint A(long n, RationalShift q, const PrecisionBudget& budget) {
  q.validate();
  if (n < 0) throw DomainError("A: n must be >= 0");
  require_budget(SequenceKind::A, n, budget);
  return make_point(n, single(SequenceKind::A, n, q, budget), Method::binomial, achieved(SequenceKind::A, n, budget));
}

SequencePoint a(long n, RationalShift q, const PrecisionBudget& budget) {
  q.validate();
  if (n < 1) throw DomainError("a: n must be >= 1");
  require_budget(SequenceKind::a, n, budget, q.k);
  return make_point(n, single(SequenceKind::a, n, q, budget), Method::residue_adjusted,
                    achieved(SequenceKind::a, n, budget, q.k));
}

BigComplex dirichlet_diff(const CharacterTable& chi, long n, const PrecisionBudget& budget) {
  chi.validate();
  if (n < 0) throw DomainError("dirichlet_diff: n must be >= 0");
  require_budget(SequenceKind::A, n, budget);
  Bits prec = budget.bits();
  BigComplex out(prec);
  for (long m = 1; m <= chi.period(); ++m) {
    if (!chi.phase(m)) continue;
    BigReal am = single(SequenceKind::A, n, {m, chi.period()}, budget);
    out += chi.value(m, prec) * am;
  }
  return out;
}

SequencePoint d(long n, const PrecisionBudget& budget, Method method) {
  if (n < 0) throw DomainError("d: n must be >= 0");
  if (method == Method::moebius) {
    budget.validate();
    return make_point(n, d_moebius(n, budget), method, budget.target_digits);
  }
  if (method != Method::binomial) throw ValidationError("d supports methods binomial and moebius");
  require_budget(SequenceKind::d, n, budget);
  return make_point(n, single(SequenceKind::d, n, {1, 1}, budget), method, achieved(SequenceKind::d, n, budget));
}

SequencePoint c(long n, const PrecisionBudget& budget) {
  if (n < 0) throw DomainError("c: n must be >= 0");
  require_budget(SequenceKind::c, n, budget);
  return make_point(n, single(SequenceKind::c, n, {1, 1}, budget), Method::binomial,
                    achieved(SequenceKind::c, n, budget));
}

BigReal D_of(const BigReal& x, const PrecisionBudget& budget) {
  budget.validate();
  if (x.sign() <= 0) throw DomainError("D_of: x must be positive");
  const double xd = x.to_double();
  // Small x: each term is ~ (x/l)^2/2 after cancelling 1 - x/l. Large x: terms of size x cancel to O(1).
  long extra = 2 * static_cast<long>(std::ceil(std::max(0.0, -std::log10(xd)))) +
               static_cast<long>(std::ceil(std::log10(xd + 1.0)));
  const long L = std::max(static_cast<long>(std::ceil(4.0 * xd)), 16L);
  const double digits = static_cast<double>(budget.working_digits + extra);
  long J = tail_order(L, digits, 100000, [&](long j) {
    return static_cast<double>(j) * std::log(xd) - std::lgamma(static_cast<double>(j) + 1.0);
  });
  long cancel = static_cast<long>(std::ceil(static_cast<double>(J - 1) * std::log10(static_cast<double>(L))));
  Bits prec = digits_to_bits(budget.working_digits + extra + cancel + kSeriesGuardDigits);
  BigReal xr = round_to(x, prec);
  auto mu = mobius_upto(L);
  BigReal head = kernels::pairwise_sum(kernels::omp::map_real(L, [&](long i) {
    long l = i + 1;
    if (mu[l] == 0) return BigReal(prec);
    BigReal y = xr / l;
    BigReal t = expm1(-y) + y;
    return mu[l] > 0 ? t : -t;
  }));
  auto T = moebius_remainders(J, L, mu, prec);
  BigReal tail(prec);
  BigReal w = xr / 1L;  // (-x)^j / j!
  w = -w;
  for (long j = 2; j <= J; ++j) {
    w *= -xr;
    w /= j;
    tail += w * T[j];
  }
  return round_to(head + tail, budget.bits());
}

std::vector<SequencePoint> sweep(SequenceKind kind, const std::vector<long>& ns, long target_digits, RationalShift q) {
  q.validate();
  if (ns.empty()) return {};
  long nmax = *std::max_element(ns.begin(), ns.end());
  long nmin = *std::min_element(ns.begin(), ns.end());
  if (nmin < 0) throw DomainError("sweep: indices must be >= 0");
  if (kind == SequenceKind::a && nmin < 1) throw DomainError("sweep: a_n needs n >= 1");
  auto budget = PrecisionBudget::for_sequence(kind, nmax, target_digits, q.k);
  auto vals = binomial_values(kind, ns, q, budget.bits());
  Method method = kind == SequenceKind::a ? Method::residue_adjusted : Method::binomial;
  std::vector<SequencePoint> out;
  out.reserve(ns.size());
  for (size_t i = 0; i < ns.size(); ++i)
    out.push_back(make_point(ns[i], std::move(vals[i]), method, target_digits));
  return out;
}

}  // namespace zetadiff
