#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

#include "zetadiff/asymptotics.hpp"
#include "zetadiff/cli.hpp"
#include "zetadiff/contour.hpp"
#include "zetadiff/differences.hpp"
#include "zetadiff/errors.hpp"
#include "zetadiff/mpcore.hpp"
#include "zetadiff/series.hpp"

namespace zetadiff::cli {

namespace {

long to_index(const std::string& s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ValidationError("not an integer: '" + s + "'");
  return v;
}

// Significant digits shared by a and b, relative to |b|.
double agreement(const BigReal& a, const BigReal& b) {
  BigReal d = a - b;
  if (d.is_zero()) return 1000;
  if (b.is_zero()) return -d.log10_abs();
  return b.log10_abs() - d.log10_abs();
}

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

Check min_agreement(const std::string& name, const std::vector<double>& digits, double need) {
  double worst = 1000;
  for (double d : digits) worst = std::min(worst, d);
  return {name, worst >= need, fmt(worst) + " digits", ">= " + fmt(need) + " digits"};
}

}  // namespace

std::vector<long> parse_indices(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw ValidationError("empty entry in index list '" + text + "'");
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_index(part));
      continue;
    }
    long a = to_index(part.substr(0, dots)), b = to_index(part.substr(dots + 2));
    if (b < a) throw ValidationError("empty range '" + part + "'");
    for (long n = a; n <= b; ++n) out.push_back(n);
  }
  if (out.empty()) throw ValidationError("no indices given");
  return out;
}

BigComplex parse_complex(const std::string& text, Bits prec) {
  static const std::regex form(R"(^\s*([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)?\s*(?:([+-])\s*([0-9.]*(?:[eE][+-]?[0-9]+)?)\s*i)?\s*$)");
  static const std::regex pure(R"(^\s*([+-]?[0-9.]*(?:[eE][+-]?[0-9]+)?)\s*i\s*$)");
  std::smatch m;
  auto num = [&](const std::string& s) {
    try {
      return BigReal::parse(s, prec);
    } catch (const std::invalid_argument&) {
      throw ValidationError("not a complex number: '" + text + "'");
    }
  };
  if (std::regex_match(text, m, pure)) {
    std::string im = m[1].str();
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {BigReal(0L, prec), num(im)};
  }
  if (!std::regex_match(text, m, form) || !m[1].matched) throw ValidationError("not a complex number: '" + text + "'");
  BigReal re = num(m[1].str());
  BigReal im(0L, prec);
  if (m[2].matched) {
    std::string mag = m[3].str().empty() ? "1" : m[3].str();
    im = num(mag);
    if (m[2].str() == "-") im = -im;
  }
  return {re, im};
}

std::vector<Figure2Row> figure2_rows(long lo, long hi) {
  if (lo < 1 || hi < lo) throw ValidationError("figure2: need 1 <= lo <= hi");
  std::vector<long> ns;
  for (long n = lo; n <= hi; ++n) ns.push_back(n);
  auto pts = sweep(SequenceKind::b, ns, 15);
  std::vector<Figure2Row> rows;
  for (const auto& p : pts) {
    auto est = b_asym(p.n, p.value.precision());
    // e^{2 sqrt(pi n)} n^{-1/4} = n^{-1/2} / error_scale
    BigReal scale = sqrt(BigReal(p.n, p.value.precision())) * est.error_scale;
    rows.push_back({p.n, (p.value / scale).to_double(), (est.main / scale).to_double()});
  }
  return rows;
}

IdentityReport identity_report(long n, long digits) {
  if (n < 2) throw ValidationError("identity: n must be >= 2");
  auto budget = PrecisionBudget::for_sequence(SequenceKind::c, n, digits + 5);
  Bits prec = budget.bits();
  IdentityReport r;
  r.n = n;
  r.value = c(n, budget).value - harmonic(n, prec) + 1L;
  r.gamma = const_euler(prec);
  r.difference = r.value - r.gamma;
  BigReal shifted = r.difference - BigReal(mpq_class(1, 1000), prec);
  r.matching_digits = shifted.is_zero() ? digits : static_cast<long>(std::floor(-shifted.log10_abs()));
  return r;
}

std::vector<ZeroTerm> default_zero_model() { return {{0.5, 14.13, 1e-9}, {0.5, 21.022, 1e-14}}; }

double zero_model_term(const ZeroTerm& z, double n) {
  return z.coefficient * std::pow(n, z.re) * std::cos(z.im * std::log(n));
}

double zero_model_threshold(const ZeroTerm& z) { return std::pow(1 / z.coefficient, 1 / z.re); }

std::vector<Check> verify_suite(const std::string& suite) {
  if (suite != "fast" && suite != "full") throw ValidationError("unknown suite '" + suite + "' (fast, full)");
  std::vector<Check> out;

  {
    std::vector<double> dd, di;
    for (long n = 2; n <= 40; ++n) {
      auto bd = PrecisionBudget::for_sequence(SequenceKind::delta, n, 20);
      dd.push_back(agreement(delta(n, bd, Method::series).value, delta(n, bd).value));
      auto bi = PrecisionBudget::for_sequence(SequenceKind::d, n, 20);
      di.push_back(agreement(d(n, bi, Method::moebius).value, d(n, bi).value));
    }
    out.push_back(min_agreement("delta binomial vs series, n = 2..40", dd, 18));
    out.push_back(min_agreement("d binomial vs moebius, n = 2..40", di, 18));
  }
  {
    std::vector<long> ns;
    for (long n = 1; n <= 200; ++n) ns.push_back(n);
    double worst = 0;
    long at = 0;
    for (const auto& p : sweep(SequenceKind::b, ns, 12)) {
      auto est = b_asym(p.n, p.value.precision());
      double r = (abs(p.value - est.main) / est.error_scale).to_double();
      if (r > worst) {
        worst = r;
        at = p.n;
      }
    }
    out.push_back({"b_n within 5 envelopes of the main term, n = 1..200", worst <= 5,
                   "max " + fmt(worst) + " at n = " + std::to_string(at), "<= 5"});
  }
  {
    Bits prec = digits_to_bits(30);
    auto ogf = ogf_coeffs(12, prec);
    auto egf = egf_coeffs(12, prec);
    std::vector<double> dg;
    BigReal fact(1L, prec);
    for (long n = 2; n <= 12; ++n) {
      fact *= n;
      BigReal want = delta(n, PrecisionBudget::for_sequence(SequenceKind::delta, n, 30)).value;
      dg.push_back(agreement(ogf[n], want));
      dg.push_back(agreement(egf[n] * fact, want));
    }
    out.push_back(min_agreement("OGF and EGF coefficients vs delta_n, order 12", dg, 29));
  }
  if (suite == "fast") return out;

  for (RiceKind kind : {RiceKind::zeta_right, RiceKind::zeta_left, RiceKind::inv_zeta}) {
    std::vector<double> dg;
    for (long n : {5L, 10L, 20L, 50L}) {
      SequenceKind sk = kind == RiceKind::zeta_right ? SequenceKind::delta
                        : kind == RiceKind::zeta_left ? SequenceKind::b
                                                      : SequenceKind::d;
      auto budget = PrecisionBudget::for_sequence(sk, n, 20);
      BigReal want = sk == SequenceKind::delta ? delta(n, budget).value
                     : sk == SequenceKind::b   ? b(n, budget).value
                                               : d(n, budget).value;
      dg.push_back(agreement(rice_integral(kind, n, ContourSpec::for_kind(kind)).value, want));
    }
    out.push_back(min_agreement("line integral (" + to_string(kind) + ") vs binomial, n = 5, 10, 20, 50", dg, 10));
  }
  {
    std::vector<double> dg;
    for (long n : {10L, 50L})
      dg.push_back(agreement(saddle_contour_integral(n).value,
                             b(n, PrecisionBudget::for_sequence(SequenceKind::b, n, 20)).value));
    out.push_back(min_agreement("saddle path vs binomial b_n, n = 10, 50", dg, 8));
  }
  {
    Bits prec = digits_to_bits(30);
    std::vector<double> dg;
    for (long m = 0; m <= 5; ++m) {
      BigReal want = m == 0   ? BigReal(mpq_class(1, 2), prec)
                     : m == 1 ? const_euler(prec)
                              : zeta_int(m, prec) - BigReal(mpq_class(1, m - 1), prec);
      dg.push_back(-abs(newton_eval(BigComplex(BigReal(m, prec)), 20, prec).value.re() - want).log10_abs());
    }
    out.push_back(min_agreement("Newton series at s = 0..5 (absolute)", dg, 28));
    BigReal at_m1 = newton_eval(BigComplex(-1.0, 0.0, prec), 500, prec).value.re();
    BigComplex half(0.5, 0.0, prec);
    BigReal at_half = newton_eval(half, 500, prec).value.re();
    BigReal z_half = zeta_cx(half, prec).re() + 2L;
    out.push_back(min_agreement("Newton series at s = -1 and 1/2, 500 terms",
                                {agreement(at_m1, BigReal(mpq_class(5, 12), prec)), agreement(at_half, z_half)}, 20));
  }
  return out;
}

}  // namespace zetadiff::cli
