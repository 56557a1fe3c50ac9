#include <CLI11.hpp>
#include <omp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "zetadiff/asymptotics.hpp"
#include "zetadiff/cli.hpp"
#include "zetadiff/contour.hpp"
#include "zetadiff/differences.hpp"
#include "zetadiff/errors.hpp"
#include "zetadiff/series.hpp"

namespace zetadiff::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string kind;
  std::string n_text;
  std::string range_text;
  long m = 1;
  long k = 1;
  long digits = 0;  // 0: the command's default
  std::string method;
  std::string format = "csv";
  std::string out_path;
  int threads = 0;
  double quad_T = 0;
  long quad_panels = 1;
  std::string convention;
  std::vector<std::string> zeros;
  std::string s_text;
  long terms = 0;
  long order = 12;
};

std::string sci(double x, int digits = 10) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << x;
  return os.str();
}

long digits_or(const RunConfig& cfg, long fallback) {
  long d = cfg.digits ? cfg.digits : fallback;
  if (d < 10) throw ValidationError("--digits must be >= 10");
  return d;
}

std::vector<long> indices(const RunConfig& cfg, const std::string& fallback = "") {
  if (!cfg.n_text.empty() && !cfg.range_text.empty()) throw ValidationError("give --n or --range, not both");
  std::string text = !cfg.n_text.empty() ? cfg.n_text : cfg.range_text;
  if (text.empty()) text = fallback;
  if (text.empty()) throw ValidationError(cfg.command + " needs --n or --range");
  return parse_indices(text);
}

RationalShift shift(const RunConfig& cfg) {
  RationalShift q{cfg.m, cfg.k};
  q.validate();
  return q;
}

SequenceKind sequence_kind(const std::string& name) {
  if (name == "b") return SequenceKind::b;
  if (name == "delta") return SequenceKind::delta;
  if (name == "A") return SequenceKind::A;
  if (name == "a") return SequenceKind::a;
  if (name == "d") return SequenceKind::d;
  return SequenceKind::c;
}

Output cmd_sequence(const RunConfig& cfg) {
  long digits = digits_or(cfg, 15);
  auto ns = indices(cfg);
  SequenceKind kind = sequence_kind(cfg.kind);
  RationalShift q = (kind == SequenceKind::A || kind == SequenceKind::a) ? shift(cfg) : RationalShift{1, 1};
  Method def = kind == SequenceKind::a ? Method::residue_adjusted : Method::binomial;
  Method method = cfg.method.empty() ? def : method_from_string(cfg.method);
  for (long n : ns)
    if (n < 0) throw ValidationError("indices must be >= 0");

  std::vector<SequencePoint> pts;
  if (method == def) {
    pts = sweep(kind, ns, digits, q);
  } else if (kind == SequenceKind::delta && method == Method::series) {
    for (long n : ns) pts.push_back(delta(n, PrecisionBudget::for_sequence(kind, n, digits), method));
  } else if (kind == SequenceKind::d && method == Method::moebius) {
    for (long n : ns) pts.push_back(d(n, PrecisionBudget::for_sequence(kind, n, digits), method));
  } else {
    throw ValidationError("method " + to_string(method) + " is not available for seq " + cfg.kind);
  }
  Output o;
  o.columns = {"n", "value", "method", "digits"};
  for (const auto& p : pts)
    o.rows.push_back({std::to_string(p.n), p.value.to_sci(static_cast<int>(digits)), to_string(p.method),
                      std::to_string(digits)});
  return o;
}

Output cmd_asym(const RunConfig& cfg) {
  long digits = digits_or(cfg, 15);
  auto ns = indices(cfg);
  Bits prec = digits_to_bits(digits + 10);
  PhaseConvention conv = cfg.convention.empty() ? kDefaultConvention : phase_convention_from_string(cfg.convention);
  Output o;
  o.columns = {"n", "value", "method", "digits"};
  for (long n : ns) {
    if (n < 1) throw ValidationError("asym: indices must be >= 1");
    BigReal v(prec);
    std::string label;
    if (cfg.kind == "b") {
      v = b_asym(n, prec).main;
      label = "asym-b";
    } else if (cfg.kind == "a") {
      v = a_asym(n, shift(cfg), prec, conv).main;
      label = "asym-a:" + to_string(conv);
    } else {
      v = an12_main(n, prec);
      label = "asym-an12";
    }
    o.rows.push_back({std::to_string(n), v.to_sci(static_cast<int>(digits)), label, std::to_string(digits)});
  }
  return o;
}

Output cmd_signs(const RunConfig& cfg) {
  long digits = digits_or(cfg, 15);
  auto ns = indices(cfg, "200");
  long n_max = *std::max_element(ns.begin(), ns.end());
  if (n_max < 10) throw ValidationError("signs: n_max must be >= 10");
  std::vector<long> all;
  for (long n = 1; n <= n_max; ++n) all.push_back(n);
  std::vector<BigReal> vals;
  for (auto& p : sweep(SequenceKind::b, all, digits)) vals.push_back(p.value);
  BetaFit fit = beta_fit(1, vals, 2 * std::sqrt(std::numbers::pi));
  Output o;
  o.fields = {{"n_max", std::to_string(n_max)},
              {"changes", std::to_string(fit.observed_changes.size())},
              {"alpha", fit.observed_changes.size() >= 3 ? sci(fit.alpha, 6) : "n/a"},
              {"alpha_over_pi_4", fit.observed_changes.size() >= 3 ? sci(fit.alpha / (std::numbers::pi / 4), 6) : "n/a"},
              {"phase_L", sci(fit.L, 6)}};
  o.columns = {"k", "n"};
  for (size_t i = 0; i < fit.observed_changes.size(); ++i)
    o.rows.push_back({std::to_string(i + 1), std::to_string(fit.observed_changes[i])});
  return o;
}

Output cmd_figure2(const RunConfig& cfg) {
  long digits = std::min(digits_or(cfg, 15), 16L);
  auto ns = indices(cfg, "5..500");
  long lo = *std::min_element(ns.begin(), ns.end()), hi = *std::max_element(ns.begin(), ns.end());
  if (static_cast<long>(ns.size()) != hi - lo + 1) throw ValidationError("figure2 needs a contiguous range");
  auto rows = figure2_rows(lo, hi);
  double max_exact = 0, max_res = 0;
  Output o;
  o.columns = {"n", "scaled_exact", "scaled_asym"};
  for (const auto& r : rows) {
    max_exact = std::max(max_exact, std::abs(r.scaled_exact));
    if (r.n >= 50) max_res = std::max(max_res, std::abs(r.scaled_exact - r.scaled_asym));
    o.rows.push_back({std::to_string(r.n), sci(r.scaled_exact, static_cast<int>(digits)),
                      sci(r.scaled_asym, static_cast<int>(digits))});
  }
  o.notes = {"b_n and its main term, both times exp(2 sqrt(pi n)) n^(-1/4)"};
  o.fields = {{"max_abs_scaled_exact", sci(max_exact, 6)}, {"max_abs_residual_n_ge_50", sci(max_res, 6)}};
  return o;
}

Output cmd_identity(const RunConfig& cfg) {
  long digits = digits_or(cfg, 40);
  auto ns = indices(cfg, "499");
  if (ns.size() != 1) throw ValidationError("identity takes a single n");
  IdentityReport r = identity_report(ns.front(), digits);
  Output o;
  o.fields = {{"n", std::to_string(r.n)},
              {"c_n - H_n + 1", r.value.to_fixed(static_cast<int>(digits))},
              {"gamma", r.gamma.to_fixed(static_cast<int>(digits))},
              {"difference", r.difference.to_sci(12)},
              {"difference - 1e-3", (r.difference - BigReal(mpq_class(1, 1000), r.difference.precision())).to_sci(6)},
              {"matching_digits", std::to_string(r.matching_digits)}};
  return o;
}

ZeroTerm parse_zero(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c) )
    throw ValidationError("--zero expects RE,IM,COEFF");
  ZeroTerm z;
  try {
    z = {std::stod(a), std::stod(b), std::stod(c)};
  } catch (const std::exception&) {
    throw ValidationError("--zero expects three numbers, got '" + text + "'");
  }
  if (!(z.re > 0 && z.re < 1)) throw ValidationError("zero real part must lie in (0, 1)");
  if (!(z.coefficient > 0)) throw ValidationError("zero coefficient must be positive");
  return z;
}

Output cmd_zero_model(const RunConfig& cfg) {
  auto ns = indices(cfg, "10,100,1000,1000000,1000000000000,1000000000000000000");
  std::vector<ZeroTerm> zeros;
  for (const auto& z : cfg.zeros) zeros.push_back(parse_zero(z));
  if (zeros.empty()) zeros = default_zero_model();
  auto name = [](const ZeroTerm& z) {
    std::ostringstream os;
    os << z.re << (z.im < 0 ? "-" : "+") << std::abs(z.im) << "i";
    return os.str();
  };
  Output o;
  o.notes = {"illustrative model, not a computation of the explicit zero sum for d_n",
             "term = coeff * n^Re(rho) * cos(Im(rho) log n)"};
  for (const auto& z : zeros) o.fields.push_back({"n where " + name(z) + " reaches 1", sci(zero_model_threshold(z), 4)});
  o.columns = {"n", "zero", "coefficient", "term", "envelope"};
  for (long n : ns) {
    if (n < 1) throw ValidationError("zero-model: n must be >= 1");
    for (const auto& z : zeros) {
      double x = static_cast<double>(n);
      o.rows.push_back({std::to_string(n), name(z), sci(z.coefficient, 4), sci(zero_model_term(z, x), 6),
                        sci(z.coefficient * std::pow(x, z.re), 6)});
    }
  }
  return o;
}

Output cmd_contour(const RunConfig& cfg) {
  long digits = digits_or(cfg, 10);
  auto ns = indices(cfg);
  bool saddle = cfg.kind == "saddle";
  RiceKind kind = saddle ? RiceKind::zeta_left : rice_kind_from_string(cfg.kind);
  ContourSpec spec = saddle ? ContourSpec::saddle() : ContourSpec::for_kind(kind);
  spec.T = cfg.quad_T;
  spec.panels = cfg.quad_panels;
  spec.target_digits = digits;
  Output o;
  o.columns = {"n", "value", "method", "digits", "quadrature_error", "truncation_bound", "evaluations"};
  if (saddle) o.columns.insert(o.columns.end(), {"central", "slanted", "vertical"});
  for (long n : ns) {
    ContourResult r = saddle ? saddle_contour_integral(n, spec) : rice_integral(kind, n, spec);
    std::vector<std::string> row{std::to_string(n),
                                 r.value.to_sci(static_cast<int>(digits)),
                                 "contour-" + (saddle ? std::string("saddle") : to_string(kind)),
                                 std::to_string(digits),
                                 r.quadrature_error.to_sci(3),
                                 r.truncation_bound.to_sci(3),
                                 std::to_string(r.evaluations)};
    if (saddle)
      for (const BigReal* part : {&r.central, &r.slanted, &r.vertical}) row.push_back(part->to_sci(static_cast<int>(digits)));
    o.rows.push_back(std::move(row));
  }
  return o;
}

Output cmd_newton(const RunConfig& cfg) {
  long digits = digits_or(cfg, 20);
  if (cfg.s_text.empty()) throw ValidationError("newton needs --s");
  Bits prec = digits_to_bits(digits + 5);
  BigComplex s = parse_complex(cfg.s_text, prec);
  double tol = std::pow(10.0, -static_cast<double>(digits));
  long N = cfg.terms > 0 ? cfg.terms : newton_terms_for(s, tol);
  NewtonValue v = newton_eval(s, N, prec, tol);
  Output o;
  o.fields = {{"s", cfg.s_text},
              {"terms", std::to_string(N)},
              {"value_re", v.value.re().to_sci(static_cast<int>(digits))},
              {"value_im", v.value.im().to_sci(static_cast<int>(digits))},
              {"tail_bound", v.tail_bound.to_sci(3)}};
  return o;
}

Output cmd_gf_check(const RunConfig& cfg, bool& pass) {
  long digits = digits_or(cfg, 30);
  if (cfg.order < 2) throw ValidationError("--order must be >= 2");
  Bits prec = digits_to_bits(digits + 5);
  auto ogf = ogf_coeffs(cfg.order, prec);
  auto egf = egf_coeffs(cfg.order, prec);
  Output o;
  o.columns = {"n", "ogf", "egf_times_factorial", "delta", "agreement_digits"};
  BigReal fact(1L, prec);
  double worst = 1000;
  for (long n = 2; n <= cfg.order; ++n) {
    fact *= n;
    BigReal want = delta(n, PrecisionBudget::for_sequence(SequenceKind::delta, n, digits + 5)).value;
    BigReal e = egf[n] * fact;
    double agree = std::min(want.log10_abs() - (ogf[n] - want).log10_abs(), want.log10_abs() - (e - want).log10_abs());
    worst = std::min(worst, agree);
    int dd = static_cast<int>(digits);
    o.rows.push_back({std::to_string(n), ogf[n].to_sci(dd), e.to_sci(dd), want.to_sci(dd), sci(std::min(agree, 999.0), 4)});
  }
  pass = worst >= static_cast<double>(digits);
  o.fields = {{"order", std::to_string(cfg.order)}, {"status", pass ? "pass" : "fail"}};
  return o;
}

Output cmd_verify(const RunConfig& cfg, bool& pass) {
  auto checks = verify_suite(cfg.kind);
  Output o;
  o.columns = {"check", "status", "observed", "expected"};
  pass = true;
  for (const auto& c : checks) {
    pass = pass && c.pass;
    o.rows.push_back({c.name, c.pass ? "pass" : "fail", c.observed, c.expected});
  }
  o.fields = {{"suite", cfg.kind}, {"status", pass ? "pass" : "fail"}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite differences of zeta values: sequences, asymptotics, quadrature and series cross-checks",
               "zetadiff"};
  RunConfig cfg;
  app.add_option("--n", cfg.n_text, "Index, list or range: 7, 20,50,100, 1..50");
  app.add_option("--range", cfg.range_text, "Index range A..B");
  app.add_option("--m", cfg.m, "Shift numerator m (A, a)");
  app.add_option("--k", cfg.k, "Shift denominator k (A, a)");
  app.add_option("--digits", cfg.digits, "Target significant digits (>= 10)");
  app.add_option("--method", cfg.method, "binomial, series (delta), moebius (d)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "Write to this file instead of stdout");
  app.add_option("--threads", cfg.threads, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--quad-T", cfg.quad_T, "Height where the vertical part of a contour stops")->check(CLI::NonNegativeNumber);
  app.add_option("--quad-panels", cfg.quad_panels, "Base-panel subdivision factor")->check(CLI::PositiveNumber);
  app.require_subcommand(1);

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* seq = sub("seq", "Compute b, delta, A, a, d or c over a set of indices");
  seq->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"b", "delta", "A", "a", "d", "c"}));
  auto* asym = sub("asym", "Main asymptotic terms: b, a or an12");
  asym->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"b", "a", "an12"}));
  asym->add_option("--convention", cfg.convention, "scaled-shift, scaled-no-shift or rederived");
  sub("signs", "Sign changes of b_n up to n_max (--n) and the quadratic fit of their positions");
  sub("figure2", "Scaled b_n against its scaled main term");
  sub("identity", "c_n - H_n + 1 against Euler's constant");
  auto* zm = sub("zero-model", "Illustrative per-zero model for the growth of d_n");
  zm->add_option("--zero", cfg.zeros, "RE,IM,COEFF (repeatable)");
  auto* contour = sub("contour", "Quadrature of the integral representations");
  contour->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"right", "left", "inv", "saddle"}));
  auto* newton = sub("newton", "Newton series of zeta(s) - 1/(s-1) at complex s");
  newton->add_option("--s", cfg.s_text, "Complex point, e.g. 0.5 or 2-3i")->required();
  newton->add_option("--terms", cfg.terms, "Number of terms (default: from the tail bound)");
  auto* gf = sub("gf-check", "Generating-function coefficients against delta_n");
  gf->add_option("--order", cfg.order, "Highest coefficient");
  auto* verify = sub("verify", "Run a cross-check suite: fast or full");
  verify->add_option("suite", cfg.kind)->required()->check(CLI::IsMember({"fast", "full"}));

  if (args.empty()) {
    err << app.help();
    return kUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  Output o;
  bool pass = true;
  try {
    const std::string& c = cfg.command;
    if (c == "seq") o = cmd_sequence(cfg);
    else if (c == "asym") o = cmd_asym(cfg);
    else if (c == "signs") o = cmd_signs(cfg);
    else if (c == "figure2") o = cmd_figure2(cfg);
    else if (c == "identity") o = cmd_identity(cfg);
    else if (c == "zero-model") o = cmd_zero_model(cfg);
    else if (c == "contour") o = cmd_contour(cfg);
    else if (c == "newton") o = cmd_newton(cfg);
    else if (c == "gf-check") o = cmd_gf_check(cfg, pass);
    else o = cmd_verify(cfg, pass);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  o.command = cfg.command;

  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "error: cannot write " << cfg.out_path << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = cfg.out_path.empty() ? out : file;
  if (cfg.format == "json")
    o.write_json(sink);
  else
    o.write_csv(sink);
  return pass ? kOk : kVerifyFailed;
}

}  // namespace zetadiff::cli
