#pragma once

// Command-line front end. `run` parses arguments, executes one command and
// writes CSV or JSON; the data builders below are shared with the acceptance
// harness.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zetadiff/bigreal.hpp"

namespace zetadiff::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Tabular or key/value output, rendered as CSV or JSON. Every value is a decimal string.
struct Output {
  std::string command;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

/// "7", "1..50", "20,50,100" or mixtures like "1..5,10". Throws ValidationError.
std::vector<long> parse_indices(const std::string& text);

/// "0.5", "-1", "0.5+14.1i", "2-3i", "3i". Throws ValidationError.
BigComplex parse_complex(const std::string& text, Bits prec);

struct Figure2Row {
  long n = 0;
  double scaled_exact = 0;
  double scaled_asym = 0;
};
/// b_n and its main term, both multiplied by e^{2 sqrt(pi n)} n^{-1/4}.
std::vector<Figure2Row> figure2_rows(long lo, long hi);

struct IdentityReport {
  long n = 0;
  BigReal value;       // c_n - H_n + 1
  BigReal gamma;
  BigReal difference;  // value - gamma
  long matching_digits = 0;  // leading decimals shared by value - 1e-3 and gamma
};
IdentityReport identity_report(long n, long digits);

struct ZeroTerm {
  double re = 0.5;
  double im = 0;
  double coefficient = 0;
};
/// The two leading zeros with the coefficient sizes quoted for the inverse-zeta study.
std::vector<ZeroTerm> default_zero_model();
/// coefficient n^{Re rho} cos(Im rho log n)
double zero_model_term(const ZeroTerm& z, double n);
/// n at which coefficient n^{Re rho} reaches 1.
double zero_model_threshold(const ZeroTerm& z);

struct Check {
  std::string name;
  bool pass = false;
  std::string observed;
  std::string expected;
};
/// "fast" or "full". Throws ValidationError on another name.
std::vector<Check> verify_suite(const std::string& suite);

/// Parses and runs one command. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetadiff::cli
