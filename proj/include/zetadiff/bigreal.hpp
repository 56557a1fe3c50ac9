#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// A BigReal owns one mpfr_t and carries its own binary precision. Binary
// operations produce a result at the larger of the two operand precisions,
// so precision only ever widens implicitly; narrowing is explicit via
// round_to().

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace zetadiff {

/// Binary precision of a BigReal, in bits.
struct Bits {
  mpfr_prec_t count = 64;
  friend constexpr auto operator<=>(Bits, Bits) = default;
};

/// Bits needed to carry `digits` decimal digits, plus a small fixed margin.
Bits digits_to_bits(long digits);
/// Decimal digits represented by a binary precision (inverse of digits_to_bits).
long bits_to_digits(Bits bits);
Bits max(Bits a, Bits b);
Bits operator+(Bits a, long extra);

class BigReal {
 public:
  explicit BigReal(Bits prec = Bits{});
  BigReal(long value, Bits prec);
  BigReal(int value, Bits prec) : BigReal(static_cast<long>(value), prec) {}
  BigReal(unsigned long value, Bits prec);
  BigReal(double value, Bits prec);
  BigReal(const mpz_class& value, Bits prec);
  BigReal(const mpq_class& value, Bits prec);

  /// Parses a decimal string ("1.25", "-3e-7", "+1.000e+02"); throws std::invalid_argument.
  static BigReal parse(std::string_view text, Bits prec);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  Bits precision() const { return Bits{mpfr_get_prec(value_)}; }
  long digits() const { return bits_to_digits(precision()); }

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
  /// log10 |x| as a double (−inf for zero).
  double log10_abs() const;

  /// Scientific notation "±d.ddd…e±dd" with `significant` digits, round-half-even.
  std::string to_sci(int significant) const;
  /// Truncates (rounds toward zero) to `significant` digits, same layout as to_sci.
  std::string to_sci_truncated(int significant) const;
  /// Fixed notation with `decimals` digits after the point, round-half-even.
  std::string to_fixed(int decimals) const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);
  BigReal& operator*=(const mpz_class& rhs);
  template <std::floating_point F>
  BigReal& operator+=(F) = delete;
  template <std::floating_point F>
  BigReal& operator-=(F) = delete;
  template <std::floating_point F>
  BigReal& operator*=(F) = delete;
  template <std::floating_point F>
  BigReal& operator/=(F) = delete;

  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(long a, const BigReal& b);
  // A double would otherwise convert silently to long.
  template <std::floating_point F>
  friend BigReal operator+(const BigReal&, F) = delete;
  template <std::floating_point F>
  friend BigReal operator-(const BigReal&, F) = delete;
  template <std::floating_point F>
  friend BigReal operator*(const BigReal&, F) = delete;
  template <std::floating_point F>
  friend BigReal operator/(const BigReal&, F) = delete;
  template <std::floating_point F>
  friend BigReal operator*(F, const BigReal&) = delete;
  template <std::floating_point F>
  friend BigReal operator/(F, const BigReal&) = delete;

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) < 0; }
  friend bool operator>(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) > 0; }

 private:
  mpfr_t value_;
};

BigReal round_to(const BigReal& x, Bits prec);
BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal cot(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow(const BigReal& x, long e);
BigReal pow(const BigReal& x, const BigReal& e);
BigReal hypot(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
/// x * 2^e, exact.
BigReal ldexp(const BigReal& x, long e);
/// Nearest integer (ties away from zero).
BigReal round_int(const BigReal& x);

BigReal const_pi(Bits prec);
BigReal const_log2(Bits prec);
BigReal const_euler(Bits prec);

/// Complex number with real and imaginary parts at a shared precision.
class BigComplex {
 public:
  explicit BigComplex(Bits prec = Bits{});
  BigComplex(BigReal re, BigReal im);
  explicit BigComplex(BigReal re);
  BigComplex(double re, double im, Bits prec);

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }
  Bits precision() const { return re_.precision(); }

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);
  BigComplex& operator*=(const BigReal& rhs);
  BigComplex& operator/=(const BigReal& rhs);
  BigComplex& operator*=(long rhs);
  BigComplex& operator*=(const mpz_class& rhs);

  BigComplex operator-() const;

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
  friend BigComplex operator+(BigComplex a, const BigReal& b);
  friend BigComplex operator-(BigComplex a, const BigReal& b);
  friend BigComplex operator+(BigComplex a, long b);
  friend BigComplex operator-(BigComplex a, long b);
  friend BigComplex operator-(long a, const BigComplex& b);

 private:
  BigReal re_;
  BigReal im_;
};

BigComplex conj(const BigComplex& z);
BigReal abs(const BigComplex& z);
BigReal norm(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal branch.
BigComplex log(const BigComplex& z);
/// Principal branch.
BigComplex sqrt(const BigComplex& z);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
/// z^w = exp(w log z), principal branch.
BigComplex pow(const BigComplex& z, const BigComplex& w);
/// Unit complex number e^{i theta}.
BigComplex polar(const BigReal& modulus, const BigReal& theta);
BigComplex round_to(const BigComplex& z, Bits prec);
/// base^{-s} for a positive integer base, via exp(-s log base).
BigComplex pow_neg(unsigned long base, const BigComplex& s);

}  // namespace zetadiff
