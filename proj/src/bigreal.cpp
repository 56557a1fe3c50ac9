#include "zetadiff/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace zetadiff {

namespace {

constexpr double kLog2Of10 = 3.321928094887362347870319429489390175864831393;
constexpr mpfr_prec_t kBitMargin = 8;

Bits wider(const BigReal& a, const BigReal& b) { return max(a.precision(), b.precision()); }

std::string format_digits(mpfr_srcptr x, int significant, mpfr_rnd_t rnd) {
  if (significant < 1) significant = 1;
  if (!mpfr_number_p(x)) {
    if (mpfr_nan_p(x)) return "nan";
    return mpfr_sgn(x) > 0 ? "+inf" : "-inf";
  }
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(significant), x, rnd);
  std::string digits(raw);
  mpfr_free_str(raw);
  bool negative = false;
  if (!digits.empty() && digits.front() == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  long exponent = mpfr_zero_p(x) ? 0 : static_cast<long>(e) - 1;
  std::string out;
  out.reserve(digits.size() + 8);
  out.push_back(negative ? '-' : '+');
  out.push_back(digits.front());
  if (digits.size() > 1) {
    out.push_back('.');
    out.append(digits, 1, std::string::npos);
  }
  out.push_back('e');
  out.push_back(exponent < 0 ? '-' : '+');
  std::string ex = std::to_string(std::labs(exponent));
  if (ex.size() < 2) ex.insert(0, 2 - ex.size(), '0');
  out += ex;
  return out;
}

}  // namespace

Bits digits_to_bits(long digits) {
  if (digits < 1) digits = 1;
  return Bits{static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * kLog2Of10)) + kBitMargin};
}

long bits_to_digits(Bits bits) {
  return static_cast<long>(std::floor(static_cast<double>(bits.count - kBitMargin) / kLog2Of10));
}

Bits max(Bits a, Bits b) { return a.count >= b.count ? a : b; }
Bits operator+(Bits a, long extra) { return Bits{a.count + extra}; }

// ---------------------------------------------------------------- BigReal

BigReal::BigReal(Bits prec) {
  mpfr_init2(value_, prec.count);
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, Bits prec) {
  mpfr_init2(value_, prec.count);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(unsigned long value, Bits prec) {
  mpfr_init2(value_, prec.count);
  mpfr_set_ui(value_, value, MPFR_RNDN);
}

BigReal::BigReal(double value, Bits prec) {
  mpfr_init2(value_, prec.count);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& value, Bits prec) {
  mpfr_init2(value_, prec.count);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const mpq_class& value, Bits prec) {
  mpfr_init2(value_, prec.count);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, Bits prec) {
  BigReal out(prec);
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  char* end = nullptr;
  if (s.empty()) throw std::invalid_argument("empty number");
  mpfr_strtofr(out.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str()) throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
  if (*end != '\0') throw std::invalid_argument("trailing characters in number: '" + std::string(text) + "'");
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

double BigReal::log10_abs() const {
  if (is_zero()) return -INFINITY;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, value_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398119521;
}

std::string BigReal::to_sci(int significant) const { return format_digits(value_, significant, MPFR_RNDN); }

std::string BigReal::to_sci_truncated(int significant) const { return format_digits(value_, significant, MPFR_RNDZ); }

std::string BigReal::to_fixed(int decimals) const {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*RNf", decimals, value_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

#define ZD_COMPOUND(op, fn)                                                   \
  BigReal& BigReal::operator op(const BigReal& rhs) {                         \
    if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_))                    \
      mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);          \
    fn(value_, value_, rhs.value_, MPFR_RNDN);                                \
    return *this;                                                             \
  }
ZD_COMPOUND(+=, mpfr_add)
ZD_COMPOUND(-=, mpfr_sub)
ZD_COMPOUND(*=, mpfr_mul)
ZD_COMPOUND(/=, mpfr_div)
#undef ZD_COMPOUND

BigReal& BigReal::operator+=(long rhs) { mpfr_add_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigReal& BigReal::operator-=(long rhs) { mpfr_sub_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigReal& BigReal::operator*=(long rhs) { mpfr_mul_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigReal& BigReal::operator/=(long rhs) { mpfr_div_si(value_, value_, rhs, MPFR_RNDN); return *this; }
BigReal& BigReal::operator*=(const mpz_class& rhs) {
  mpfr_mul_z(value_, value_, rhs.get_mpz_t(), MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

#define ZD_BINARY(op, fn)                                  \
  BigReal operator op(const BigReal& a, const BigReal& b) { \
    BigReal out(wider(a, b));                               \
    fn(out.value_, a.value_, b.value_, MPFR_RNDN);          \
    return out;                                             \
  }
ZD_BINARY(+, mpfr_add)
ZD_BINARY(-, mpfr_sub)
ZD_BINARY(*, mpfr_mul)
ZD_BINARY(/, mpfr_div)
#undef ZD_BINARY

BigReal operator+(const BigReal& a, long b) { BigReal o(a.precision()); mpfr_add_si(o.value_, a.value_, b, MPFR_RNDN); return o; }
BigReal operator-(const BigReal& a, long b) { BigReal o(a.precision()); mpfr_sub_si(o.value_, a.value_, b, MPFR_RNDN); return o; }
BigReal operator*(const BigReal& a, long b) { BigReal o(a.precision()); mpfr_mul_si(o.value_, a.value_, b, MPFR_RNDN); return o; }
BigReal operator/(const BigReal& a, long b) { BigReal o(a.precision()); mpfr_div_si(o.value_, a.value_, b, MPFR_RNDN); return o; }
BigReal operator-(long a, const BigReal& b) { BigReal o(b.precision()); mpfr_si_sub(o.value_, a, b.value_, MPFR_RNDN); return o; }
BigReal operator/(long a, const BigReal& b) { BigReal o(b.precision()); mpfr_si_div(o.value_, a, b.value_, MPFR_RNDN); return o; }

BigReal round_to(const BigReal& x, Bits prec) {
  BigReal out(prec);
  mpfr_set(out.get(), x.get(), MPFR_RNDN);
  return out;
}

#define ZD_UNARY(name, fn)                   \
  BigReal name(const BigReal& x) {           \
    BigReal out(x.precision());              \
    fn(out.get(), x.get(), MPFR_RNDN);       \
    return out;                              \
  }
ZD_UNARY(abs, mpfr_abs)
ZD_UNARY(sqrt, mpfr_sqrt)
ZD_UNARY(exp, mpfr_exp)
ZD_UNARY(expm1, mpfr_expm1)
ZD_UNARY(log, mpfr_log)
ZD_UNARY(log1p, mpfr_log1p)
ZD_UNARY(sin, mpfr_sin)
ZD_UNARY(cos, mpfr_cos)
ZD_UNARY(cot, mpfr_cot)
#undef ZD_UNARY

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal out(wider(y, x));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, long e) {
  BigReal out(x.precision());
  mpfr_pow_si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, const BigReal& e) {
  BigReal out(wider(x, e));
  mpfr_pow(out.get(), x.get(), e.get(), MPFR_RNDN);
  return out;
}

BigReal hypot(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal ldexp(const BigReal& x, long e) {
  BigReal out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

BigReal round_int(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

BigReal const_pi(Bits prec) {
  BigReal out(prec);
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

BigReal const_log2(Bits prec) {
  BigReal out(prec);
  mpfr_const_log2(out.get(), MPFR_RNDN);
  return out;
}

BigReal const_euler(Bits prec) {
  BigReal out(prec);
  mpfr_const_euler(out.get(), MPFR_RNDN);
  return out;
}

// ------------------------------------------------------------- BigComplex

BigComplex::BigComplex(Bits prec) : re_(prec), im_(prec) {}

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {
  Bits p = max(re_.precision(), im_.precision());
  if (re_.precision() != p) re_ = round_to(re_, p);
  if (im_.precision() != p) im_ = round_to(im_, p);
}

BigComplex::BigComplex(BigReal re) : re_(std::move(re)), im_(re_.precision()) {}

BigComplex::BigComplex(double re, double im, Bits prec) : re_(re, prec), im_(im, prec) {}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigReal re = re_ * rhs.re_ - im_ * rhs.im_;
  BigReal im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(rhs.re_) >= abs(rhs.im_)) {
    BigReal r = rhs.im_ / rhs.re_;
    BigReal den = rhs.re_ + r * rhs.im_;
    BigReal re = (re_ + im_ * r) / den;
    BigReal im = (im_ - re_ * r) / den;
    re_ = std::move(re);
    im_ = std::move(im);
  } else {
    BigReal r = rhs.re_ / rhs.im_;
    BigReal den = rhs.im_ + r * rhs.re_;
    BigReal re = (re_ * r + im_) / den;
    BigReal im = (im_ * r - re_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
  }
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

BigComplex& BigComplex::operator*=(long rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator*=(const mpz_class& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex BigComplex::operator-() const { return BigComplex(-re_, -im_); }

BigComplex operator+(BigComplex a, const BigReal& b) { a.re_ += b; return a; }
BigComplex operator-(BigComplex a, const BigReal& b) { a.re_ -= b; return a; }
BigComplex operator+(BigComplex a, long b) { a.re_ += b; return a; }
BigComplex operator-(BigComplex a, long b) { a.re_ -= b; return a; }
BigComplex operator-(long a, const BigComplex& b) { return BigComplex(a - b.re_, -b.im_); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re(), -z.im()); }
BigReal abs(const BigComplex& z) { return hypot(z.re(), z.im()); }
BigReal norm(const BigComplex& z) { return z.re() * z.re() + z.im() * z.im(); }
BigReal arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex polar(const BigReal& modulus, const BigReal& theta) {
  BigReal s(theta.precision()), c(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return BigComplex(modulus * c, modulus * s);
}

BigComplex exp(const BigComplex& z) { return polar(exp(z.re()), z.im()); }

BigComplex log(const BigComplex& z) { return BigComplex(log(abs(z)), arg(z)); }

BigComplex sqrt(const BigComplex& z) {
  if (z.re().is_zero() && z.im().is_zero()) return z;
  BigReal r = abs(z);
  BigReal t = sqrt((r + abs(z.re())) / 2L);
  if (z.re().sign() >= 0) return BigComplex(t, z.im() / (t * 2L));
  BigReal im = z.im().sign() >= 0 ? t : -t;
  return BigComplex(abs(z.im()) / (t * 2L), im);
}

BigComplex sin(const BigComplex& z) {
  // sin(x+iy) = sin x cosh y + i cos x sinh y
  Bits p = z.precision();
  BigReal s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.re().get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), MPFR_RNDN);
  return BigComplex(s * ch, c * sh);
}

BigComplex cos(const BigComplex& z) {
  Bits p = z.precision();
  BigReal s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.re().get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), MPFR_RNDN);
  return BigComplex(c * ch, -(s * sh));
}

BigComplex pow(const BigComplex& z, const BigComplex& w) { return exp(w * log(z)); }

BigComplex round_to(const BigComplex& z, Bits prec) { return BigComplex(round_to(z.re(), prec), round_to(z.im(), prec)); }

BigComplex pow_neg(unsigned long base, const BigComplex& s) {
  Bits p = s.precision();
  BigReal lb(p);
  mpfr_log_ui(lb.get(), base, MPFR_RNDN);
  BigReal modulus = exp(-(s.re() * lb));
  return polar(modulus, -(s.im() * lb));
}

}  // namespace zetadiff
