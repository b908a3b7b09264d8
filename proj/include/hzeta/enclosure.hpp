#ifndef HZETA_ENCLOSURE_HPP
#define HZETA_ENCLOSURE_HPP

#include <span>
#include <string>
#include <string_view>

#include "hzeta/real.hpp"

namespace hzeta {

inline constexpr mpfr_prec_t kDefaultPrecision = 192;
inline constexpr mpfr_prec_t kMinPrecision = 16;
inline constexpr mpfr_prec_t kRadiusPrecision = 53;

// Midpoint-radius ball [m - r, m + r] that is guaranteed to contain an
// exact real. Every operation rounds outward: the radius absorbs both the
// propagated input radii and the rounding error of the midpoint.
// Values are immutable; all operations return new enclosures.
class Enclosure {
 public:
  // 0 +/- 0 at the default precision.
  Enclosure();
  Enclosure(Real midpoint, Real radius);

  static Enclosure exact(long value, mpfr_prec_t precision = kDefaultPrecision);
  static Enclosure exact(double value, mpfr_prec_t precision = kDefaultPrecision);
  static Enclosure exact(const Real& value, mpfr_prec_t precision);
  // value / denominator, rounded outward.
  static Enclosure rational(long numerator, long denominator,
                            mpfr_prec_t precision = kDefaultPrecision);
  // Decimal text. The conversion error is folded into the radius.
  static Enclosure from_decimal(std::string_view text, mpfr_prec_t precision = kDefaultPrecision);
  // Smallest ball at `precision` containing [lo, hi].
  static Enclosure from_bounds(const Real& lo, const Real& hi, mpfr_prec_t precision);

  const Real& midpoint() const noexcept { return mid_; }
  const Real& radius() const noexcept { return rad_; }
  mpfr_prec_t precision() const noexcept { return mid_.precision(); }

  // Rigorous endpoints at the midpoint's precision.
  Real lower() const;
  Real upper() const;
  double lower_double() const;
  double upper_double() const;
  double to_double() const { return mid_.to_double(); }

  bool contains(const Real& x) const;
  bool contains(const Enclosure& other) const;
  bool contains_zero() const;
  bool is_positive() const;  // lower > 0
  bool is_negative() const;  // upper < 0
  // -1, 0 or +1; 0 means the sign is not determined.
  int definite_sign() const;
  bool overlaps(const Enclosure& other) const;
  bool is_exact() const { return rad_.is_zero(); }

  Enclosure with_precision(mpfr_prec_t precision) const;
  Enclosure inflated(const Real& extra_radius) const;
  Enclosure inflated(double extra_radius) const;

  // "m +/- r": m rounded half-even to `digits` significant digits, r an
  // upper bound that also covers the decimal rounding of m.
  std::string to_string(int digits = 20) const;
  // Midpoint with `fraction_digits` digits after the point, rounded
  // half-even (display only; no radius).
  std::string midpoint_fixed(int fraction_digits) const;

 private:
  Real mid_;
  Real rad_;
};

Enclosure operator-(const Enclosure& a);
Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Enclosure& b);
Enclosure operator+(const Enclosure& a, long b);
Enclosure operator-(const Enclosure& a, long b);
Enclosure operator*(const Enclosure& a, long b);
Enclosure operator/(const Enclosure& a, long b);

Enclosure sqr(const Enclosure& a);
Enclosure sqrt(const Enclosure& a);
Enclosure log(const Enclosure& a);
Enclosure exp(const Enclosure& a);
Enclosure sin(const Enclosure& a);
Enclosure cos(const Enclosure& a);
Enclosure atan(const Enclosure& a);
Enclosure abs(const Enclosure& a);
// Ball containing both inputs.
Enclosure hull(const Enclosure& a, const Enclosure& b);

enum class EncOp { add, sub, mul, div, log, sqr, exp };
enum class EncConst { pi, two_pi, e, two_pi_e, log_two_pi };

// Dispatches an op code over one or two arguments. Throws
// std::invalid_argument on an arity mismatch and DomainError on domain
// violations.
Enclosure enc_apply(EncOp op, std::span<const Enclosure> args);

Enclosure enc_const(EncConst name, mpfr_prec_t precision = kDefaultPrecision);
// Name lookup ("pi", "two_pi", "e", "two_pi_e", "log_two_pi").
Enclosure enc_const(std::string_view name, mpfr_prec_t precision = kDefaultPrecision);

}  // namespace hzeta

#endif  // HZETA_ENCLOSURE_HPP
