#ifndef HZETA_REAL_HPP
#define HZETA_REAL_HPP

#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace hzeta {

// Owning RAII handle around an mpfr_t. Value semantics; the precision of
// a copy equals the precision of its source.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = 53) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
  }
  Real(mpfr_prec_t precision, double v) : Real(precision) { mpfr_set_d(value_, v, MPFR_RNDN); }
  Real(mpfr_prec_t precision, long v) : Real(precision) { mpfr_set_si(value_, v, MPFR_RNDN); }

  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    // Steal the limbs; leave `other` as a valid minimal-precision zero.
    value_[0] = other.value_[0];
    mpfr_init2(other.value_, MPFR_PREC_MIN);
    mpfr_set_zero(other.value_, 1);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    if (this != &other) std::swap(value_[0], other.value_[0]);
    return *this;
  }
  ~Real() { mpfr_clear(value_); }

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  // Parses a decimal string, rounding in direction `rnd`. Throws
  // std::invalid_argument on malformed input.
  static Real parse(std::string_view text, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);

  // Shortest decimal that reads back to the same binary value at this
  // precision (round-to-nearest both ways).
  std::string to_roundtrip_string() const;

  // Scientific notation with `digits` significant digits, rounded in `rnd`.
  std::string to_scientific(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator<=(const Real& a, const Real& b) {
    return mpfr_lessequal_p(a.value_, b.value_);
  }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_greaterequal_p(a.value_, b.value_);
  }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

}  // namespace hzeta

#endif  // HZETA_REAL_HPP
