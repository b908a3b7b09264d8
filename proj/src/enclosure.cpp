#include "hzeta/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "hzeta/errors.hpp"

namespace hzeta {
namespace {

struct MpfrFree {
  void operator()(char* p) const { mpfr_free_str(p); }
};

// Adds one ulp of `mid` to `rad` when the operation producing `mid` was
// inexact. Round-to-nearest errs by at most half an ulp.
void account_rounding(Real& rad, const Real& mid, int ternary) {
  if (ternary == 0) return;
  Real ulp(kRadiusPrecision);
  if (mid.is_zero()) {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid.get()) - mid.precision(), MPFR_RNDU);
  }
  mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
}

Real abs_up(const Real& x) {
  Real out(kRadiusPrecision);
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

Real abs_down(const Real& x) {
  Real out(kRadiusPrecision);
  mpfr_abs(out.get(), x.get(), MPFR_RNDD);
  return out;
}

Real zero_radius() { return Real(kRadiusPrecision); }

mpfr_prec_t joint_precision(const Enclosure& a, const Enclosure& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Real Real::parse(std::string_view text, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  Real out(precision);
  std::string buf(text);
  char* end = nullptr;
  mpfr_strtofr(out.get(), buf.c_str(), &end, 10, rnd);
  if (buf.empty() || end == buf.c_str() || *end != '\0') {
    throw std::invalid_argument("malformed decimal '" + buf + "'");
  }
  return out;
}

std::string Real::to_roundtrip_string() const {
  if (mpfr_nan_p(value_)) return "nan";
  if (is_zero()) return "0";
  // ceil(p * log10(2)) + 1 significant digits always read back exactly.
  const auto digits =
      static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) + 1;
  return to_scientific(digits, MPFR_RNDN);
}

std::string Real::to_scientific(int digits, mpfr_rnd_t rnd) const {
  char* raw = nullptr;
  const char rc = rnd == MPFR_RNDU ? 'U' : rnd == MPFR_RNDD ? 'D' : rnd == MPFR_RNDZ ? 'Z' : 'N';
  const std::string fmt = std::string("%.*R") + rc + "e";
  if (mpfr_asprintf(&raw, fmt.c_str(), std::max(digits - 1, 0), value_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::unique_ptr<char, MpfrFree> guard(raw);
  return std::string(raw);
}

Enclosure::Enclosure() : mid_(kDefaultPrecision), rad_(kRadiusPrecision) {}

Enclosure::Enclosure(Real midpoint, Real radius) : mid_(std::move(midpoint)), rad_(kRadiusPrecision) {
  if (radius.sign() < 0) throw std::invalid_argument("negative enclosure radius");
  mpfr_set(rad_.get(), radius.get(), MPFR_RNDU);
}

Enclosure Enclosure::exact(long value, mpfr_prec_t precision) {
  Real m(precision);
  Real r = zero_radius();
  account_rounding(r, m, mpfr_set_si(m.get(), value, MPFR_RNDN));
  return Enclosure(std::move(m), std::move(r));
}

Enclosure Enclosure::exact(double value, mpfr_prec_t precision) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  Real m(precision);
  Real r = zero_radius();
  account_rounding(r, m, mpfr_set_d(m.get(), value, MPFR_RNDN));
  return Enclosure(std::move(m), std::move(r));
}

Enclosure Enclosure::exact(const Real& value, mpfr_prec_t precision) {
  Real m(precision);
  Real r = zero_radius();
  account_rounding(r, m, mpfr_set(m.get(), value.get(), MPFR_RNDN));
  return Enclosure(std::move(m), std::move(r));
}

Enclosure Enclosure::rational(long numerator, long denominator, mpfr_prec_t precision) {
  return exact(numerator, precision) / exact(denominator, precision);
}

Enclosure Enclosure::from_decimal(std::string_view text, mpfr_prec_t precision) {
  Real m(precision);
  std::string buf(text);
  char* end = nullptr;
  const int t = mpfr_strtofr(m.get(), buf.c_str(), &end, 10, MPFR_RNDN);
  if (buf.empty() || end == buf.c_str() || *end != '\0') {
    throw std::invalid_argument("malformed decimal '" + buf + "'");
  }
  Real r = zero_radius();
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure Enclosure::from_bounds(const Real& lo, const Real& hi, mpfr_prec_t precision) {
  if (hi < lo) throw std::invalid_argument("from_bounds: hi < lo");
  Real m(precision);
  {
    Real sum(std::max({lo.precision(), hi.precision(), precision}) + 2);
    mpfr_add(sum.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(sum.get(), sum.get(), 1, MPFR_RNDN);
    mpfr_set(m.get(), sum.get(), MPFR_RNDN);
  }
  Real up(kRadiusPrecision);
  Real down(kRadiusPrecision);
  mpfr_sub(up.get(), hi.get(), m.get(), MPFR_RNDU);
  mpfr_sub(down.get(), m.get(), lo.get(), MPFR_RNDU);
  Real r(kRadiusPrecision);
  mpfr_max(r.get(), up.get(), down.get(), MPFR_RNDU);
  if (r.sign() < 0) mpfr_set_zero(r.get(), 1);
  return Enclosure(std::move(m), std::move(r));
}

Real Enclosure::lower() const {
  Real out(precision());
  mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return out;
}

Real Enclosure::upper() const {
  Real out(precision());
  mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

double Enclosure::lower_double() const { return lower().to_double(MPFR_RNDD); }
double Enclosure::upper_double() const { return upper().to_double(MPFR_RNDU); }

bool Enclosure::contains(const Real& x) const {
  Real d(std::max(x.precision(), precision()) + 64);
  mpfr_sub(d.get(), x.get(), mid_.get(), MPFR_RNDN);
  Real ad = abs_up(d);
  // The subtraction above may itself be inexact; rounding |d| up at
  // radius precision and inflating by one step keeps the test conservative.
  mpfr_nextabove(ad.get());
  return mpfr_lessequal_p(ad.get(), rad_.get()) || d.is_zero();
}

bool Enclosure::contains(const Enclosure& other) const {
  return lower() <= other.lower() && other.upper() <= upper();
}

bool Enclosure::contains_zero() const { return definite_sign() == 0; }

bool Enclosure::is_positive() const { return lower().sign() > 0; }

bool Enclosure::is_negative() const { return upper().sign() < 0; }

int Enclosure::definite_sign() const {
  if (is_positive()) return 1;
  if (is_negative()) return -1;
  return 0;
}

bool Enclosure::overlaps(const Enclosure& other) const {
  return !(upper() < other.lower() || other.upper() < lower());
}

Enclosure Enclosure::with_precision(mpfr_prec_t p) const {
  Real m(p);
  Real r = rad_;
  if (mpfr_set(m.get(), mid_.get(), MPFR_RNDN) != 0) {
    // exact conversion error, at most half an ulp
    Real d(std::max(p, mid_.precision()) + 1);
    mpfr_sub(d.get(), mid_.get(), m.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    Real e(kRadiusPrecision);
    mpfr_set(e.get(), d.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), e.get(), MPFR_RNDU);
  }
  return Enclosure(std::move(m), std::move(r));
}

Enclosure Enclosure::inflated(const Real& extra) const {
  Real r(kRadiusPrecision);
  Real e = abs_up(extra);
  mpfr_add(r.get(), rad_.get(), e.get(), MPFR_RNDU);
  return Enclosure(mid_, std::move(r));
}

Enclosure Enclosure::inflated(double extra) const { return inflated(Real(kRadiusPrecision, extra)); }

std::string Enclosure::to_string(int digits) const {
  digits = std::max(digits, 1);
  const std::string m = mid_.to_scientific(digits, MPFR_RNDN);
  // |m - decimal(m)| <= half a unit in the last printed place <= |m| 10^(1-digits).
  Real err = abs_up(mid_);
  Real scale(kRadiusPrecision);
  mpfr_set_ui(scale.get(), 10, MPFR_RNDU);
  mpfr_pow_si(scale.get(), scale.get(), 1 - digits, MPFR_RNDU);
  mpfr_mul(err.get(), err.get(), scale.get(), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), rad_.get(), MPFR_RNDU);
  return m + " ± " + err.to_scientific(3, MPFR_RNDU);
}

std::string Enclosure::midpoint_fixed(int fraction_digits) const {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*RNf", std::max(fraction_digits, 0), mid_.get()) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::unique_ptr<char, MpfrFree> guard(raw);
  return std::string(raw);
}

Enclosure operator-(const Enclosure& a) {
  Real m(a.precision());
  mpfr_neg(m.get(), a.midpoint().get(), MPFR_RNDN);
  return Enclosure(std::move(m), a.radius());
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  Real m(joint_precision(a, b));
  Real r(kRadiusPrecision);
  const int t = mpfr_add(m.get(), a.midpoint().get(), b.midpoint().get(), MPFR_RNDN);
  mpfr_add(r.get(), a.radius().get(), b.radius().get(), MPFR_RNDU);
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  Real m(joint_precision(a, b));
  Real r(kRadiusPrecision);
  const int t = mpfr_sub(m.get(), a.midpoint().get(), b.midpoint().get(), MPFR_RNDN);
  mpfr_add(r.get(), a.radius().get(), b.radius().get(), MPFR_RNDU);
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Real m(joint_precision(a, b));
  const int t = mpfr_mul(m.get(), a.midpoint().get(), b.midpoint().get(), MPFR_RNDN);
  // |ma| rb + |mb| ra + ra rb
  Real r(kRadiusPrecision);
  Real term(kRadiusPrecision);
  Real ama = abs_up(a.midpoint());
  Real amb = abs_up(b.midpoint());
  mpfr_mul(r.get(), ama.get(), b.radius().get(), MPFR_RNDU);
  mpfr_mul(term.get(), amb.get(), a.radius().get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), a.radius().get(), b.radius().get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), term.get(), MPFR_RNDU);
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  Real amb_lo = abs_down(b.midpoint());
  Real gap(kRadiusPrecision);
  mpfr_sub(gap.get(), amb_lo.get(), b.radius().get(), MPFR_RNDD);
  if (gap.sign() <= 0 || b.contains_zero()) throw DomainError("division by an enclosure containing 0");
  Real m(joint_precision(a, b));
  const int t = mpfr_div(m.get(), a.midpoint().get(), b.midpoint().get(), MPFR_RNDN);
  // (|ma| rb + |mb| ra) / (|mb| (|mb| - rb))
  Real num(kRadiusPrecision);
  Real term(kRadiusPrecision);
  Real ama = abs_up(a.midpoint());
  Real amb = abs_up(b.midpoint());
  mpfr_mul(num.get(), ama.get(), b.radius().get(), MPFR_RNDU);
  mpfr_mul(term.get(), amb.get(), a.radius().get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), term.get(), MPFR_RNDU);
  Real den(kRadiusPrecision);
  mpfr_mul(den.get(), amb_lo.get(), gap.get(), MPFR_RNDD);
  Real r(kRadiusPrecision);
  mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDU);
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure operator+(const Enclosure& a, long b) { return a + Enclosure::exact(b, a.precision()); }
Enclosure operator-(const Enclosure& a, long b) { return a - Enclosure::exact(b, a.precision()); }
Enclosure operator*(const Enclosure& a, long b) { return a * Enclosure::exact(b, a.precision()); }
Enclosure operator/(const Enclosure& a, long b) { return a / Enclosure::exact(b, a.precision()); }

Enclosure sqr(const Enclosure& a) {
  Real m(a.precision());
  const int t = mpfr_sqr(m.get(), a.midpoint().get(), MPFR_RNDN);
  // 2 |m| r + r^2
  Real r = abs_up(a.midpoint());
  mpfr_mul_2ui(r.get(), r.get(), 1, MPFR_RNDU);
  mpfr_add(r.get(), r.get(), a.radius().get(), MPFR_RNDU);
  mpfr_mul(r.get(), r.get(), a.radius().get(), MPFR_RNDU);
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure sqrt(const Enclosure& a) {
  Real lo = a.lower();
  if (lo.sign() < 0) throw DomainError("sqrt of an enclosure with negative part");
  Real m(a.precision());
  const int t = mpfr_sqrt(m.get(), a.midpoint().get(), MPFR_RNDN);
  Real r = zero_radius();
  if (!a.radius().is_zero()) {
    // |sqrt(x) - sqrt(m)| = |x - m| / (sqrt(x) + sqrt(m)) <= r / (sqrt(lo) + sqrt(m))
    Real den(kRadiusPrecision);
    Real s(kRadiusPrecision);
    mpfr_sqrt(den.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(s.get(), a.midpoint().get(), MPFR_RNDD);
    mpfr_add(den.get(), den.get(), s.get(), MPFR_RNDD);
    if (den.sign() <= 0) {
      // Ball is [0, 2r]; sqrt spans [0, sqrt(2r)].
      mpfr_mul_2ui(r.get(), a.radius().get(), 1, MPFR_RNDU);
      mpfr_sqrt(r.get(), r.get(), MPFR_RNDU);
    } else {
      mpfr_div(r.get(), a.radius().get(), den.get(), MPFR_RNDU);
    }
  }
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure log(const Enclosure& a) {
  Real lo = a.lower();
  if (lo.sign() <= 0) throw DomainError("log of an enclosure that is not strictly positive");
  Real m(a.precision());
  const int t = mpfr_log(m.get(), a.midpoint().get(), MPFR_RNDN);
  // |log x - log m| <= r / (m - r)
  Real r = zero_radius();
  if (!a.radius().is_zero()) {
    Real den(kRadiusPrecision);
    mpfr_set(den.get(), lo.get(), MPFR_RNDD);
    mpfr_div(r.get(), a.radius().get(), den.get(), MPFR_RNDU);
  }
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

Enclosure exp(const Enclosure& a) {
  Real m(a.precision());
  const int t = mpfr_exp(m.get(), a.midpoint().get(), MPFR_RNDN);
  // exp(m) (exp(r) - 1)
  Real r = zero_radius();
  if (!a.radius().is_zero()) {
    Real em(kRadiusPrecision);
    mpfr_exp(em.get(), a.midpoint().get(), MPFR_RNDU);
    mpfr_expm1(r.get(), a.radius().get(), MPFR_RNDU);
    mpfr_mul(r.get(), r.get(), em.get(), MPFR_RNDU);
  }
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

namespace {

// Functions with |f'| <= 1 everywhere and |f| <= 1.
template <typename F>
Enclosure lipschitz_one(const Enclosure& a, F f, bool bounded) {
  Real m(a.precision());
  const int t = f(m.get(), a.midpoint().get(), MPFR_RNDN);
  Real r = a.radius();
  if (bounded && mpfr_cmp_ui(r.get(), 2) > 0) mpfr_set_ui(r.get(), 2, MPFR_RNDU);
  account_rounding(r, m, t);
  return Enclosure(std::move(m), std::move(r));
}

}  // namespace

Enclosure sin(const Enclosure& a) { return lipschitz_one(a, mpfr_sin, true); }
Enclosure cos(const Enclosure& a) { return lipschitz_one(a, mpfr_cos, true); }
Enclosure atan(const Enclosure& a) { return lipschitz_one(a, mpfr_atan, false); }

Enclosure abs(const Enclosure& a) {
  if (a.midpoint().sign() >= 0) return a;
  return -a;
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t p = joint_precision(a, b);
  Real la = a.lower();
  Real lb = b.lower();
  Real ua = a.upper();
  Real ub = b.upper();
  return Enclosure::from_bounds(la < lb ? la : lb, ua > ub ? ua : ub, p);
}

Enclosure enc_apply(EncOp op, std::span<const Enclosure> args) {
  const bool binary = op == EncOp::add || op == EncOp::sub || op == EncOp::mul || op == EncOp::div;
  if (args.size() != (binary ? 2u : 1u)) {
    throw std::invalid_argument("enc_apply: wrong number of arguments");
  }
  switch (op) {
    case EncOp::add: return args[0] + args[1];
    case EncOp::sub: return args[0] - args[1];
    case EncOp::mul: return args[0] * args[1];
    case EncOp::div: return args[0] / args[1];
    case EncOp::log: return log(args[0]);
    case EncOp::sqr: return sqr(args[0]);
    case EncOp::exp: return exp(args[0]);
  }
  throw std::invalid_argument("enc_apply: unknown op");
}

Enclosure enc_const(EncConst name, mpfr_prec_t precision) {
  if (precision < kMinPrecision) throw std::invalid_argument("enc_const: precision below 16 bits");
  // Work 32 guard bits above the request so the final rounding dominates
  // the radius (<= 1 ulp + epsilon).
  const mpfr_prec_t wp = precision + 32;
  auto pi = [wp] {
    Real m(wp);
    Real r = zero_radius();
    account_rounding(r, m, mpfr_const_pi(m.get(), MPFR_RNDN));
    return Enclosure(std::move(m), std::move(r));
  };
  auto e = [wp] { return exp(Enclosure::exact(1L, wp)); };
  Enclosure v;
  switch (name) {
    case EncConst::pi: v = pi(); break;
    case EncConst::two_pi: v = pi() * 2L; break;
    case EncConst::e: v = e(); break;
    case EncConst::two_pi_e: v = pi() * 2L * e(); break;
    case EncConst::log_two_pi: v = log(pi() * 2L); break;
  }
  return v.with_precision(precision);
}

Enclosure enc_const(std::string_view name, mpfr_prec_t precision) {
  if (name == "pi") return enc_const(EncConst::pi, precision);
  if (name == "two_pi") return enc_const(EncConst::two_pi, precision);
  if (name == "e") return enc_const(EncConst::e, precision);
  if (name == "two_pi_e") return enc_const(EncConst::two_pi_e, precision);
  if (name == "log_two_pi") return enc_const(EncConst::log_two_pi, precision);
  throw std::invalid_argument("unknown constant '" + std::string(name) + "'");
}

}  // namespace hzeta
