#include "hzeta/counting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hzeta/errors.hpp"
#include "hzeta/zero_table.hpp"

namespace hzeta {
namespace {

double round_up(const Enclosure& x) { return x.upper().to_double(MPFR_RNDU); }

// Heights passed as doubles are accepted down to one ulp below the true
// constant, so that the double nearest to 2 pi is a valid argument.
void require_at_least(double T, EncConst c, const char* what) {
  const double limit = enc_const(c, 64).lower_double();
  if (!(T >= std::nextafter(limit, 0.0))) {
    throw DomainError(std::string(what) + ": height " + std::to_string(T) + " is below the valid range");
  }
}

void require_at_least(const Enclosure& T, EncConst c, const char* what) {
  if (T.upper() < enc_const(c, T.precision()).lower()) {
    throw DomainError(std::string(what) + ": height " + T.to_string(12) +
                      " is below the valid range");
  }
}

// Antiderivative of L: 2 pi (v^2/2 log v - 3 v^2/4) + 7u/8 with v = u / 2 pi.
Enclosure big_l_antiderivative(const Enclosure& u) {
  const mpfr_prec_t p = u.precision();
  const Enclosure two_pi = enc_const(EncConst::two_pi, p);
  const Enclosure v = u / two_pi;
  const Enclosure v2 = sqr(v);
  return two_pi * (v2 * log(v) / 2 - v2 * 3 / 4) + u * 7 / 8;
}

double s1_bound_at(const Real& top) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(top.precision(), 64);
  const Enclosure t = Enclosure::exact(top, p);
  const Enclosure b =
      (bound_param(BoundParams::A0, p) + bound_param(BoundParams::A1, p) * log(t)) * 2;
  return round_up(b);
}

}  // namespace

Enclosure bound_param(std::string_view literal, mpfr_prec_t precision) {
  return Enclosure::from_decimal(literal, precision);
}

Enclosure big_l(const Enclosure& T) {
  require_at_least(T, EncConst::two_pi, "big_l");
  const mpfr_prec_t p = T.precision();
  const Enclosure v = T / enc_const(EncConst::two_pi, p);
  return v * (log(v) - 1) + Enclosure::rational(7, 8, p);
}

Enclosure big_l_integral(const Enclosure& t1, const Enclosure& t2) {
  require_at_least(t1, EncConst::two_pi, "big_l_integral");
  if (t2.upper() < t1.lower()) throw DomainError("big_l_integral: t2 < t1");
  return big_l_antiderivative(t2) - big_l_antiderivative(t1);
}

Enclosure q_from_zeros(const Enclosure& T, const ZeroTable& table, bool allow_uncertified) {
  const auto height = table.certified_height();
  if (!height) {
    if (!allow_uncertified) throw UncertifiedTableError("zero table carries no completeness certificate");
  } else if (!table.is_certified() && !allow_uncertified) {
    throw UncertifiedTableError("zero table is not certified by this library");
  }
  if (height && T.upper() > height->lower()) {
    throw DomainError("height " + T.to_string(12) + " exceeds certified height " +
                                height->to_string(12));
  }
  if (!height && !table.zeros.empty() && T.upper() > table.zeros.back().gamma.upper()) {
    throw DomainError("height " + T.to_string(12) + " exceeds the last ordinate");
  }
  const Real lo = T.lower();
  const Real hi = T.upper();
  // First ordinate whose upper end exceeds T.
  const auto it = std::partition_point(table.zeros.begin(), table.zeros.end(),
                                       [&](const ZeroOrdinate& z) { return z.gamma.upper() <= lo; });
  if (it != table.zeros.end() && it->gamma.lower() <= hi) {
    throw DomainError("height " + T.to_string(12) + " lies inside the enclosure of zero " +
                      std::to_string(it->index));
  }
  const long count = static_cast<long>(it - table.zeros.begin());
  return Enclosure::exact(count, T.precision()) - big_l(T);
}

double s1_window_bound(const Enclosure& t1, const Enclosure& t2) {
  require_at_least(t1, EncConst::two_pi, "s1_window_bound");
  if (t2.upper() < t1.lower()) throw DomainError("s1_window_bound: t2 < t1");
  return s1_bound_at(t2.upper());
}

double s1_window_bound(double t1, double t2) {
  require_at_least(t1, EncConst::two_pi, "s1_window_bound");
  if (t2 < t1) throw DomainError("s1_window_bound: t2 < t1");
  return s1_bound_at(Real(64, t2));
}

double e2_bound(const Enclosure& T) {
  require_at_least(T, EncConst::two_pi, "e2_bound");
  // Decreasing in T, so the lower end gives the bound over the enclosure.
  const mpfr_prec_t p = std::max<mpfr_prec_t>(T.precision(), 64);
  const Enclosure t = Enclosure::exact(T.lower(), p);
  const Enclosure b =
      (bound_param(BoundParams::e2_c0, p) + bound_param(BoundParams::e2_c1, p) * log(t)) / sqr(t);
  return round_up(b);
}

double e2_bound(double T) {
  require_at_least(T, EncConst::two_pi, "e2_bound");
  const mpfr_prec_t p = 64;
  const Enclosure t = Enclosure::exact(T, p);
  const Enclosure b =
      (bound_param(BoundParams::e2_c0, p) + bound_param(BoundParams::e2_c1, p) * log(t)) / sqr(t);
  return round_up(b);
}

double lehman_bound(const Enclosure& T) {
  require_at_least(T, EncConst::two_pi_e, "lehman_bound");
  const mpfr_prec_t p = std::max<mpfr_prec_t>(T.precision(), 64);
  const Enclosure t = Enclosure::exact(T.lower(), p);
  const Enclosure b = bound_param(BoundParams::lehman_A, p) * (log(t) * 2 + 1) / t;
  return round_up(b);
}

double lehman_bound(double T) {
  require_at_least(T, EncConst::two_pi_e, "lehman_bound");
  const mpfr_prec_t p = 64;
  const Enclosure t = Enclosure::exact(T, p);
  const Enclosure b = bound_param(BoundParams::lehman_A, p) * (log(t) * 2 + 1) / t;
  return round_up(b);
}

}  // namespace hzeta
