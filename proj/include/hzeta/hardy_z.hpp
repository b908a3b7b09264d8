#ifndef HZETA_HARDY_Z_HPP
#define HZETA_HARDY_Z_HPP

#include "hzeta/enclosure.hpp"
#include "hzeta/real.hpp"

namespace hzeta {

// Below this height the Riemann-Siegel remainder bound is not available
// and Z is always evaluated by Euler-Maclaurin.
inline constexpr double kRiemannSiegelMinHeight = 200.0;

enum class ZMethod {
  automatic,         // Riemann-Siegel when valid, Euler-Maclaurin otherwise or when
                     // the Riemann-Siegel enclosure does not fix the sign
  riemann_siegel,    // t >= 200 only
  euler_maclaurin,
};

// Riemann-Siegel phase theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi,
// with a rigorous Stirling remainder. Requires t >= 2.
Enclosure rs_theta(const Real& t, mpfr_prec_t precision);
// Same, for an enclosure of t (radius propagated through a bound on theta').
Enclosure rs_theta(const Enclosure& t, mpfr_prec_t precision);

// Enclosure of the Hardy function Z(t) at an exact height t >= 2.
// Throws DomainError for t < 2 and InsufficientPrecision when
// `precision` cannot resolve the phases at this height.
Enclosure hardy_z(const Real& t, mpfr_prec_t precision, ZMethod method = ZMethod::automatic);
Enclosure hardy_z(double t, mpfr_prec_t precision, ZMethod method = ZMethod::automatic);

// k-th Gram point (theta(g_k) = k pi), k >= -1, as a verified enclosure.
Enclosure gram_point(long k, mpfr_prec_t precision);

// Double-precision, non-rigorous versions for scanning.
double rs_theta_fast(double t);
double hardy_z_fast(double t);
double gram_point_fast(long k);

}  // namespace hzeta

#endif  // HZETA_HARDY_Z_HPP
