#ifndef HZETA_COUNTING_HPP
#define HZETA_COUNTING_HPP

#include <string_view>

#include "hzeta/enclosure.hpp"

namespace hzeta {

struct ZeroTable;

// Explicit constants, kept as decimal literals
// and converted to enclosures on use.
struct BoundParams {
  // |S_1(T) - c| <= A0 + A1 log T for T >= T0 = 2 pi
  static constexpr std::string_view A0 = "2.067";
  static constexpr std::string_view A1 = "0.059";
  // |Q(T) - S(T)| <= 0.2 / T
  static constexpr std::string_view trudgian_q = "0.2";
  // naive truncation error <= A (2 log T + 1) / T
  static constexpr std::string_view lehman_A = "0.28";
  // |E_2(T)| <= (c0 + c1 log T) / T^2
  static constexpr std::string_view e2_c0 = "4.27";
  static constexpr std::string_view e2_c1 = "0.12";
  // T0 is 2 pi; see enc_const(EncConst::two_pi).
};

Enclosure bound_param(std::string_view literal, mpfr_prec_t precision = kDefaultPrecision);

// L(T) = (T / 2pi)(log(T / 2pi) - 1) + 7/8. Throws DomainError when T is
// certainly below 2 pi.
Enclosure big_l(const Enclosure& T);
// Integral of L over [t1, t2].
Enclosure big_l_integral(const Enclosure& t1, const Enclosure& t2);

// Q(T) = N(T) - L(T) with N counted from the table. Throws
// UncertifiedTableError for a table without our own certificate (unless
// allowed) and DomainError when T exceeds the covered height or falls
// inside an ordinate enclosure.
Enclosure q_from_zeros(const Enclosure& T, const ZeroTable& table, bool allow_uncertified = false);

// The bounds below are one-sided; each returns a double rounded up.

// 2 (A0 + A1 log t2): bounds |S_1(t2) - S_1(t1)| for 2 pi <= t1 <= t2.
double s1_window_bound(const Enclosure& t1, const Enclosure& t2);
double s1_window_bound(double t1, double t2);
// (4.27 + 0.12 log T) / T^2 for T >= 2 pi.
double e2_bound(const Enclosure& T);
double e2_bound(double T);
// 0.28 (2 log T + 1) / T for T >= 2 pi e.
double lehman_bound(const Enclosure& T);
double lehman_bound(double T);

}  // namespace hzeta

#endif  // HZETA_COUNTING_HPP
