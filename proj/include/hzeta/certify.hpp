#ifndef HZETA_CERTIFY_HPP
#define HZETA_CERTIFY_HPP

#include <span>
#include <string>

#include "hzeta/enclosure.hpp"
#include "hzeta/zero_table.hpp"

namespace hzeta {

struct CertifyOptions {
  double initial_window = 60.0;
  int max_doublings = 4;
  mpfr_prec_t precision = kDefaultPrecision;
};

// Proves that `zeros` (increasing, disjoint enclosures of distinct zeros)
// contains every zero in (0, T], using windows [T, T + w] with w = 60, 120,
// ... as long as T + w <= window_limit. Throws CertificationError when no
// window succeeds, DomainError when T < 2 pi or T falls inside an enclosure.
CompletenessCertificate certify_range(std::span<const Enclosure> zeros, const Enclosure& T,
                                      double window_limit, const CertifyOptions& options = {});
// window_limit defaults to the upper end of the last enclosure.
CompletenessCertificate certify_range(std::span<const Enclosure> zeros, const Enclosure& T,
                                      const CertifyOptions& options = {});

// Integral of N_lo(u) - L(u) over [t1, t2], where N_lo(u) counts the
// enclosures lying at or below u.
Enclosure located_count_integral(std::span<const Enclosure> zeros, const Enclosure& t1,
                                 const Enclosure& t2);

// Margin of the window inequality: integral + (t2 - t1) - stirling - s1,
// rounded down. Positive means the count at t1 is complete.
double window_margin(const WindowEvidence& w);

// Re-checks a stored certificate from its own fields: the window starts at
// the certified height, the stored bound terms are at least their recomputed
// values, and the margin is positive. An empty string means valid.
std::string check_certificate(const CompletenessCertificate& cert);
// Additionally checks the zero count and the height against the table.
std::string check_certificate(const CompletenessCertificate& cert, const ZeroTable& table);

}  // namespace hzeta

#endif  // HZETA_CERTIFY_HPP
