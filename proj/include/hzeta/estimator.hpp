#ifndef HZETA_ESTIMATOR_HPP
#define HZETA_ESTIMATOR_HPP

#include <span>
#include <string>
#include <vector>

#include "hzeta/enclosure.hpp"
#include "hzeta/zero_table.hpp"

namespace hzeta {

enum class EstimateMethod { naive, accelerated };

std::string to_string(EstimateMethod m);
EstimateMethod estimate_method_from_string(const std::string& s);

struct EstimateOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  // Accept tables without our own certificate; results are marked
  // non-rigorous.
  bool allow_uncertified = false;
  // Plain long double arithmetic, no enclosures.
  bool fast = false;
  // Chunked partial sums in fast mode only.
  unsigned workers = 1;
};

struct HEstimate {
  EstimateMethod method = EstimateMethod::accelerated;
  Enclosure T;
  long n_zeros = 0;
  Enclosure value;
  double tail_bound = 0.0;
  // value with tail_bound added to the radius
  Enclosure total;
  bool rigorous = true;
  bool hassani_shifted = false;
};

// T = gamma_n: the ordinate enclosure of the n-th zero.
Enclosure height_at_zero(const ZeroTable& table, long n);

// G(T), the sum of 1/gamma over the ordinates at or below T. An ordinate
// whose enclosure is T itself counts as below T.
Enclosure g_sum(const ZeroTable& table, const Enclosure& T, const EstimateOptions& options = {});

// G(T) - log^2(T / 2pi) / (4 pi), tail bound 0.28 (2 log T + 1) / T.
HEstimate naive_estimate(const ZeroTable& table, const Enclosure& T, const EstimateOptions& options = {});
// sum (1/gamma - 1/T) - (log^2(T / 2pi e) + 1) / (4 pi) + 7 / (8T),
// tail bound (4.27 + 0.12 log T) / T^2.
HEstimate accelerated_estimate(const ZeroTable& table, const Enclosure& T,
                               const EstimateOptions& options = {});
HEstimate estimate(EstimateMethod method, const ZeroTable& table, const Enclosure& T,
                   const EstimateOptions& options = {});

// Adds log^2(2pi) / (4 pi) to value and total.
HEstimate hassani_shift(const HEstimate& est);

enum class CheckStatus { pass, fail, inconclusive };
std::string to_string(CheckStatus s);

struct ButheSample {
  double T = 0.0;
  CheckStatus status = CheckStatus::inconclusive;
  Enclosure g;    // G(T)
  Enclosure rhs;  // log^2(T / 2pi) / (4 pi)
  std::string note;
};

// Checks G(T) <= log^2(T / 2pi) / (4 pi) at each height, comparing the
// upper end of G with the lower end of the right side.
std::vector<ButheSample> buthe_check(const ZeroTable& table, std::span<const double> heights,
                                     const EstimateOptions& options = {});

}  // namespace hzeta

#endif  // HZETA_ESTIMATOR_HPP
