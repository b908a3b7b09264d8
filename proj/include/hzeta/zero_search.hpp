#ifndef HZETA_ZERO_SEARCH_HPP
#define HZETA_ZERO_SEARCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hzeta/certify.hpp"
#include "hzeta/enclosure.hpp"
#include "hzeta/zero_table.hpp"

namespace hzeta {

struct SearchOptions {
  double target_radius = 1e-12;
  mpfr_prec_t precision = 128;
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 1;
  // Sample points per Gram interval in the first scan.
  int samples_per_gram_interval = 2;
  // Depth limit for the hidden-pair search inside a short Gram block.
  int max_subdivision_depth = 40;
};

// Enclosures of all sign changes of Z found in (t_lo, t_hi], increasing and
// disjoint, each with radius <= target_radius (in canonical two-digit form).
// The result does not depend on the number of workers.
// Throws RefinementError naming the bracket when a zero cannot be refined.
std::vector<Enclosure> locate_and_refine(double t_lo, double t_hi, double target_radius);
std::vector<Enclosure> locate_and_refine(double t_lo, double t_hi, const SearchOptions& options);

// Refines a bracket [lo, hi] on which Z changes sign. The returned
// enclosure lies inside [lo, hi].
Enclosure refine_zero(const Real& lo, const Real& hi, const SearchOptions& options);

using ProgressFn = std::function<void(const std::string&)>;

struct BuildOptions {
  SearchOptions search;
  CertifyOptions certify;
  ProgressFn progress;
};

struct BuildResult {
  ZeroTable table;
  // Empty when the table carries a certificate.
  std::string certification_error;
};

// First n zeros, certified at a height between gamma_n and gamma_{n+1}.
BuildResult build_zero_table_by_count(long n, const BuildOptions& options = {});
// All zeros up to `height`, certified at `height`.
BuildResult build_zero_table_by_height(double height, const BuildOptions& options = {});

// Rough inverse of L: a height where about n zeros lie below.
double approximate_height_for_count(double n);

}  // namespace hzeta

#endif  // HZETA_ZERO_SEARCH_HPP
