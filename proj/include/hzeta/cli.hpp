#ifndef HZETA_CLI_HPP
#define HZETA_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hzeta/enclosure.hpp"

namespace hzeta::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kCertificationFailed = 2,
  kUsageError = 3,
};

enum class Format { text, structured };

struct RunConfig {
  std::string subcommand;
  std::string zeros_path;
  std::optional<long> count;
  std::optional<double> height;
  std::string method = "accelerated";
  std::string shift;
  std::vector<long> rows;
  bool rows_given = false;
  mpfr_prec_t precision_bits = kDefaultPrecision;
  bool precision_given = false;
  Format format = Format::text;
  std::string out_path;
  bool allow_uncertified = false;
  bool fast = false;
  unsigned workers = 1;
  double target_radius = 1e-12;
  std::string import_path;
  bool quiet = false;
};

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kReferenceH = "-0.0171594043070981495";
inline constexpr const char* kReferenceHassani = "0.2516367513127059665";

// Parses and runs one invocation; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hzeta::cli

#endif  // HZETA_CLI_HPP
