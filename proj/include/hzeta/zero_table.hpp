#ifndef HZETA_ZERO_TABLE_HPP
#define HZETA_ZERO_TABLE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hzeta/enclosure.hpp"

namespace hzeta {

// gamma_n, the ordinate of the n-th zero above the real axis.
struct ZeroOrdinate {
  long index = 0;
  Enclosure gamma;
};

enum class CertificateMethod { turing_window, external_trusted };

std::string to_string(CertificateMethod m);
CertificateMethod certificate_method_from_string(const std::string& s);

// Integral comparison behind a Turing-window certificate. With
//   N_lo(u) = #{located zeros whose enclosure lies at or below u},
// `integral` encloses the integral of N_lo(u) - L(u) over [t1, t2]. If a zero
// at or below t1 had been missed, the true S(u) would exceed
// N_lo(u) + 1 - L(u) - 0.2/u on the whole window, so
//   integral + (t2 - t1) - stirling_term > s1_bound
// contradicts the S_1 bound and proves the count at t1 complete.
struct WindowEvidence {
  Enclosure t1;
  Enclosure t2;
  Enclosure integral;
  double stirling_term = 0.0;  // 0.2 log(t2 / t1), rounded up
  double s1_bound = 0.0;       // 2 (A0 + A1 log t2), rounded up
};

struct CompletenessCertificate {
  Enclosure height;
  long zero_count = 0;
  CertificateMethod method = CertificateMethod::turing_window;
  std::optional<WindowEvidence> evidence;
};

struct TableSource {
  std::string generator;
  mpfr_prec_t precision_bits = 0;
  double target_radius = 0.0;
  std::string provenance;
};

struct ZeroTable {
  std::vector<ZeroOrdinate> zeros;
  std::optional<CompletenessCertificate> certificate;
  TableSource source;

  std::size_t size() const { return zeros.size(); }
  // Certified by our own Turing-window argument.
  bool is_certified() const {
    return certificate && certificate->method == CertificateMethod::turing_window;
  }
  std::optional<Enclosure> certified_height() const {
    if (!certificate) return std::nullopt;
    return certificate->height;
  }
};

// Radii are stored as two-significant-digit decimals rounded up, so that a
// table survives a text round trip unchanged.
Real canonical_radius(const Real& r);
ZeroOrdinate make_ordinate(long index, const Enclosure& gamma);

// Throws std::invalid_argument when indices are not 1..n or enclosures are
// not disjoint and increasing.
void check_table_invariants(const ZeroTable& table);

// File format: '#' header lines with key=value metadata, body lines
// "index ordinate radius", and a closing "#checksum=<sha256 of body>".
void save_zero_table(const ZeroTable& table, const std::filesystem::path& path);
ZeroTable load_zero_table(const std::filesystem::path& path);
std::string format_zero_table(const ZeroTable& table);
// Throws ParseError (with line number) on malformed input.
ZeroTable parse_zero_table(const std::string& text);

}  // namespace hzeta

#endif  // HZETA_ZERO_TABLE_HPP
