#include "hzeta/zero_table.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "hzeta/errors.hpp"

namespace hzeta {
namespace {

constexpr const char* kFormatVersion = "1";
constexpr double kExternalDefaultRadius = 1e-8;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// Fixed-point decimal that reads back (round to nearest) to the same value.
std::string fixed_roundtrip(const Real& x) {
  if (x.is_zero()) return "0";
  const int digits = static_cast<int>(std::ceil(static_cast<double>(x.precision()) * 0.30102999566398120)) + 1;
  const long int_digits = mpfr_get_exp(x.get()) > 0
                              ? static_cast<long>(std::floor(std::log10(std::fabs(x.to_double())))) + 1
                              : 0;
  int frac = std::max(1, digits - static_cast<int>(int_digits));
  for (;; ++frac) {
    char* raw = nullptr;
    if (mpfr_asprintf(&raw, "%.*RNf", frac, x.get()) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string s(raw);
    mpfr_free_str(raw);
    if (Real::parse(s, x.precision(), MPFR_RNDN) == x) return s;
  }
}

// Shortest decimal d <= r with round-up(d) == r.
std::string radius_text(const Real& r) {
  if (r.is_zero()) return "0";
  for (int k = 2; k <= 40; ++k) {
    std::string s = r.to_scientific(k, MPFR_RNDD);
    if (Real::parse(s, r.precision(), MPFR_RNDU) == r) return s;
  }
  throw std::logic_error("radius_text: no round-trip representation");
}

Real parse_radius(const std::string& s) {
  Real r = Real::parse(s, kRadiusPrecision, MPFR_RNDU);
  if (r.sign() < 0) throw std::invalid_argument("negative radius");
  return r;
}

std::string enclosure_mid(const Enclosure& e) { return e.midpoint().to_roundtrip_string(); }

Enclosure enclosure_from(const std::string& mid, const std::string& rad, mpfr_prec_t prec) {
  return Enclosure(Real::parse(mid, prec, MPFR_RNDN), parse_radius(rad));
}

std::string double_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string to_string(CertificateMethod m) {
  return m == CertificateMethod::turing_window ? "turing_window" : "external_trusted";
}

CertificateMethod certificate_method_from_string(const std::string& s) {
  if (s == "turing_window") return CertificateMethod::turing_window;
  if (s == "external_trusted") return CertificateMethod::external_trusted;
  throw std::invalid_argument("unknown certificate method '" + s + "'");
}

Real canonical_radius(const Real& r) {
  if (r.sign() < 0) throw std::invalid_argument("negative radius");
  if (r.is_zero()) return Real(kRadiusPrecision);
  Real up(kRadiusPrecision);
  mpfr_set(up.get(), r.get(), MPFR_RNDU);
  // already the rounded-up value of a two-digit decimal
  if (Real::parse(up.to_scientific(2, MPFR_RNDD), kRadiusPrecision, MPFR_RNDU) == up) return up;
  return Real::parse(up.to_scientific(2, MPFR_RNDU), kRadiusPrecision, MPFR_RNDU);
}

ZeroOrdinate make_ordinate(long index, const Enclosure& gamma) {
  return ZeroOrdinate{index, Enclosure(gamma.midpoint(), canonical_radius(gamma.radius()))};
}

void check_table_invariants(const ZeroTable& table) {
  for (std::size_t k = 0; k < table.zeros.size(); ++k) {
    const auto& z = table.zeros[k];
    if (z.index != static_cast<long>(k + 1)) {
      throw std::invalid_argument("zero index " + std::to_string(z.index) + " at position " +
                                  std::to_string(k + 1));
    }
    if (z.gamma.lower().sign() <= 0) throw std::invalid_argument("nonpositive ordinate at index " + std::to_string(z.index));
    if (k > 0 && !(z.gamma.lower() > table.zeros[k - 1].gamma.upper())) {
      throw std::invalid_argument("ordinates not disjoint and increasing at index " + std::to_string(z.index));
    }
  }
  if (table.certificate && !table.zeros.empty() &&
      table.certificate->method == CertificateMethod::turing_window &&
      table.certificate->height.lower() < table.zeros.back().gamma.upper()) {
    throw std::invalid_argument("certified height below the last ordinate");
  }
}

std::string format_zero_table(const ZeroTable& table) {
  std::ostringstream head;
  head << "# hzeta zero table\n";
  head << "# format=" << kFormatVersion << "\n";
  head << "# count=" << table.zeros.size() << "\n";
  head << "# generator=" << table.source.generator << "\n";
  head << "# precision_bits=" << table.source.precision_bits << "\n";
  head << "# target_radius=" << double_text(table.source.target_radius) << "\n";
  if (!table.source.provenance.empty()) head << "# provenance=" << table.source.provenance << "\n";
  if (const auto& c = table.certificate) {
    head << "# method=" << to_string(c->method) << "\n";
    head << "# certified_height=" << enclosure_mid(c->height) << "\n";
    head << "# certified_height_radius=" << radius_text(c->height.radius()) << "\n";
    head << "# certified_height_precision=" << c->height.precision() << "\n";
    head << "# certified_count=" << c->zero_count << "\n";
    if (const auto& w = c->evidence) {
      head << "# window_precision=" << w->integral.precision() << "\n";
      head << "# window_t1=" << enclosure_mid(w->t1) << "\n";
      head << "# window_t1_radius=" << radius_text(w->t1.radius()) << "\n";
      head << "# window_t2=" << enclosure_mid(w->t2) << "\n";
      head << "# window_t2_radius=" << radius_text(w->t2.radius()) << "\n";
      head << "# window_integral=" << enclosure_mid(w->integral) << "\n";
      head << "# window_integral_radius=" << radius_text(w->integral.radius()) << "\n";
      head << "# window_stirling=" << double_text(w->stirling_term) << "\n";
      head << "# window_s1_bound=" << double_text(w->s1_bound) << "\n";
    }
  } else {
    head << "# method=uncertified\n";
  }
  std::string body;
  body.reserve(table.zeros.size() * 64);
  for (const auto& z : table.zeros) {
    body += std::to_string(z.index);
    body += ' ';
    body += fixed_roundtrip(z.gamma.midpoint());
    body += ' ';
    body += radius_text(z.gamma.radius());
    body += '\n';
  }
  return head.str() + body + "#checksum=" + sha256_hex(body) + "\n";
}

void save_zero_table(const ZeroTable& table, const std::filesystem::path& path) {
  check_table_invariants(table);
  const std::string text = format_zero_table(table);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

ZeroTable load_zero_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_zero_table(buf.str());
}

ZeroTable parse_zero_table(const std::string& text) {
  std::map<std::string, std::string> header;
  std::map<std::string, std::size_t> header_line;
  std::vector<std::pair<std::size_t, std::string>> body;
  std::string body_text;
  std::optional<std::string> checksum;
  std::size_t checksum_line = 0;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (checksum && !line.empty()) throw ParseError(line_no, "content after checksum line");
    if (line.rfind("#checksum=", 0) == 0) {
      checksum = line.substr(10);
      checksum_line = line_no;
      continue;
    }
    if (!line.empty() && line[0] == '#') {
      std::string kv = line.substr(1);
      const auto first = kv.find_first_not_of(' ');
      kv = first == std::string::npos ? "" : kv.substr(first);
      const auto eq = kv.find('=');
      if (eq != std::string::npos) {
        header[kv.substr(0, eq)] = kv.substr(eq + 1);
        header_line[kv.substr(0, eq)] = line_no;
      }
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    body.emplace_back(line_no, line);
    body_text += line;
    body_text += '\n';
  }

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = header.find(key);
    if (it == header.end()) return std::nullopt;
    return it->second;
  };
  auto line_of = [&](const std::string& key) { return header_line.count(key) ? header_line[key] : 0; };

  const bool native = get("format").has_value();
  ZeroTable table;
  mpfr_prec_t prec = kDefaultPrecision;
  if (auto p = get("precision_bits")) {
    try {
      prec = std::stol(*p);
    } catch (const std::exception&) {
      throw ParseError(line_of("precision_bits"), "bad precision_bits");
    }
    if (prec < kMinPrecision) throw ParseError(line_of("precision_bits"), "precision_bits too small");
  }
  table.source.precision_bits = prec;
  table.source.generator = get("generator").value_or(native ? "" : "external");
  table.source.provenance = get("provenance").value_or("");
  if (auto r = get("target_radius")) {
    try {
      table.source.target_radius = std::stod(*r);
    } catch (const std::exception&) {
      throw ParseError(line_of("target_radius"), "bad target_radius");
    }
  }

  if (native) {
    if (*get("format") != kFormatVersion) throw ParseError(line_of("format"), "unsupported format version");
    if (!checksum) throw ParseError(line_no, "missing checksum line");
    if (*checksum != sha256_hex(body_text)) throw ParseError(checksum_line, "checksum mismatch");
  } else if (checksum && *checksum != sha256_hex(body_text)) {
    throw ParseError(checksum_line, "checksum mismatch");
  }

  // External files without a declared radius get a conservative one.
  std::optional<Real> default_radius;
  if (!native) {
    const auto declared = get("radius");
    try {
      default_radius = parse_radius(declared.value_or(double_text(kExternalDefaultRadius)));
    } catch (const std::exception&) {
      throw ParseError(line_of("radius"), "bad radius");
    }
    if (!declared) table.source.target_radius = kExternalDefaultRadius;
  }

  table.zeros.reserve(body.size());
  for (const auto& [ln, text_line] : body) {
    const auto tok = split_ws(text_line);
    ZeroOrdinate z;
    try {
      if (tok.size() == 3) {
        std::size_t used = 0;
        z.index = std::stol(tok[0], &used);
        if (used != tok[0].size()) throw std::invalid_argument("index");
        z.gamma = enclosure_from(tok[1], tok[2], prec);
      } else if (tok.size() == 1 && !native) {
        z.index = static_cast<long>(table.zeros.size()) + 1;
        z.gamma = Enclosure(Real::parse(tok[0], prec, MPFR_RNDN), *default_radius);
      } else {
        throw std::invalid_argument("expected 'index ordinate radius'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(ln, std::string("malformed line: ") + e.what());
    } catch (const std::out_of_range&) {
      throw ParseError(ln, "malformed line: number out of range");
    }
    if (z.index != static_cast<long>(table.zeros.size()) + 1) {
      throw ParseError(ln, "index " + std::to_string(z.index) + " out of sequence");
    }
    if (z.gamma.lower().sign() <= 0) throw ParseError(ln, "nonpositive ordinate");
    if (!table.zeros.empty() && !(z.gamma.lower() > table.zeros.back().gamma.upper())) {
      throw ParseError(ln, "ordinates not increasing (or enclosures overlap)");
    }
    table.zeros.push_back(std::move(z));
  }

  if (auto c = get("count"); c && native) {
    if (std::stoul(*c) != table.zeros.size()) throw ParseError(line_of("count"), "count does not match body");
  }

  const std::string method = get("method").value_or(native ? "uncertified" : "external_trusted");
  try {
    if (method == "uncertified") {
      // no certificate
    } else if (method == "external_trusted") {
      CompletenessCertificate cert;
      cert.method = CertificateMethod::external_trusted;
      cert.zero_count = static_cast<long>(table.zeros.size());
      if (auto h = get("certified_height")) {
        cert.height = enclosure_from(*h, get("certified_height_radius").value_or("0"), prec);
      } else if (!table.zeros.empty()) {
        cert.height = Enclosure(table.zeros.back().gamma.upper(), Real(kRadiusPrecision));
      }
      table.certificate = cert;
    } else if (method == "turing_window") {
      CompletenessCertificate cert;
      cert.method = CertificateMethod::turing_window;
      const mpfr_prec_t hp = std::stol(get("certified_height_precision").value_or(std::to_string(prec)));
      cert.height = enclosure_from(get("certified_height").value(),
                                   get("certified_height_radius").value_or("0"), hp);
      cert.zero_count = std::stol(get("certified_count").value());
      if (get("window_t1")) {
        const mpfr_prec_t wp = std::stol(get("window_precision").value());
        WindowEvidence w;
        w.t1 = enclosure_from(get("window_t1").value(), get("window_t1_radius").value(), wp);
        w.t2 = enclosure_from(get("window_t2").value(), get("window_t2_radius").value(), wp);
        w.integral = enclosure_from(get("window_integral").value(), get("window_integral_radius").value(), wp);
        w.stirling_term = std::stod(get("window_stirling").value());
        w.s1_bound = std::stod(get("window_s1_bound").value());
        cert.evidence = w;
      }
      table.certificate = cert;
    } else {
      throw ParseError(line_of("method"), "unknown method '" + method + "'");
    }
  } catch (const std::bad_optional_access&) {
    throw ParseError(line_of("method"), "incomplete certificate header");
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_of("method"), std::string("malformed certificate header: ") + e.what());
  }
  return table;
}

}  // namespace hzeta
