#include "hzeta/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hzeta/counting.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {
namespace {

// Index of the first enclosure whose upper end exceeds x.
std::size_t count_at_or_below(std::span<const Enclosure> zeros, const Real& x) {
  const auto it = std::partition_point(zeros.begin(), zeros.end(),
                                       [&](const Enclosure& z) { return z.upper() <= x; });
  return static_cast<std::size_t>(it - zeros.begin());
}

double stirling_term(const Enclosure& t1, const Enclosure& t2) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(t2.precision(), 64);
  const Enclosure r = bound_param(BoundParams::trudgian_q, p) * log(t2.with_precision(p) / t1.with_precision(p));
  return r.upper().to_double(MPFR_RNDU);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

Enclosure located_count_integral(std::span<const Enclosure> zeros, const Enclosure& t1,
                                 const Enclosure& t2) {
  const mpfr_prec_t p = std::max(t1.precision(), t2.precision());
  const std::size_t below = count_at_or_below(zeros, t1.lower());
  Enclosure sum = (t2 - t1) * static_cast<long>(below);
  for (std::size_t k = below; k < zeros.size(); ++k) {
    const Real u = zeros[k].upper();
    if (u >= t2.lower()) break;
    // Ordinates straddling t1 are handled by counting them from t1 on.
    const Enclosure start = u <= t1.upper() ? t1 : Enclosure::exact(u, p);
    sum = sum + (t2 - start);
  }
  return sum - big_l_integral(t1, t2);
}

double window_margin(const WindowEvidence& w) {
  const mpfr_prec_t p = w.integral.precision();
  const Enclosure m = w.integral + (w.t2 - w.t1) - Enclosure::exact(w.stirling_term, p) -
                      Enclosure::exact(w.s1_bound, p);
  return m.lower().to_double(MPFR_RNDD);
}

CompletenessCertificate certify_range(std::span<const Enclosure> zeros, const Enclosure& T,
                                      double window_limit, const CertifyOptions& options) {
  const mpfr_prec_t p = std::max(options.precision, T.precision());
  if (T.upper() < enc_const(EncConst::two_pi, p).lower()) {
    throw DomainError("certify_range: height below 2 pi");
  }
  for (std::size_t k = 1; k < zeros.size(); ++k) {
    if (!(zeros[k].lower() > zeros[k - 1].upper())) {
      throw std::invalid_argument("certify_range: enclosures not increasing and disjoint");
    }
  }
  const Real top = T.upper();
  const std::size_t count = count_at_or_below(zeros, top);
  if ((count < zeros.size() && zeros[count].lower() <= top) ||
      (count > 0 && zeros[count - 1].upper() >= T.lower() && !T.is_exact())) {
    throw DomainError("certify_range: height lies inside a zero enclosure");
  }
  // The count is the same for every point of T, so the window starts at its top.
  const Enclosure t1 = Enclosure::exact(top, p);
  double best = -HUGE_VAL;
  double w = options.initial_window;
  for (int j = 0; j <= options.max_doublings; ++j, w *= 2) {
    const Enclosure t2 = t1 + Enclosure::exact(w, p);
    if (t2.upper_double() > window_limit) break;
    WindowEvidence ev;
    ev.t1 = t1;
    ev.t2 = t2;
    ev.integral = located_count_integral(zeros, t1, t2);
    ev.stirling_term = stirling_term(t1, t2);
    ev.s1_bound = s1_window_bound(t1, t2);
    const double margin = window_margin(ev);
    best = std::max(best, margin);
    if (margin > 0) {
      CompletenessCertificate cert;
      cert.height = T;
      cert.zero_count = static_cast<long>(count);
      cert.method = CertificateMethod::turing_window;
      cert.evidence = ev;
      return cert;
    }
  }
  if (best == -HUGE_VAL) {
    throw CertificationError("certificate failed at T = " + T.to_string(15) +
                             ": located zeros end at " + fmt(window_limit) +
                             ", below the first window; widen the window");
  }
  throw CertificationError("certificate failed at T = " + T.to_string(15) + ": best margin " +
                           fmt(best) + " (zeros located up to " + fmt(window_limit) +
                           "); widen the window");
}

CompletenessCertificate certify_range(std::span<const Enclosure> zeros, const Enclosure& T,
                                      const CertifyOptions& options) {
  const double limit = zeros.empty() ? T.upper_double() : zeros.back().upper_double();
  return certify_range(zeros, T, limit, options);
}

std::string check_certificate(const CompletenessCertificate& cert) {
  if (cert.method != CertificateMethod::turing_window) return "certificate is not a Turing-window certificate";
  if (!cert.evidence) return "certificate has no window evidence";
  const WindowEvidence& w = *cert.evidence;
  if (!w.t1.is_exact() || !(w.t1.midpoint() == cert.height.upper())) {
    return "window does not start at the certified height";
  }
  if (w.t1.upper() < enc_const(EncConst::two_pi, w.t1.precision()).lower()) return "window starts below 2 pi";
  if (!(w.t2.lower() > w.t1.upper())) return "empty window";
  if (w.stirling_term < stirling_term(w.t1, w.t2)) return "stored 0.2 log(t2/t1) term is too small";
  if (w.s1_bound < s1_window_bound(w.t1, w.t2)) return "stored S_1 bound is too small";
  if (!(window_margin(w) > 0)) return "window inequality does not hold";
  return {};
}

std::string check_certificate(const CompletenessCertificate& cert, const ZeroTable& table) {
  if (auto msg = check_certificate(cert); !msg.empty()) return msg;
  std::vector<Enclosure> zs;
  zs.reserve(table.zeros.size());
  for (const auto& z : table.zeros) zs.push_back(z.gamma);
  const std::size_t count = count_at_or_below(zs, cert.height.upper());
  if (static_cast<long>(count) != cert.zero_count) return "zero count does not match the table";
  if (count < zs.size() && zs[count].lower() <= cert.height.upper()) {
    return "certified height lies inside a zero enclosure";
  }
  return {};
}

}  // namespace hzeta
