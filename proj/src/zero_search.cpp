#include "hzeta/zero_search.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "hzeta/errors.hpp"
#include "hzeta/hardy_z.hpp"

namespace hzeta {
namespace {

// Above the Riemann-Siegel crossover the fast scan value is trusted for its
// sign only when it clears this size. The fast value keeps one correction
// term; the neglected part is about 0.12 t^(-3/4) at worst.
double fast_trust(double t) { return 0.25 * std::pow(t, -0.75); }
constexpr mpfr_prec_t kScanPrecision = 128;

unsigned resolve_workers(unsigned w) {
  if (w != 0) return w;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Runs fn(i) for i in [0, n). Each i writes only its own slot, so the
// outcome does not depend on scheduling. The first failing index wins.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& fn) {
  workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int sgn(double v) { return (v > 0) - (v < 0); }

// Value of Z whose sign is reliable; nudges t upward when Z(t) is too
// close to zero to decide.
double scan_value(double& t) {
  if (t >= kRiemannSiegelMinHeight) {
    const double v = hardy_z_fast(t);
    if (std::abs(v) >= fast_trust(t)) return v;
  }
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Enclosure z = hardy_z(t, kScanPrecision);
    if (const int s = z.definite_sign(); s != 0) {
      const double m = z.to_double();
      return sgn(m) == s ? m : s * 1e-300;
    }
    t += 1e-9 * std::max(1.0, t);
  }
  throw RefinementError("cannot fix the sign of Z near t = " + std::to_string(t));
}

double probe_value(double t) {
  double tt = t;
  return scan_value(tt);
}

struct Grid {
  std::vector<double> t;
  std::vector<double> z;
  // (Gram index, position in t)
  std::vector<std::pair<long, std::size_t>> gram;
};

Grid build_grid(double t_lo, double t_hi, int samples) {
  Grid g;
  std::vector<double> anchors{t_lo};
  std::vector<long> anchor_k{LONG_MIN};
  long k = -1;
  if (t_lo >= gram_point_fast(-1)) {
    k = static_cast<long>(std::floor(rs_theta_fast(t_lo) / std::numbers::pi)) + 1;
    while (k > -1 && gram_point_fast(k - 1) > t_lo) --k;
    while (gram_point_fast(k) <= t_lo) ++k;
  }
  for (;; ++k) {
    const double gk = gram_point_fast(k);
    if (gk >= t_hi) break;
    anchors.push_back(gk);
    anchor_k.push_back(k);
  }
  anchors.push_back(t_hi);
  anchor_k.push_back(LONG_MIN);
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    if (anchor_k[i] != LONG_MIN) g.gram.emplace_back(anchor_k[i], g.t.size());
    g.t.push_back(anchors[i]);
    const double a = anchors[i];
    const double b = anchors[i + 1];
    int m = std::max(samples, static_cast<int>(std::ceil((b - a) / 0.75)));
    if (b - a < 0.05) m = 1;
    for (int j = 1; j < m; ++j) g.t.push_back(a + (b - a) * j / m);
  }
  g.t.push_back(t_hi);
  return g;
}

// Looks for a pair of sign changes hidden between two points of equal sign.
std::vector<std::pair<double, double>> hidden_pair_search(double a, double za, double b, double zb,
                                                          int max_depth) {
  const int s = sgn(za);
  double lo = a, hi = b, flo = za, fhi = zb;
  for (int depth = 0; depth < max_depth; ++depth) {
    std::vector<double> xs{lo}, vs{flo};
    for (int j = 1; j <= 4; ++j) {
      xs.push_back(lo + (hi - lo) * j / 5);
      vs.push_back(probe_value(xs.back()));
    }
    xs.push_back(hi);
    vs.push_back(fhi);
    std::vector<std::pair<double, double>> found;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
      if (sgn(vs[j]) != sgn(vs[j + 1])) found.emplace_back(xs[j], xs[j + 1]);
    }
    if (!found.empty()) return found;
    std::size_t best = 1;
    for (std::size_t j = 2; j <= 4; ++j) {
      if (s * vs[j] < s * vs[best]) best = j;
    }
    lo = xs[best - 1];
    flo = vs[best - 1];
    hi = xs[best + 1];
    fhi = vs[best + 1];
    if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
  }
  return {};
}

struct Bracket {
  double lo, hi;
};

std::vector<Bracket> find_brackets(Grid& g, int max_depth) {
  const std::size_t n = g.t.size();
  std::vector<std::vector<Bracket>> per_segment(n ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sgn(g.z[i]) != sgn(g.z[i + 1])) per_segment[i].push_back({g.t[i], g.t[i + 1]});
  }
  // Rosser blocks between consecutive good Gram points.
  std::optional<std::pair<long, std::size_t>> prev;
  for (const auto& [k, pos] : g.gram) {
    const bool good = ((k % 2 == 0) ? 1 : -1) * g.z[pos] > 0;
    if (!good) continue;
    if (prev) {
      const long expected = k - prev->first;
      long found = 0;
      std::vector<std::size_t> quiet;
      for (std::size_t i = prev->second; i < pos; ++i) {
        found += static_cast<long>(per_segment[i].size());
        if (per_segment[i].empty()) quiet.push_back(i);
      }
      if (found < expected) {
        std::stable_sort(quiet.begin(), quiet.end(), [&](std::size_t x, std::size_t y) {
          return std::abs(g.z[x]) + std::abs(g.z[x + 1]) < std::abs(g.z[y]) + std::abs(g.z[y + 1]);
        });
        for (const std::size_t i : quiet) {
          if (found >= expected) break;
          for (const auto& [lo, hi] : hidden_pair_search(g.t[i], g.z[i], g.t[i + 1], g.z[i + 1], max_depth)) {
            per_segment[i].push_back({lo, hi});
            ++found;
          }
        }
      }
    }
    prev = std::make_pair(k, pos);
  }
  std::vector<Bracket> out;
  for (auto& seg : per_segment) {
    for (auto& b : seg) out.push_back(b);
  }
  return out;
}

std::string bracket_name(const Real& lo, const Real& hi) {
  return "[" + lo.to_scientific(20) + ", " + hi.to_scientific(20) + "]";
}

Real add(const Real& x, double d, mpfr_prec_t p) {
  Real out(p);
  mpfr_add_d(out.get(), x.get(), d, MPFR_RNDN);
  return out;
}

double diff(const Real& b, const Real& a) {
  Real d(64);
  mpfr_sub(d.get(), b.get(), a.get(), MPFR_RNDN);
  return d.to_double();
}

}  // namespace

Enclosure refine_zero(const Real& lo_in, const Real& hi_in, const SearchOptions& options) {
  const mpfr_prec_t p = options.precision;
  const double rho = 0.9 * options.target_radius;
  const double done_width = 2 * rho * (1 + 1e-9);
  auto eval = [&](const Real& x) { return hardy_z(x, p); };

  Real a(p), b(p);
  mpfr_set(a.get(), lo_in.get(), MPFR_RNDN);
  mpfr_set(b.get(), hi_in.get(), MPFR_RNDN);
  if (!(a < b)) throw RefinementError("empty bracket " + bracket_name(lo_in, hi_in));
  double fa = 0, fb = 0;
  bool have = false;

  // A double-precision root of the fast Z narrows the bracket cheaply.
  const double da = a.to_double(), db = b.to_double();
  if (da >= kRiemannSiegelMinHeight && db - da > 1e-6) {
    const double za = hardy_z_fast(da), zb = hardy_z_fast(db);
    if (sgn(za) * sgn(zb) < 0) {
      std::uintmax_t iters = 60;
      const auto r = boost::math::tools::toms748_solve(
          [](double t) { return hardy_z_fast(t); }, da, db, za, zb,
          boost::math::tools::eps_tolerance<double>(45), iters);
      const double x0 = 0.5 * (r.first + r.second);
      for (double delta = 1e-5; delta < db - da; delta *= 20) {
        Real xl = add(Real(p, x0), -delta, p), xh = add(Real(p, x0), delta, p);
        if (xl <= a || xh >= b) break;
        const Enclosure zl = eval(xl), zh = eval(xh);
        const int sl = zl.definite_sign(), sh = zh.definite_sign();
        if (sl != 0 && sh != 0 && sl != sh) {
          a = xl;
          b = xh;
          fa = zl.to_double();
          fb = zh.to_double();
          if (sgn(fa) != sl) fa = sl * 1e-300;
          if (sgn(fb) != sh) fb = sh * 1e-300;
          have = true;
          break;
        }
      }
    }
  }
  if (!have) {
    const Enclosure za = eval(a), zb = eval(b);
    const int sa = za.definite_sign(), sb = zb.definite_sign();
    if (sa == 0 || sb == 0 || sa == sb) {
      throw RefinementError("no certified sign change on bracket " + bracket_name(lo_in, hi_in));
    }
    fa = za.to_double();
    fb = zb.to_double();
    if (sgn(fa) != sa) fa = sa * 1e-300;
    if (sgn(fb) != sb) fb = sb * 1e-300;
  }
  const int sign_a = sgn(fa);

  int side = 0;  // Illinois bookkeeping: which end moved last
  bool tight = false;
  for (int iter = 0; iter < 300; ++iter) {
    const double width = diff(b, a);
    if (width <= done_width) return Enclosure::from_bounds(a, b, p);
    double step = width * fa / (fa - fb);
    if (!(step > 0 && step < width) || iter >= 60) step = 0.5 * width;
    const Real x = add(a, step, p);

    if (tight || width <= 4 * rho) {
      // Try to close the bracket to [x - rho, x + rho].
      tight = false;
      Real xl = add(x, -rho, p), xh = add(x, rho, p);
      bool moved = false;
      if (xl > a) {
        const Enclosure z = eval(xl);
        if (const int s = z.definite_sign(); s != 0) {
          moved = true;
          if (s == sign_a) {
            a = xl;
            fa = sgn(z.to_double()) == s ? z.to_double() : s * 1e-300;
          } else {
            b = xl;
            fb = sgn(z.to_double()) == s ? z.to_double() : s * 1e-300;
          }
        }
      }
      if (xh < b && xh > a) {
        const Enclosure z = eval(xh);
        if (const int s = z.definite_sign(); s != 0) {
          moved = true;
          if (s == sign_a) {
            a = xh;
            fa = sgn(z.to_double()) == s ? z.to_double() : s * 1e-300;
          } else {
            b = xh;
            fb = sgn(z.to_double()) == s ? z.to_double() : s * 1e-300;
          }
        }
      }
      if (!moved) {
        throw RefinementError("cannot resolve the sign of Z near the zero in bracket " +
                              bracket_name(lo_in, hi_in) + " at " + std::to_string(p) + " bits");
      }
      side = 0;
      continue;
    }

    const Enclosure z = eval(x);
    const int s = z.definite_sign();
    if (s == 0) {
      tight = true;
      continue;
    }
    const double fx = sgn(z.to_double()) == s ? z.to_double() : s * 1e-300;
    const double slope = (fb - fa) / width;
    if (s == sign_a) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    // Predicted distance from x to the root.
    if (std::abs(fx / slope) < 0.25 * rho) tight = true;
  }
  throw RefinementError("refinement did not converge on bracket " + bracket_name(lo_in, hi_in));
}

std::vector<Enclosure> locate_and_refine(double t_lo, double t_hi, const SearchOptions& options) {
  if (!(t_lo > 2.0) || !(t_hi > t_lo)) throw DomainError("locate_and_refine: need 2 < t_lo < t_hi");
  if (!(options.target_radius > 0)) throw DomainError("locate_and_refine: target radius must be positive");
  Grid g = build_grid(t_lo, t_hi, std::max(1, options.samples_per_gram_interval));
  g.z.assign(g.t.size(), 0.0);
  parallel_for(g.t.size(), options.workers, [&](std::size_t i) { g.z[i] = scan_value(g.t[i]); });
  for (std::size_t i = 1; i < g.t.size(); ++i) {
    if (!(g.t[i] > g.t[i - 1])) throw RefinementError("scan grid collapsed near t = " + std::to_string(g.t[i]));
  }
  const std::vector<Bracket> brackets = find_brackets(g, options.max_subdivision_depth);
  std::vector<Enclosure> out(brackets.size());
  parallel_for(brackets.size(), options.workers, [&](std::size_t i) {
    const Enclosure e = refine_zero(Real(options.precision, brackets[i].lo),
                                    Real(options.precision, brackets[i].hi), options);
    out[i] = make_ordinate(0, e).gamma;
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].lower() > out[i - 1].upper())) {
      throw RefinementError("overlapping zero enclosures near t = " + out[i].to_string(15));
    }
  }
  return out;
}

std::vector<Enclosure> locate_and_refine(double t_lo, double t_hi, double target_radius) {
  SearchOptions options;
  options.target_radius = target_radius;
  return locate_and_refine(t_lo, t_hi, options);
}

double approximate_height_for_count(double n) {
  const double two_pi = 2 * std::numbers::pi;
  auto big_l = [&](double t) { return t / two_pi * (std::log(t / two_pi) - 1) + 0.875; };
  double lo = two_pi, hi = two_pi * std::exp(1.0) * 2;
  while (big_l(hi) < n) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (big_l(mid) < n ? lo : hi) = mid;
  }
  return hi;
}

namespace {

class Builder {
 public:
  explicit Builder(const BuildOptions& options) : opt_(options) {}

  // Extends the located zeros so that the search covers (kStart, top].
  void search_to(double top) {
    if (top <= top_) return;
    note("locating zeros in (" + std::to_string(top_) + ", " + std::to_string(top) + "]");
    auto more = locate_and_refine(top_, top, opt_.search);
    if (!zeros_.empty() && !more.empty() && !(more.front().lower() > zeros_.back().upper())) {
      throw RefinementError("overlapping enclosures at a search boundary");
    }
    zeros_.insert(zeros_.end(), more.begin(), more.end());
    top_ = top;
    note(std::to_string(zeros_.size()) + " zeros located");
  }

  std::vector<Enclosure>& zeros() { return zeros_; }
  double top() const { return top_; }

  BuildResult finish(const Enclosure& T) {
    const double w0 = opt_.certify.initial_window;
    const double w_max = w0 * std::ldexp(1.0, opt_.certify.max_doublings);
    search_to(T.upper_double() + w0 + 2);
    BuildResult res;
    std::optional<CompletenessCertificate> cert;
    try {
      cert = certify_range(zeros_, T, top_, opt_.certify);
    } catch (const CertificationError& e) {
      note(std::string(e.what()) + "; extending the search");
      search_to(T.upper_double() + w_max + 2);
      try {
        cert = certify_range(zeros_, T, top_, opt_.certify);
      } catch (const CertificationError& e2) {
        res.certification_error = e2.what();
      }
    }
    const Real top = T.upper();
    for (const auto& z : zeros_) {
      if (!(z.upper() <= top)) break;
      res.table.zeros.push_back(make_ordinate(static_cast<long>(res.table.zeros.size()) + 1, z));
    }
    res.table.certificate = cert;
    res.table.source.generator = "hzeta " + std::string(kVersion);
    res.table.source.precision_bits = opt_.search.precision;
    res.table.source.target_radius = opt_.search.target_radius;
    return res;
  }

 private:
  static constexpr const char* kVersion = "1.0.0";
  static constexpr double kStart = 10.0;

  void note(const std::string& s) {
    if (opt_.progress) opt_.progress(s);
  }

  const BuildOptions& opt_;
  std::vector<Enclosure> zeros_;
  double top_ = kStart;
};

}  // namespace

BuildResult build_zero_table_by_count(long n, const BuildOptions& options) {
  if (n <= 0) throw DomainError("zero count must be positive");
  Builder b(options);
  const double guess = approximate_height_for_count(static_cast<double>(n) + 0.5);
  b.search_to(guess + options.certify.initial_window + 5);
  while (b.zeros().size() < static_cast<std::size_t>(n) + 1) {
    b.search_to(b.top() + 30 + 0.01 * b.top());
  }
  const auto& zs = b.zeros();
  const mpfr_prec_t p = options.search.precision;
  Real T(p);
  mpfr_add(T.get(), zs[n - 1].upper().get(), zs[n].lower().get(), MPFR_RNDN);
  mpfr_div_2ui(T.get(), T.get(), 1, MPFR_RNDN);
  return b.finish(Enclosure::exact(T, p));
}

BuildResult build_zero_table_by_height(double height, const BuildOptions& options) {
  if (!(height >= 2 * std::numbers::pi)) throw DomainError("height must be at least 2 pi");
  Builder b(options);
  b.search_to(height + options.certify.initial_window + 5);
  const mpfr_prec_t p = options.search.precision;
  Real T(p, height);
  // Move T past an enclosure that happens to contain it.
  for (const auto& z : b.zeros()) {
    if (z.lower() <= T && T < z.upper()) T = z.upper();
  }
  return b.finish(Enclosure::exact(T, p));
}

}  // namespace hzeta
