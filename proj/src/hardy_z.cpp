#include "hzeta/hardy_z.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "detail/bernoulli.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {
namespace {

// Gabcke: with C_0..C_4 included, |R_4(t)| <= 0.017 t^(-11/4) for t >= 200.
constexpr const char* kGabckeD4 = "0.017";

double up(const Real& x) { return x.to_double(MPFR_RNDU); }

Enclosure from_mpz(mpz_srcptr z, mpfr_prec_t p) {
  Real v(p);
  Real r(kRadiusPrecision);
  if (mpfr_set_z(v.get(), z, MPFR_RNDN) != 0) {
    mpfr_set_ui_2exp(r.get(), 1, mpfr_get_exp(v.get()) - p, MPFR_RNDU);
  }
  return Enclosure(std::move(v), std::move(r));
}

// Per-thread, per-precision cache of B_{2k} / (2k (2k-1)) (Stirling) and
// B_{2k} / (2k)! (Euler-Maclaurin).
class BernoulliCache {
 public:
  explicit BernoulliCache(mpfr_prec_t p) : precision_(p) {}

  const Enclosure& stirling(int k) {
    ensure(k);
    return stirling_[k];
  }
  const Enclosure& over_factorial(int k) {
    ensure(k);
    return over_factorial_[k];
  }

 private:
  void ensure(int k) {
    while (static_cast<int>(stirling_.size()) <= k) {
      const int j = static_cast<int>(stirling_.size());
      if (j == 0) {
        stirling_.push_back(Enclosure::exact(0L, precision_));
        over_factorial_.push_back(Enclosure::exact(1L, precision_));
        factorial_ = Enclosure::exact(1L, precision_);
        continue;
      }
      const mpq_class& b = detail::bernoulli_even(j);
      const Enclosure bj =
          from_mpz(b.get_num_mpz_t(), precision_) / from_mpz(b.get_den_mpz_t(), precision_);
      stirling_.push_back(bj / (static_cast<long>(2 * j) * static_cast<long>(2 * j - 1)));
      factorial_ = factorial_ * static_cast<long>(2 * j - 1) * static_cast<long>(2 * j);
      over_factorial_.push_back(bj / factorial_);
    }
  }

  mpfr_prec_t precision_;
  std::vector<Enclosure> stirling_;
  std::vector<Enclosure> over_factorial_;
  Enclosure factorial_;
};

BernoulliCache& bernoulli_cache(mpfr_prec_t p) {
  thread_local std::map<mpfr_prec_t, BernoulliCache> caches;
  return caches.try_emplace(p, p).first->second;
}

// log n and n^(-1/2) for n = 1..size, per thread and precision.
class TermTable {
 public:
  explicit TermTable(mpfr_prec_t p) : precision_(p) {}

  void ensure(long n) {
    while (static_cast<long>(log_.size()) < n) {
      const long k = static_cast<long>(log_.size()) + 1;
      Enclosure kk = Enclosure::exact(k, precision_);
      Enclosure l = log(kk);
      Enclosure w = Enclosure::exact(1L, precision_) / sqrt(kk);
      log_rad_ = std::max(log_rad_, up(l.radius()));
      w_rad_ = std::max(w_rad_, up(w.radius()));
      log_.push_back(l.midpoint());
      inv_sqrt_.push_back(w.midpoint());
    }
  }

  const Real& log_mid(long n) const { return log_[n - 1]; }
  const Real& inv_sqrt_mid(long n) const { return inv_sqrt_[n - 1]; }
  double log_radius() const { return log_rad_; }
  double inv_sqrt_radius() const { return w_rad_; }

 private:
  mpfr_prec_t precision_;
  std::vector<Real> log_;
  std::vector<Real> inv_sqrt_;
  double log_rad_ = 0.0;
  double w_rad_ = 0.0;
};

TermTable& term_table(mpfr_prec_t p, long n) {
  thread_local std::map<mpfr_prec_t, TermTable> tables;
  auto it = tables.try_emplace(p, p).first;
  it->second.ensure(n);
  return it->second;
}

struct TrigSums {
  Enclosure cos_sum;
  Enclosure sin_sum;
};

// sum_{n=first}^{last} n^(-1/2) cos(phase0 - t log n) and the matching sine
// sum, evaluated on raw midpoints with an a-priori error bound:
//   phase error   <= e_theta + t e_log + 2.1 u (|phase0| + t log last + 1)
//   per term      <= w_n (phase error + 2u) + e_w
//   summation     <= count * u * W,  W = sum w_n <= 2 sqrt(last) + 1
// with u = 2^(1-p).
TrigSums trig_sums(const Real& t, const Enclosure& phase0, long first, long last, bool want_sin,
                   mpfr_prec_t p) {
  const TermTable& table = term_table(p, last);
  Real cs(p), sn(p), acc_c(p), acc_s(p), phase(p), tl(p);
  for (long n = first; n <= last; ++n) {
    mpfr_mul(tl.get(), t.get(), table.log_mid(n).get(), MPFR_RNDN);
    mpfr_sub(phase.get(), phase0.midpoint().get(), tl.get(), MPFR_RNDN);
    if (want_sin) {
      mpfr_sin_cos(sn.get(), cs.get(), phase.get(), MPFR_RNDN);
      mpfr_mul(sn.get(), sn.get(), table.inv_sqrt_mid(n).get(), MPFR_RNDN);
      mpfr_add(acc_s.get(), acc_s.get(), sn.get(), MPFR_RNDN);
    } else {
      mpfr_cos(cs.get(), phase.get(), MPFR_RNDN);
    }
    mpfr_mul(cs.get(), cs.get(), table.inv_sqrt_mid(n).get(), MPFR_RNDN);
    mpfr_add(acc_c.get(), acc_c.get(), cs.get(), MPFR_RNDN);
  }
  const double u = std::ldexp(1.0, 1 - static_cast<int>(p));
  const double count = static_cast<double>(last - first + 1);
  const double tt = std::abs(t.to_double(MPFR_RNDU));
  const double lmax = std::log(static_cast<double>(last)) * 1.0000001 + 1e-300;
  const double weight = 2.0 * std::sqrt(static_cast<double>(last)) + 1.0;
  const double phase_err = up(phase0.radius()) + tt * table.log_radius() +
                           2.1 * u * (std::abs(phase0.midpoint().to_double()) + tt * lmax + 1.0);
  double err = weight * (phase_err + 2.0 * u + 1.01 * count * u) + count * table.inv_sqrt_radius();
  err = err * 1.01 + 1e-300;
  Real r(kRadiusPrecision, err);
  mpfr_nextabove(r.get());
  return TrigSums{Enclosure(acc_c, r), Enclosure(acc_s, r)};
}

struct Complex {
  Enclosure re;
  Enclosure im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Complex& a, const Enclosure& s) { return {a.re * s, a.im * s}; }
Complex operator/(const Complex& a, const Complex& b) {
  Enclosure den = sqr(b.re) + sqr(b.im);
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Enclosure abs_upper(const Complex& z) { return sqrt(sqr(z.re) + sqr(z.im)); }

void check_precision(const Real& t, mpfr_prec_t p) {
  const double td = t.to_double();
  const double need = std::ceil(std::log2(td * (std::log(td) + 1.0) + 2.0)) + 48.0;
  if (static_cast<double>(p) < need) {
    throw InsufficientPrecision("hardy_z: " + std::to_string(p) + " bits cannot resolve t = " +
                                std::to_string(td) + " (need " +
                                std::to_string(static_cast<long>(need)) + ")");
  }
}

// Euler-Maclaurin for zeta(1/2 + it), then Z = Re(e^{i theta} zeta).
Enclosure hardy_z_em(const Real& t, mpfr_prec_t p) {
  const double td = t.to_double();
  const Enclosure te = Enclosure::exact(t, p);
  const Enclosure half = Enclosure::rational(1, 2, p);
  const Complex s{half, te};
  const Enclosure theta = rs_theta(t, p);
  const double target = std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(p - 16, 140)));

  long n_cut = static_cast<long>(std::ceil((td + 80.0) / std::numbers::pi)) + 1;
  for (int attempt = 0; attempt < 8; ++attempt, n_cut *= 2) {
    TrigSums head = trig_sums(t, Enclosure::exact(0L, p), 1, n_cut - 1, true, p);
    Complex zeta{head.cos_sum, head.sin_sum};
    // n^{-s} = n^{-1/2} (cos(t log n) - i sin(t log n)); trig_sums uses phase -t log n.
    const Enclosure nn = Enclosure::exact(n_cut, p);
    const Enclosure ln = log(nn);
    const Enclosure phase = te * ln;
    const Enclosure rsqrt = Enclosure::exact(1L, p) / sqrt(nn);
    const Complex n_pow{rsqrt * cos(phase), -(rsqrt * sin(phase))};
    const Complex s_minus_1{half - 1L, te};
    zeta = zeta + (Complex{n_pow.re * n_cut, n_pow.im * n_cut} / s_minus_1);
    zeta = zeta + Complex{n_pow.re * half, n_pow.im * half};

    Complex fac{s.re / n_cut, s.im / n_cut};
    const Enclosure n_sq = sqr(nn);
    double prev_term = INFINITY;
    int rising = 0;
    bool done = false;
    for (int k = 1; k < 400; ++k) {
      if (k > 1) {
        const Complex a{s.re + static_cast<long>(2 * k - 3), s.im};
        const Complex b{s.re + static_cast<long>(2 * k - 2), s.im};
        fac = fac * a * b;
        fac = Complex{fac.re / n_sq, fac.im / n_sq};
      }
      const Complex term = (n_pow * fac) * bernoulli_cache(p).over_factorial(k);
      // Backlund: |R_{k-1}| <= |s + 2k - 1| / (sigma + 2k - 1) |T_k|
      const Complex shift{s.re + static_cast<long>(2 * k - 1), s.im};
      const Enclosure bound = abs_upper(shift) * abs_upper(term) / (half + static_cast<long>(2 * k - 1));
      const double b = bound.upper_double();
      if (b < target) {
        zeta.re = zeta.re.inflated(b);
        zeta.im = zeta.im.inflated(b);
        done = true;
        break;
      }
      rising = b > prev_term ? rising + 1 : 0;
      if (rising >= 3) break;
      prev_term = b;
      zeta = zeta + term;
    }
    if (!done) continue;
    return cos(theta) * zeta.re - sin(theta) * zeta.im;
  }
  throw InsufficientPrecision("hardy_z: Euler-Maclaurin tail did not converge");
}

// Taylor coefficients of Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) at p.
std::array<Enclosure, 13> psi_derivatives(const Enclosure& p, mpfr_prec_t wp) {
  constexpr int kOrder = 12;
  const Enclosure pe = p.with_precision(wp);
  const Enclosure two_pi = enc_const(EncConst::two_pi, wp);
  // cos(a0 + a1 h + a2 h^2)
  const Enclosure a0 = two_pi * (sqr(pe) - pe - Enclosure::rational(1, 16, wp));
  const Enclosure a1 = two_pi * (pe * 2L - 1L);
  const Enclosure a2 = two_pi;
  std::array<Enclosure, kOrder + 1> fc, fs, g, psi;
  fc[0] = cos(a0);
  fs[0] = sin(a0);
  for (int k = 1; k <= kOrder; ++k) {
    Enclosure c = -(a1 * fs[k - 1]);
    Enclosure s = a1 * fc[k - 1];
    if (k >= 2) {
      c = c - a2 * fs[k - 2] * 2L;
      s = s + a2 * fc[k - 2] * 2L;
    }
    fc[k] = c / static_cast<long>(k);
    fs[k] = s / static_cast<long>(k);
  }
  // cos(2 pi p + 2 pi h): coefficient k is (2pi)^k/k! cos(2 pi p + k pi/2).
  const Enclosure x = two_pi * pe;
  const Enclosure cx = cos(x);
  const Enclosure sx = sin(x);
  Enclosure scale = Enclosure::exact(1L, wp);
  for (int k = 0; k <= kOrder; ++k) {
    const Enclosure& base = (k % 2 == 0) ? cx : sx;
    const bool negate = (k % 4 == 1) || (k % 4 == 2);
    g[k] = negate ? -(base * scale) : base * scale;
    scale = scale * two_pi / static_cast<long>(k + 1);
  }
  if (g[0].contains_zero()) throw InsufficientPrecision("hardy_z: p too close to 1/4 or 3/4");
  for (int k = 0; k <= kOrder; ++k) {
    Enclosure acc = fc[k];
    for (int j = 1; j <= k; ++j) acc = acc - g[j] * psi[k - j];
    psi[k] = acc / g[0];
  }
  // Psi^(k) = k! psi_k
  Enclosure fact = Enclosure::exact(1L, wp);
  for (int k = 0; k <= kOrder; ++k) {
    if (k > 0) fact = fact * static_cast<long>(k);
    psi[k] = psi[k] * fact;
  }
  return psi;
}

// sum_{j<=4} C_j(p) w^j with p = frac(sqrt(t / 2pi)), w = sqrt(2 pi / t).
Enclosure rs_correction(const Real& t, long n_terms, mpfr_prec_t precision) {
  mpfr_prec_t wp = std::max<mpfr_prec_t>(256, precision + 128);
  Real limit(kRadiusPrecision);
  mpfr_set_ui_2exp(limit.get(), 1, -static_cast<mpfr_exp_t>(precision), MPFR_RNDD);
  for (;; wp *= 2) {
    try {
      const Enclosure te = Enclosure::exact(t, wp);
      const Enclosure two_pi = enc_const(EncConst::two_pi, wp);
      const Enclosure p = sqrt(te / two_pi) - n_terms;
      const Enclosure w = sqrt(two_pi / te);
      const auto d = psi_derivatives(p, wp);
      const Enclosure pi2 = sqr(enc_const(EncConst::pi, wp));
      const Enclosure pi4 = sqr(pi2);
      const Enclosure pi6 = pi4 * pi2;
      const Enclosure pi8 = sqr(pi4);
      const Enclosure c0 = d[0];
      const Enclosure c1 = -(d[3] / (pi2 * 96L));
      const Enclosure c2 = d[2] / (pi2 * 64L) + d[6] / (pi4 * 18432L);
      const Enclosure c3 = -(d[1] / (pi2 * 64L)) - d[5] / (pi4 * 3840L) - d[9] / (pi6 * 5308416L);
      const Enclosure c4 = d[0] / (pi2 * 128L) + d[4] * 19L / (pi4 * 24576L) +
                           d[8] * 11L / (pi6 * 5898240L) + d[12] / (pi8 * 2038431744L);
      Enclosure sum = c4;
      for (const Enclosure* c : {&c3, &c2, &c1, &c0}) sum = sum * w + *c;
      if (sum.radius() <= limit || wp >= 4096) return sum.with_precision(precision);
    } catch (const InsufficientPrecision&) {
      if (wp >= 4096) throw;
    }
  }
}

Enclosure hardy_z_rs(const Real& t, mpfr_prec_t p) {
  if (t.to_double() < kRiemannSiegelMinHeight) {
    throw DomainError("Riemann-Siegel remainder bound needs t >= 200");
  }
  const Enclosure te = Enclosure::exact(t, p);
  const Enclosure two_pi = enc_const(EncConst::two_pi, p);
  const Enclosure a = sqrt(te / two_pi);
  const double lo = std::floor(a.lower_double());
  const double hi = std::floor(a.upper_double());
  if (lo != hi) throw InsufficientPrecision("hardy_z: sqrt(t/2pi) straddles an integer");
  const long n_terms = static_cast<long>(lo);
  const Enclosure theta = rs_theta(t, p);
  const TrigSums main = trig_sums(t, theta, 1, n_terms, false, p);
  const Enclosure w = sqrt(two_pi / te);
  Enclosure corr = sqrt(w) * rs_correction(t, n_terms, p);
  if (n_terms % 2 == 0) corr = -corr;  // (-1)^(N-1)
  Enclosure z = main.cos_sum * 2L + corr;
  const Enclosure rem =
      exp(log(te) * Enclosure::rational(-11, 4, p)) * Enclosure::from_decimal(kGabckeD4, p);
  return z.inflated(rem.upper());
}

}  // namespace

Enclosure rs_theta(const Real& t, mpfr_prec_t p) {
  if (t.to_double() < 2.0) throw DomainError("rs_theta: t must be >= 2");
  const mpfr_prec_t wp = p + 16;
  const Enclosure te = Enclosure::exact(t, wp);
  const Enclosure b = te / 2L;
  // Shift z = 1/4 + it/2 right until |w| >= 40: log Gamma(z) = log Gamma(z + m) - sum log(z + j).
  const double bd = t.to_double() / 2.0;
  long m = 0;
  while (std::hypot(0.25 + static_cast<double>(m), bd) < 40.0) ++m;
  Enclosure shift_args = Enclosure::exact(0L, wp);
  for (long j = 0; j < m; ++j) {
    shift_args = shift_args + atan(b / (Enclosure::rational(1, 4, wp) + j));
  }
  const Enclosure a = Enclosure::rational(1, 4, wp) + m;
  const Enclosure phi = atan(b / a);  // arg w, in (0, pi/2)
  const Enclosure mod2 = sqr(a) + sqr(b);
  const Enclosure log_mod = log(mod2) / 2L;
  const Enclosure mod = sqrt(mod2);
  // Im[(w - 1/2) log w - w]
  Enclosure im = (a - Enclosure::rational(1, 2, wp)) * phi + b * log_mod - b;
  // Stirling terms B_{2k} / (2k (2k-1)) Im(w^{1-2k}) = -|w|^{1-2k} sin((2k-1) phi) * coef.
  const double target = std::ldexp(1.0, -static_cast<int>(wp));
  const Enclosure inv_mod2 = Enclosure::exact(1L, wp) / mod2;
  Enclosure power = Enclosure::exact(1L, wp) / mod;  // |w|^{-1}
  // sec^2(phi/2) < 2 because phi < pi/2; remainder after K terms is at most
  // |B_{2K+2}| / ((2K+2)(2K+1)|w|^{2K+1}) * 2^{K+1}.
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    const Enclosure& coef = bernoulli_cache(wp).stirling(k);
    im = im - coef * power * sin(phi * static_cast<long>(2 * k - 1));
    power = power * inv_mod2;
    const Enclosure next =
        abs(bernoulli_cache(wp).stirling(k + 1)) * power * Enclosure::exact(std::ldexp(1.0, k + 1), wp);
    if (next.upper_double() < target) {
      im = im.inflated(next.upper());
      converged = true;
      break;
    }
  }
  if (!converged) throw InsufficientPrecision("rs_theta: Stirling series did not converge");
  const Enclosure theta = im - shift_args - b * log(enc_const(EncConst::pi, wp));
  return theta.with_precision(p);
}

Enclosure rs_theta(const Enclosure& t, mpfr_prec_t p) {
  Enclosure v = rs_theta(t.midpoint(), p);
  if (t.is_exact()) return v;
  // |theta'(t)| <= |log(t/2pi)|/2 + 1/2 for t >= 2; bound with both endpoints.
  const double lo = std::max(t.lower_double(), 2.0);
  const double hi = t.upper_double();
  const double slope = 0.5 * std::max(std::abs(std::log(lo / (2 * std::numbers::pi))),
                                      std::abs(std::log(hi / (2 * std::numbers::pi)))) +
                       1.0;
  Real extra(kRadiusPrecision);
  mpfr_mul_d(extra.get(), t.radius().get(), slope, MPFR_RNDU);
  return v.inflated(extra);
}

Enclosure hardy_z(const Real& t, mpfr_prec_t precision, ZMethod method) {
  if (t.to_double() < 2.0) throw DomainError("hardy_z: t must be >= 2");
  check_precision(t, precision);
  switch (method) {
    case ZMethod::euler_maclaurin: return hardy_z_em(t, precision);
    case ZMethod::riemann_siegel: return hardy_z_rs(t, precision);
    case ZMethod::automatic: break;
  }
  if (t.to_double() < kRiemannSiegelMinHeight) return hardy_z_em(t, precision);
  try {
    Enclosure z = hardy_z_rs(t, precision);
    if (!z.contains_zero()) return z;
  } catch (const InsufficientPrecision&) {
  }
  return hardy_z_em(t, precision);
}

Enclosure hardy_z(double t, mpfr_prec_t precision, ZMethod method) {
  return hardy_z(Real(precision, t), precision, method);
}

Enclosure gram_point(long k, mpfr_prec_t precision) {
  if (k < -1) throw DomainError("gram_point: k must be >= -1");
  const mpfr_prec_t p = precision;
  const Enclosure target = enc_const(EncConst::pi, p + 32) * k;
  Real x(p, gram_point_fast(k));
  Real step(p);
  // Newton with theta'(t) ~ log(t / 2pi) / 2 (relative error O(t^-2)).
  for (int it = 0; it < 200; ++it) {
    const Enclosure f = rs_theta(x, p + 32) - target;
    const double slope = 0.5 * std::log(x.to_double() / (2 * std::numbers::pi));
    mpfr_div_d(step.get(), f.midpoint().get(), slope, MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    if (step.is_zero() ||
        mpfr_get_exp(step.get()) < mpfr_get_exp(x.get()) - static_cast<mpfr_exp_t>(p) + 4) {
      break;
    }
  }
  // theta is increasing for t > 7, and every g_k (k >= -1) exceeds 9.
  Real r(kRadiusPrecision);
  mpfr_set_ui_2exp(r.get(), 1, mpfr_get_exp(x.get()) - static_cast<mpfr_exp_t>(p) + 8, MPFR_RNDU);
  for (int attempt = 0; attempt < 40; ++attempt) {
    const Enclosure g(x, r);
    const Real lo = g.lower();
    const Real hi = g.upper();
    if (lo.to_double() > 7.0) {
      const Enclosure th_lo = rs_theta(lo, p + 32);
      const Enclosure th_hi = rs_theta(hi, p + 32);
      if (th_lo.upper() < target.lower() && th_hi.lower() > target.upper()) return g;
    }
    mpfr_mul_2ui(r.get(), r.get(), 2, MPFR_RNDU);
  }
  throw InsufficientPrecision("gram_point: could not isolate g_" + std::to_string(k));
}

double rs_theta_fast(double t) {
  if (t < 30.0) return rs_theta(Real(64, t), 64).to_double();
  const double pi = std::numbers::pi;
  return 0.5 * t * std::log(t / (2 * pi)) - 0.5 * t - pi / 8 + 1.0 / (48 * t) +
         7.0 / (5760 * t * t * t);
}

namespace {

double psi0(double p) {
  const double pi = std::numbers::pi;
  return std::cos(2 * pi * (p * p - p - 1.0 / 16)) / std::cos(2 * pi * p);
}

struct FastTable {
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
  void ensure(long n) {
    while (static_cast<long>(log_n.size()) < n) {
      const double k = static_cast<double>(log_n.size() + 1);
      log_n.push_back(std::log(k));
      inv_sqrt_n.push_back(1.0 / std::sqrt(k));
    }
  }
};

}  // namespace

double hardy_z_fast(double t) {
  if (t < kRiemannSiegelMinHeight) return hardy_z(t, 96, ZMethod::euler_maclaurin).to_double();
  thread_local FastTable table;
  const double pi = std::numbers::pi;
  const double a = std::sqrt(t / (2 * pi));
  const long n = static_cast<long>(a);
  const double p = a - static_cast<double>(n);
  table.ensure(n);
  const double theta = rs_theta_fast(t);
  double sum = 0.0;
  for (long k = 1; k <= n; ++k) {
    sum += table.inv_sqrt_n[k - 1] * std::cos(theta - t * table.log_n[k - 1]);
  }
  // Psi has removable singularities at p = 1/4 and 3/4.
  double c0;
  if (std::abs(std::cos(2 * pi * p)) < 1e-6) {
    c0 = 0.5 * (psi0(p - 1e-5) + psi0(p + 1e-5));
  } else {
    c0 = psi0(p);
  }
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return 2.0 * sum + sign * std::pow(2 * pi / t, 0.25) * c0;
}

double gram_point_fast(long k) {
  const double pi = std::numbers::pi;
  const double kk = static_cast<double>(k);
  double t = std::max(20.0, k > 1 ? 4 * pi * kk / std::log(kk) : 20.0);
  for (int it = 0; it < 200; ++it) {
    const double f = rs_theta_fast(t) - kk * pi;
    const double slope = 0.5 * std::log(t / (2 * pi));
    const double next = t - f / slope;
    if (std::abs(next - t) < 1e-13 * t) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

}  // namespace hzeta
