#include "hzeta/estimator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hzeta/counting.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {
namespace {

constexpr std::size_t kFastChunk = 8192;

struct Span {
  std::size_t count = 0;     // ordinates at or below T
  bool boundary = false;     // the last of them has enclosure equal to T
  bool rigorous = true;
};

bool same(const Enclosure& a, const Enclosure& b) {
  return a.midpoint() == b.midpoint() && a.radius() == b.radius();
}

Span locate_height(const ZeroTable& table, const Enclosure& T, const EstimateOptions& options) {
  Span s;
  s.rigorous = table.is_certified();
  if (!s.rigorous && !options.allow_uncertified) {
    throw UncertifiedTableError("zero table is not certified; pass allow-uncertified to proceed");
  }
  if (const auto h = table.certified_height()) {
    const bool above = s.rigorous ? T.upper() > h->lower() : T.upper() > h->upper();
    if (above) {
      throw DomainError("height " + T.to_string(15) + " is above the certified height " + h->to_string(15));
    }
  } else if (!table.zeros.empty() && T.upper() > table.zeros.back().gamma.upper()) {
    throw DomainError("height " + T.to_string(15) + " is above the last ordinate");
  }
  const Real top = T.upper();
  const auto it = std::partition_point(table.zeros.begin(), table.zeros.end(),
                                       [&](const ZeroOrdinate& z) { return z.gamma.upper() <= top; });
  s.count = static_cast<std::size_t>(it - table.zeros.begin());
  if (it != table.zeros.end() && it->gamma.lower() <= top) {
    throw DomainError("height " + T.to_string(15) + " overlaps the enclosure of zero " + std::to_string(it->index));
  }
  if (s.count > 0) {
    const Enclosure& last = table.zeros[s.count - 1].gamma;
    if (same(last, T)) {
      s.boundary = true;
    } else if (last.upper() >= T.lower()) {
      throw DomainError("height " + T.to_string(15) + " overlaps the enclosure of zero " +
                        std::to_string(s.count));
    }
  }
  return s;
}

Enclosure reciprocal_sum(const ZeroTable& table, std::size_t count, mpfr_prec_t p) {
  const Enclosure one = Enclosure::exact(1L, p);
  Enclosure sum = Enclosure::exact(0L, p);
  for (std::size_t k = 0; k < count; ++k) sum = sum + one / table.zeros[k].gamma.with_precision(p);
  return sum;
}

long double fast_reciprocal_sum(const ZeroTable& table, std::size_t count, unsigned workers) {
  const std::size_t chunks = (count + kFastChunk - 1) / kFastChunk;
  std::vector<long double> partial(chunks, 0.0L);
  auto work = [&](std::size_t c) {
    long double s = 0.0L;
    const std::size_t end = std::min(count, (c + 1) * kFastChunk);
    for (std::size_t k = c * kFastChunk; k < end; ++k) {
      s += 1.0L / mpfr_get_ld(table.zeros[k].gamma.midpoint().get(), MPFR_RNDN);
    }
    partial[c] = s;
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(chunks, 1)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) work(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) work(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Partials are combined in chunk order whatever the worker count.
  return std::accumulate(partial.begin(), partial.end(), 0.0L);
}

Enclosure from_long_double(long double x, mpfr_prec_t p) {
  Real r(p);
  mpfr_set_ld(r.get(), x, MPFR_RNDN);
  return Enclosure(r, Real(kRadiusPrecision));
}

Enclosure four_pi(mpfr_prec_t p) { return enc_const(EncConst::pi, p) * 4; }

HEstimate finish(EstimateMethod method, const Enclosure& T, const Span& s, Enclosure value, double tail,
                 bool fast) {
  HEstimate e;
  e.method = method;
  e.T = T;
  e.n_zeros = static_cast<long>(s.count);
  e.value = std::move(value);
  e.tail_bound = tail;
  e.total = e.value.inflated(tail);
  e.rigorous = s.rigorous && !fast;
  return e;
}

}  // namespace

std::string to_string(EstimateMethod m) { return m == EstimateMethod::naive ? "naive" : "accelerated"; }

EstimateMethod estimate_method_from_string(const std::string& s) {
  if (s == "naive") return EstimateMethod::naive;
  if (s == "accelerated") return EstimateMethod::accelerated;
  throw std::invalid_argument("unknown method '" + s + "'");
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Enclosure height_at_zero(const ZeroTable& table, long n) {
  if (n <= 0 || static_cast<std::size_t>(n) > table.zeros.size()) {
    throw DomainError("zero index " + std::to_string(n) + " outside the table (" +
                      std::to_string(table.zeros.size()) + " zeros)");
  }
  return table.zeros[n - 1].gamma;
}

Enclosure g_sum(const ZeroTable& table, const Enclosure& T, const EstimateOptions& options) {
  const Span s = locate_height(table, T, options);
  if (options.fast) return from_long_double(fast_reciprocal_sum(table, s.count, options.workers), options.precision);
  return reciprocal_sum(table, s.count, options.precision);
}

HEstimate naive_estimate(const ZeroTable& table, const Enclosure& T, const EstimateOptions& options) {
  const mpfr_prec_t p = options.precision;
  const double tail = lehman_bound(T);
  const Span s = locate_height(table, T, options);
  const Enclosure t = T.with_precision(p);
  const Enclosure g = options.fast ? from_long_double(fast_reciprocal_sum(table, s.count, options.workers), p)
                                   : reciprocal_sum(table, s.count, p);
  const Enclosure value = g - sqr(log(t / enc_const(EncConst::two_pi, p))) / four_pi(p);
  return finish(EstimateMethod::naive, T, s, value, tail, options.fast);
}

HEstimate accelerated_estimate(const ZeroTable& table, const Enclosure& T, const EstimateOptions& options) {
  const mpfr_prec_t p = options.precision;
  const double tail = e2_bound(T);
  const Span s = locate_height(table, T, options);
  const Enclosure t = T.with_precision(p);
  // The term of an ordinate equal to T is exactly zero.
  const std::size_t m = s.boundary ? s.count - 1 : s.count;
  const Enclosure g = options.fast ? from_long_double(fast_reciprocal_sum(table, m, options.workers), p)
                                   : reciprocal_sum(table, m, p);
  const Enclosure inv_t = Enclosure::exact(1L, p) / t;
  const Enclosure sum = g - inv_t * static_cast<long>(m);
  const Enclosure value = sum - (sqr(log(t / enc_const(EncConst::two_pi_e, p))) + 1) / four_pi(p) +
                          inv_t * 7 / 8;
  return finish(EstimateMethod::accelerated, T, s, value, tail, options.fast);
}

HEstimate estimate(EstimateMethod method, const ZeroTable& table, const Enclosure& T,
                   const EstimateOptions& options) {
  return method == EstimateMethod::naive ? naive_estimate(table, T, options)
                                         : accelerated_estimate(table, T, options);
}

HEstimate hassani_shift(const HEstimate& est) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(est.value.precision(), kMinPrecision);
  const Enclosure shift = sqr(enc_const(EncConst::log_two_pi, p)) / four_pi(p);
  HEstimate out = est;
  out.value = est.value + shift;
  out.total = est.total + shift;
  out.hassani_shifted = true;
  return out;
}

std::vector<ButheSample> buthe_check(const ZeroTable& table, std::span<const double> heights,
                                     const EstimateOptions& options) {
  const mpfr_prec_t p = options.precision;
  const Enclosure lower_limit = enc_const(EncConst::two_pi_e, p) * 2;
  std::vector<ButheSample> out(heights.size());
  std::vector<std::size_t> order(heights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return heights[a] < heights[b]; });

  const Enclosure one = Enclosure::exact(1L, p);
  Enclosure running = Enclosure::exact(0L, p);
  std::size_t summed = 0;
  EstimateOptions rigorous = options;
  rigorous.fast = false;
  for (const std::size_t i : order) {
    ButheSample& r = out[i];
    r.T = heights[i];
    const Enclosure T = Enclosure::exact(heights[i], p);
    if (T.upper() < lower_limit.lower()) {
      throw DomainError("Buthe check needs T >= 4 pi e, got " + std::to_string(heights[i]));
    }
    Span s;
    try {
      s = locate_height(table, T, rigorous);
    } catch (const DomainError& e) {
      if (std::string(e.what()).find("overlaps") == std::string::npos) throw;
      r.status = CheckStatus::inconclusive;
      r.note = e.what();
      continue;
    }
    while (summed < s.count) running = running + one / table.zeros[summed++].gamma.with_precision(p);
    r.g = running;
    r.rhs = sqr(log(T / enc_const(EncConst::two_pi, p))) / four_pi(p);
    if (r.g.upper() <= r.rhs.lower()) {
      r.status = CheckStatus::pass;
    } else if (r.g.lower() > r.rhs.upper()) {
      r.status = CheckStatus::fail;
    } else {
      r.status = CheckStatus::inconclusive;
      r.note = "enclosures overlap";
    }
  }
  return out;
}

}  // namespace hzeta
