#include "detail/bernoulli.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hzeta::detail {
namespace {

// Akiyama-Tanigawa over exact rationals; returns B_0..B_n (B_1 = +1/2).
std::vector<mpq_class> bernoulli_table(int n) {
  std::vector<mpq_class> a(n + 1);
  std::vector<mpq_class> out(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (int j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out[m] = a[0];
  }
  return out;
}

}  // namespace

const mpq_class& bernoulli_even(int k) {
  static std::mutex mu;
  // deque: push_back never invalidates references handed out earlier.
  static std::deque<mpq_class> cache;
  if (k < 0) throw std::invalid_argument("bernoulli_even: negative index");
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(cache.size()) <= k) {
    const int kmax = std::max(k, 2 * static_cast<int>(cache.size()) + 32);
    auto table = bernoulli_table(2 * kmax);
    for (int j = static_cast<int>(cache.size()); j <= kmax; ++j) cache.push_back(table[2 * j]);
  }
  return cache[k];
}

}  // namespace hzeta::detail
