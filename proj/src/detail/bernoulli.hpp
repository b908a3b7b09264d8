#ifndef HZETA_DETAIL_BERNOULLI_HPP
#define HZETA_DETAIL_BERNOULLI_HPP

#include <gmpxx.h>

namespace hzeta::detail {

// Exact B_{2k} (B_2 = 1/6, B_4 = -1/30, ...). Thread-safe; values are
// computed once and cached.
const mpq_class& bernoulli_even(int k);

}  // namespace hzeta::detail

#endif  // HZETA_DETAIL_BERNOULLI_HPP
