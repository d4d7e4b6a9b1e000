#pragma once

#include "stopred/bigint.hpp"

namespace stopred::detail {

// C(n, k), zero outside the combinatorial triangle (negative n or k included).
inline BigInt big_binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) here
  }
  return result;
}

}  // namespace stopred::detail
