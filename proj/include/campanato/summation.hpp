#pragma once

#include <cstddef>
#include <span>

namespace campanato {

// Pairwise (cascade) summation in ascending index order. The split point is
// always floor(n/2), so power-of-two lengths split into exact halves; summing
// a sequence in which every element is repeated 2^k times gives exactly 2^k
// times the sum of the original sequence.
inline double pairwise_sum(std::span<const double> xs) noexcept {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n == 1) return xs[0];
  if (n == 2) return xs[0] + xs[1];
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace campanato
