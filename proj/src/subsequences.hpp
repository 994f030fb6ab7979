#ifndef PPCOMP_SRC_SUBSEQUENCES_HPP
#define PPCOMP_SRC_SUBSEQUENCES_HPP

#include <cstddef>
#include <vector>

namespace ppcomp::detail {

/// Increasing k-subsequences of 0..n-1 in lexicographic order.
inline std::vector<std::vector<std::size_t>> increasing_subsequences(
    std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace ppcomp::detail

#endif  // PPCOMP_SRC_SUBSEQUENCES_HPP
