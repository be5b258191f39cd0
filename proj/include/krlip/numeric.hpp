#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace krlip {

/// Compensated sum taken in ascending order, so the result depends only on
/// the multiset of terms and not on the order they were produced in.
inline double ordered_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  double carry = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    carry += std::abs(sum) >= std::abs(t) ? (sum - next) + t : (t - next) + sum;
    sum = next;
  }
  return sum + carry;
}

}  // namespace krlip
