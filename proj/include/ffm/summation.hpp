// Copyright 2026 The ffm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file summation.hpp
 * @brief Compensated summation.
 */

#pragma once

#include <cmath>

namespace ffm {

/// Neumaier's variant of Kahan summation; exact for the order-independent
/// part up to one rounding of the final sum.
class KahanSum {
 public:
  KahanSum() = default;
  KahanSum(double sum, double comp) : sum_(sum), comp_(comp) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  /// Merges another accumulator, keeping both compensation terms.
  void merge(const KahanSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }
  double raw_sum() const noexcept { return sum_; }
  double compensation() const noexcept { return comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ffm
