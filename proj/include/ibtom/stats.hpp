// Copyright 2026 The ibtom Authors. All rights reserved.
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

#ifndef IBTOM_STATS_HPP_
#define IBTOM_STATS_HPP_

#include <cstddef>
#include <span>

namespace ibtom {

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator; 0 when n == 1
  double se = 0.0;
  std::size_t n = 0;
};

// Throws InputError on empty input. Accumulates in index order.
Summary summarize(std::span<const double> values);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Normal-approximation 95% interval, mean +/- 1.96 se.
Interval ci95(const Summary& s);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
};

// Welch's unequal-variance t test of mean(a) - mean(b).
WelchResult welch_test(const Summary& a, const Summary& b);
WelchResult welch_test(std::span<const double> a, std::span<const double> b);

}  // namespace ibtom

#endif  // IBTOM_STATS_HPP_
