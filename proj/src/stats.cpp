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

#include "ibtom/stats.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "ibtom/errors.hpp"

namespace ibtom {

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot summarize an empty group");
  Summary s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.se = s.sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

Interval ci95(const Summary& s) { return {s.mean - 1.96 * s.se, s.mean + 1.96 * s.se}; }

WelchResult welch_test(const Summary& a, const Summary& b) {
  if (a.n < 2 || b.n < 2) throw InputError("welch test needs at least two samples per group");
  const double va = a.sd * a.sd / static_cast<double>(a.n);
  const double vb = b.sd * b.sd / static_cast<double>(b.n);
  WelchResult r;
  const double se = std::sqrt(va + vb);
  if (se == 0.0) {
    r.t = a.mean == b.mean ? 0.0 : std::copysign(INFINITY, a.mean - b.mean);
    r.df = static_cast<double>(a.n + b.n - 2);
    r.p_two_sided = a.mean == b.mean ? 1.0 : 0.0;
    return r;
  }
  r.t = (a.mean - b.mean) / se;
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(a.n - 1) + vb * vb / static_cast<double>(b.n - 1));
  boost::math::students_t dist(r.df);
  r.p_two_sided = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

WelchResult welch_test(std::span<const double> a, std::span<const double> b) {
  return welch_test(summarize(a), summarize(b));
}

}  // namespace ibtom
