// Copyright 2026 The ftsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ftsim/stats.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace ftsim {

Distribution Summarize(std::span<const std::uint64_t> values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize an empty sample");
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (auto v : sorted) sum += static_cast<double>(v);

  Distribution d;
  d.count = sorted.size();
  d.min = static_cast<double>(sorted.front());
  d.max = static_cast<double>(sorted.back());
  d.mean = sum / static_cast<double>(sorted.size());
  const auto mid = sorted.size() / 2;
  d.median = sorted.size() % 2 == 1
                 ? static_cast<double>(sorted[mid])
                 : (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;
  return d;
}

std::map<std::uint64_t, std::uint64_t> Histogram(std::span<const std::uint64_t> values) {
  std::map<std::uint64_t, std::uint64_t> bins;
  for (auto v : values) ++bins[v];
  return bins;
}

std::map<std::uint64_t, std::uint64_t> Log2Histogram(std::span<const std::uint64_t> values) {
  std::map<std::uint64_t, std::uint64_t> bins;
  for (auto v : values) ++bins[v == 0 ? 0 : std::bit_floor(v)];
  return bins;
}

}  // namespace ftsim
