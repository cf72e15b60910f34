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

#ifndef FTSIM_STATS_HPP_
#define FTSIM_STATS_HPP_

#include <cstdint>
#include <map>
#include <span>

namespace ftsim {

struct Distribution {
  std::uint64_t count = 0;
  double min = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

// Throws std::invalid_argument on an empty sample.
Distribution Summarize(std::span<const std::uint64_t> values);

// Exact-value histogram.
std::map<std::uint64_t, std::uint64_t> Histogram(std::span<const std::uint64_t> values);

// Power-of-two bins keyed by lower bound: key 2^k counts values in
// [2^k, 2^(k+1)); key 0 counts zeros.
std::map<std::uint64_t, std::uint64_t> Log2Histogram(std::span<const std::uint64_t> values);

}  // namespace ftsim

#endif  // FTSIM_STATS_HPP_
