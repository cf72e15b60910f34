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

#include "ftsim/fault.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/normal.hpp>

namespace ftsim {
namespace {

template <typename T>
T ParseNumber(std::string_view text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view ToString(FaultKind kind) {
  switch (kind) {
    case FaultKind::kTransientFlip: return "transient";
    case FaultKind::kStuckAt0: return "sa0";
    case FaultKind::kStuckAt1: return "sa1";
  }
  return "unknown";
}

std::optional<FaultKind> ParseFaultKind(std::string_view text) {
  if (text == "transient" || text == "flip") return FaultKind::kTransientFlip;
  if (text == "sa0" || text == "stuck_at_0") return FaultKind::kStuckAt0;
  if (text == "sa1" || text == "stuck_at_1") return FaultKind::kStuckAt1;
  return std::nullopt;
}

FaultSpec ParseFaultSpec(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    auto colon = text.find(':');
    parts.push_back(text.substr(0, colon));
    if (colon == std::string_view::npos) break;
    text.remove_prefix(colon + 1);
  }
  if (parts.size() != 4) {
    throw std::invalid_argument("fault must look like kind:rN:bit:cycle");
  }
  FaultSpec spec;
  auto kind = ParseFaultKind(parts[0]);
  if (!kind) throw std::invalid_argument("unknown fault kind '" + std::string(parts[0]) + "'");
  spec.kind = *kind;
  auto reg = parts[1];
  if (!reg.empty() && (reg.front() == 'r' || reg.front() == 'R')) reg.remove_prefix(1);
  spec.reg = ParseNumber<unsigned>(reg, "register");
  spec.bit = ParseNumber<unsigned>(parts[2], "bit");
  if (spec.bit >= 64) throw std::invalid_argument("fault bit must be < 64");
  spec.inject_cycle = ParseNumber<std::uint64_t>(parts[3], "cycle");
  return spec;
}

std::string FormatFaultSpec(const FaultSpec& spec) {
  return std::string(ToString(spec.kind)) + ":r" + std::to_string(spec.reg) + ":" +
         std::to_string(spec.bit) + ":" + std::to_string(spec.inject_cycle);
}

bool FaultActive(const FaultState& state, std::uint64_t cycle) {
  const auto& spec = state.spec();
  if (cycle < spec.inject_cycle) return false;
  if (spec.kind == FaultKind::kTransientFlip) return !state.overwritten();
  return true;
}

double MarginOfError(std::uint64_t n, double confidence, double p) {
  if (n == 0) throw std::domain_error("margin of error needs n >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::domain_error("confidence must be in (0, 1)");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("p must be in (0, 1)");
  const boost::math::normal_distribution<double> standard;
  const double z = boost::math::quantile(standard, 0.5 + confidence / 2.0);
  return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace ftsim
