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

// Register-file fault model.
//
// A TransientFlip XORs one bit of the stored register value once, at the
// first cycle >= inject_cycle; the corruption lives until the register is
// next written. StuckAt0/StuckAt1 never touch the stored value: every read
// of the register at cycle >= inject_cycle sees the bit forced.

#ifndef FTSIM_FAULT_HPP_
#define FTSIM_FAULT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ftsim {

enum class FaultKind : std::uint8_t { kTransientFlip, kStuckAt0, kStuckAt1 };

std::string_view ToString(FaultKind kind);
std::optional<FaultKind> ParseFaultKind(std::string_view text);

constexpr bool IsPermanent(FaultKind kind) { return kind != FaultKind::kTransientFlip; }

struct FaultSpec {
  FaultKind kind = FaultKind::kTransientFlip;
  unsigned reg = 0;
  unsigned bit = 0;
  std::uint64_t inject_cycle = 0;
  std::uint64_t id = 0;

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

// Parses "kind:rN:bit:cycle" where kind is transient|sa0|sa1 (also the long
// names stuck_at_0 / stuck_at_1). Throws std::invalid_argument.
FaultSpec ParseFaultSpec(std::string_view text);
std::string FormatFaultSpec(const FaultSpec& spec);

// Per-machine fault bookkeeping. Owned by the core it corrupts.
class FaultState {
 public:
  explicit FaultState(const FaultSpec& spec) : spec_(spec) {}

  const FaultSpec& spec() const { return spec_; }
  bool fired() const { return fired_; }
  bool overwritten() const { return overwritten_; }
  std::uint64_t mutations() const { return mutations_; }
  std::optional<std::uint64_t> original() const { return original_; }
  std::optional<std::uint64_t> manifest_cycle() const { return manifest_cycle_; }

  // Start-of-cycle hook; applies a due transient flip to the register file.
  void Tick(std::uint64_t cycle, std::span<std::uint64_t> regs) {
    if (spec_.kind != FaultKind::kTransientFlip || fired_ || cycle < spec_.inject_cycle) return;
    original_ = regs[spec_.reg];
    regs[spec_.reg] ^= std::uint64_t{1} << spec_.bit;
    fired_ = true;
    ++mutations_;
  }

  // Value an instruction observes when reading `reg`, which stores `stored`.
  std::uint64_t Read(unsigned reg, std::uint64_t stored, std::uint64_t cycle) {
    if (reg != spec_.reg) return stored;
    std::uint64_t seen = Peek(reg, stored, cycle);
    if (!manifest_cycle_ && Corrupting(stored, seen)) manifest_cycle_ = cycle;
    return seen;
  }

  // Read() without manifestation bookkeeping (checkpoint capture, tracing).
  std::uint64_t Peek(unsigned reg, std::uint64_t stored, std::uint64_t cycle) const {
    if (reg != spec_.reg || cycle < spec_.inject_cycle) return stored;
    const std::uint64_t mask = std::uint64_t{1} << spec_.bit;
    switch (spec_.kind) {
      case FaultKind::kStuckAt0: return stored & ~mask;
      case FaultKind::kStuckAt1: return stored | mask;
      case FaultKind::kTransientFlip: return stored;
    }
    return stored;
  }

  void OnWrite(unsigned reg) {
    if (reg == spec_.reg && fired_) overwritten_ = true;
  }

 private:
  bool Corrupting(std::uint64_t stored, std::uint64_t seen) const {
    if (spec_.kind == FaultKind::kTransientFlip) return fired_ && !overwritten_;
    return stored != seen;
  }

  FaultSpec spec_;
  bool fired_ = false;
  bool overwritten_ = false;
  std::uint64_t mutations_ = 0;
  std::optional<std::uint64_t> original_;
  std::optional<std::uint64_t> manifest_cycle_;
};

// True iff the fault perturbs register reads at `cycle`.
bool FaultActive(const FaultState& state, std::uint64_t cycle);

// Two-sided normal margin z * sqrt(p(1-p)/n). Throws std::domain_error.
double MarginOfError(std::uint64_t n, double confidence = 0.95, double p = 0.5);

}  // namespace ftsim

#endif  // FTSIM_FAULT_HPP_
