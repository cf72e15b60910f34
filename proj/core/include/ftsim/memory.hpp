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

#ifndef FTSIM_MEMORY_HPP_
#define FTSIM_MEMORY_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ftsim/isa.hpp"

namespace ftsim {

struct MemAccess {
  bool ok = true;
  std::uint64_t value = 0;
  CrashReason reason = CrashReason::kNone;

  static MemAccess Ok(std::uint64_t v) { return {true, v, CrashReason::kNone}; }
  static MemAccess Fail(CrashReason r) { return {false, 0, r}; }
};

// The path a core's loads and stores take. Loads and store checks happen
// when an instruction issues; Store() is the architectural write at commit.
class MemoryPort {
 public:
  virtual ~MemoryPort() = default;

  virtual MemAccess Load(std::uint64_t address) = 0;
  virtual MemAccess CheckStore(std::uint64_t address, std::uint64_t value) = 0;
  virtual void Store(std::uint64_t address, std::uint64_t value) = 0;
};

// Flat word-addressed memory.
class Memory final : public MemoryPort {
 public:
  Memory(const Program& program, const MachineLimits& limits);

  MemAccess Load(std::uint64_t address) override;
  MemAccess CheckStore(std::uint64_t address, std::uint64_t value) override;
  void Store(std::uint64_t address, std::uint64_t value) override;

  std::span<const std::uint64_t> words() const { return words_; }
  std::vector<std::uint64_t> Slice(const AddressRange& range) const;

 private:
  std::vector<std::uint64_t> words_;
};

// Little-endian byte image of a run's output words, the golden fixture format.
std::vector<std::uint8_t> OutputBytes(std::span<const std::uint64_t> words);
std::vector<std::uint64_t> OutputWords(std::span<const std::uint8_t> bytes);

}  // namespace ftsim

#endif  // FTSIM_MEMORY_HPP_
