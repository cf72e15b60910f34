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

#include "ftsim/memory.hpp"

#include <stdexcept>
#include <string>

namespace ftsim {

Memory::Memory(const Program& program, const MachineLimits& limits)
    : words_(limits.memory_words, 0) {
  if (program.output.end() > limits.memory_words || program.output.end() < program.output.base) {
    throw std::invalid_argument("output region [" + std::to_string(program.output.base) + ", " +
                                std::to_string(program.output.end()) +
                                ") exceeds memory of " + std::to_string(limits.memory_words) +
                                " words");
  }
  for (const auto& [addr, value] : program.data_init) {
    if (addr >= words_.size()) {
      throw std::invalid_argument("initial data at address " + std::to_string(addr) +
                                  " lies outside memory");
    }
    words_[addr] = value;
  }
}

MemAccess Memory::Load(std::uint64_t address) {
  if (address >= words_.size()) return MemAccess::Fail(CrashReason::kOutOfBoundsLoad);
  return MemAccess::Ok(words_[address]);
}

MemAccess Memory::CheckStore(std::uint64_t address, std::uint64_t) {
  if (address >= words_.size()) return MemAccess::Fail(CrashReason::kOutOfBoundsStore);
  return MemAccess::Ok(0);
}

void Memory::Store(std::uint64_t address, std::uint64_t value) {
  words_.at(address) = value;
}

std::vector<std::uint64_t> Memory::Slice(const AddressRange& range) const {
  return {words_.begin() + static_cast<std::ptrdiff_t>(range.base),
          words_.begin() + static_cast<std::ptrdiff_t>(range.end())};
}

std::vector<std::uint8_t> OutputBytes(std::span<const std::uint64_t> words) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(words.size() * 8);
  for (auto w : words) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(w >> (8 * i)));
  }
  return bytes;
}

std::vector<std::uint64_t> OutputWords(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 8 != 0) throw std::invalid_argument("output image is not a whole number of words");
  std::vector<std::uint64_t> words(bytes.size() / 8, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    words[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
  }
  return words;
}

}  // namespace ftsim
