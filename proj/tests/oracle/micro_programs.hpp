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

#ifndef FTSIM_TESTS_ORACLE_MICRO_PROGRAMS_HPP_
#define FTSIM_TESTS_ORACLE_MICRO_PROGRAMS_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace refsim {

inline constexpr std::uint64_t kMicroMemoryWords = 64;

struct MicroProgram {
  std::string_view name;
  std::string_view source;
};

// Each runs at most 40 dynamic instructions fault-free.
inline constexpr std::array<MicroProgram, 3> kMicroPrograms = {{
    {"array_sum", R"(
.data 8, 3, 5, 7, 11
.output 16, 1
        LOADI r1, 8
        LOADI r2, 4
        LOADI r3, 0
loop:   LOAD  r4, r1
        ADD   r3, r3, r4
        ADD   r1, r1, 1
        SUB   r2, r2, 1
        BNE   r2, 0, loop
        STORE r3, r0, 16
        HALT
)"},
    {"divmod", R"(
.data 0, 100, 7
.output 4, 2
        LOAD  r1, r0, 0
        LOAD  r2, r0, 1
        DIVU  r3, r1, r2
        MUL   r4, r3, r2
        SUB   r5, r1, r4
        SHL   r6, r5, 3
        XOR   r6, r6, r3
        BLT   r5, r2, ok
        LOADI r6, 0
ok:     STORE r3, r0, 4
        STORE r6, r0, 5
        HALT
)"},
    {"count_matches", R"(
.data 0, 4, 9, 4, 1, 4, 2
.output 8, 2
        LOADI r1, 0
        LOADI r2, 0
        LOADI r3, 4
loop:   BEQ   r1, 6, done
        LOAD  r4, r1, 0
        BNE   r4, r3, next
        ADD   r2, r2, 1
next:   ADD   r1, r1, 1
        JUMP  loop
done:   STORE r2, r0, 8
        STORE r1, r0, 9
        HALT
)"},
}};

}  // namespace refsim

#endif  // FTSIM_TESTS_ORACLE_MICRO_PROGRAMS_HPP_
