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

// Two-pass assembler for the ftsim toy ISA.
//
// Grammar (one statement per line, '#' starts a comment):
//
//   label:                         labels may share a line with a statement
//   ADD|SUB|MUL|DIVU|AND|OR|XOR|SHL|SHR  rd, rs1, rs2|imm
//   LOADI  rd, imm
//   LOAD   rd, rbase[, imm]        rd = mem[rbase + imm]
//   STORE  rv, rbase[, imm]        mem[rbase + imm] = rv
//   BEQ|BNE|BLT  rs1, rs2|imm, label   (BLT compares signed)
//   JUMP   label
//   HALT
//   .equ    NAME, value            named constant usable wherever imm is
//   .data   addr, v0, v1, ...      initial memory words starting at addr
//   .output addr, length           words whose final contents are the output
//
// Immediates are decimal, 0x-prefixed hex, or a .equ name; all may carry a
// leading '-'. Mnemonics are case-insensitive, registers are r0..r(R-1).

#ifndef FTSIM_ASSEMBLER_HPP_
#define FTSIM_ASSEMBLER_HPP_

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ftsim/isa.hpp"

namespace ftsim {

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(std::size_t line, const std::string& message);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Program Assemble(std::string_view source, std::string name = {},
                 unsigned registers = kDefaultRegisterCount);

// Reads and assembles a file; the program is named after the file stem.
Program AssembleFile(const std::filesystem::path& path,
                     unsigned registers = kDefaultRegisterCount);

}  // namespace ftsim

#endif  // FTSIM_ASSEMBLER_HPP_
