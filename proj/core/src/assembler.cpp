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

#include "ftsim/assembler.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace ftsim {
namespace {

struct Statement {
  std::size_t line = 0;
  std::string head;
  std::vector<std::string> operands;
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool IsIdentifier(std::string_view s) {
  if (s.empty() || !IsIdentStart(s.front())) return false;
  for (char c : s) {
    if (!IsIdentChar(c)) return false;
  }
  return true;
}

class Assembler {
 public:
  Assembler(std::string name, unsigned registers) {
    program_.name = std::move(name);
    program_.registers = registers;
  }

  Program Run(std::string_view source) {
    if (program_.registers == 0 || program_.registers > kMaxRegisterCount) {
      throw AssemblyError(0, "register count must be in [1, " +
                                 std::to_string(kMaxRegisterCount) + "]");
    }
    Split(source);
    for (const auto& st : statements_) Emit(st);
    return std::move(program_);
  }

 private:
  // Pass one: strip comments, peel labels, record .equ constants and the
  // instruction index every label refers to.
  void Split(std::string_view source) {
    std::size_t line_no = 0;
    std::size_t index = 0;
    while (!source.empty()) {
      ++line_no;
      auto nl = source.find('\n');
      std::string_view line = source.substr(0, nl);
      source = nl == std::string_view::npos ? std::string_view{} : source.substr(nl + 1);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = Trim(line);

      while (!line.empty()) {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) break;
        auto label = Trim(line.substr(0, colon));
        if (!IsIdentifier(label)) break;
        if (labels_.count(std::string(label)) || equs_.count(std::string(label))) {
          throw AssemblyError(line_no, "duplicate label '" + std::string(label) + "'");
        }
        labels_.emplace(std::string(label), static_cast<std::uint32_t>(index));
        line = Trim(line.substr(colon + 1));
      }
      if (line.empty()) continue;

      Statement st;
      st.line = line_no;
      auto space = line.find_first_of(" \t");
      st.head = std::string(line.substr(0, space));
      if (space != std::string_view::npos) {
        std::string_view rest = Trim(line.substr(space));
        while (!rest.empty()) {
          auto comma = rest.find(',');
          auto tok = Trim(rest.substr(0, comma));
          if (tok.empty()) throw AssemblyError(line_no, "empty operand");
          st.operands.emplace_back(tok);
          if (comma == std::string_view::npos) break;
          rest = rest.substr(comma + 1);
          if (Trim(rest).empty()) throw AssemblyError(line_no, "trailing comma");
        }
      }

      if (st.head == ".equ") {
        if (st.operands.size() != 2 || !IsIdentifier(st.operands[0])) {
          throw AssemblyError(line_no, ".equ expects NAME, value");
        }
        if (equs_.count(st.operands[0]) || labels_.count(st.operands[0])) {
          throw AssemblyError(line_no, "duplicate name '" + st.operands[0] + "'");
        }
        equs_.emplace(st.operands[0], Immediate(st.operands[1], line_no));
        continue;
      }
      if (st.head.front() != '.') ++index;
      statements_.push_back(std::move(st));
    }
  }

  void Emit(const Statement& st) {
    if (st.head == ".data") {
      if (st.operands.size() < 2) throw AssemblyError(st.line, ".data expects addr, values...");
      auto addr = static_cast<std::uint64_t>(Immediate(st.operands[0], st.line));
      for (std::size_t i = 1; i < st.operands.size(); ++i) {
        program_.data_init[addr + i - 1] = static_cast<std::uint64_t>(Immediate(st.operands[i], st.line));
      }
      return;
    }
    if (st.head == ".output") {
      Expect(st, 2);
      auto base = Immediate(st.operands[0], st.line);
      auto len = Immediate(st.operands[1], st.line);
      if (base < 0 || len < 0) throw AssemblyError(st.line, ".output range must be non-negative");
      program_.output = {static_cast<std::uint64_t>(base), static_cast<std::uint64_t>(len)};
      return;
    }
    if (st.head.front() == '.') throw AssemblyError(st.line, "unknown directive '" + st.head + "'");

    auto op = ParseMnemonic(st.head);
    if (!op) throw AssemblyError(st.line, "unknown opcode '" + st.head + "'");

    Instruction ins;
    ins.op = *op;
    if (IsAluBinary(*op)) {
      Expect(st, 3);
      ins.dst = Register(st.operands[0], st.line);
      ins.src1 = Register(st.operands[1], st.line);
      Operand2(ins, st.operands[2], st.line);
    } else if (*op == Opcode::kLoadi) {
      Expect(st, 2);
      ins.dst = Register(st.operands[0], st.line);
      ins.imm = Immediate(st.operands[1], st.line);
      ins.src2_is_imm = true;
    } else if (*op == Opcode::kLoad || *op == Opcode::kStore) {
      if (st.operands.size() != 2 && st.operands.size() != 3) {
        throw AssemblyError(st.line, std::string(Mnemonic(*op)) + " expects 2 or 3 operands");
      }
      auto first = Register(st.operands[0], st.line);
      if (*op == Opcode::kLoad) {
        ins.dst = first;
      } else {
        ins.src2 = first;
      }
      ins.src1 = Register(st.operands[1], st.line);
      ins.imm = st.operands.size() == 3 ? Immediate(st.operands[2], st.line) : 0;
    } else if (IsBranch(*op)) {
      Expect(st, 3);
      ins.src1 = Register(st.operands[0], st.line);
      Operand2(ins, st.operands[1], st.line);
      ins.target = Label(st.operands[2], st.line);
    } else if (*op == Opcode::kJump) {
      Expect(st, 1);
      ins.target = Label(st.operands[0], st.line);
    } else {
      Expect(st, 0);
    }
    program_.code.push_back(ins);
  }

  static void Expect(const Statement& st, std::size_t n) {
    if (st.operands.size() != n) {
      throw AssemblyError(st.line, st.head + " expects " + std::to_string(n) + " operand(s), got " +
                                       std::to_string(st.operands.size()));
    }
  }

  static bool LooksLikeRegister(std::string_view tok) {
    return tok.size() >= 2 && (tok[0] == 'r' || tok[0] == 'R') &&
           std::isdigit(static_cast<unsigned char>(tok[1]));
  }

  std::uint8_t Register(std::string_view tok, std::size_t line) const {
    if (!LooksLikeRegister(tok)) throw AssemblyError(line, "expected register, got '" + std::string(tok) + "'");
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw AssemblyError(line, "malformed register '" + std::string(tok) + "'");
    }
    if (value >= program_.registers) {
      throw AssemblyError(line, "register '" + std::string(tok) + "' out of range (R=" +
                                    std::to_string(program_.registers) + ")");
    }
    return static_cast<std::uint8_t>(value);
  }

  void Operand2(Instruction& ins, std::string_view tok, std::size_t line) const {
    if (LooksLikeRegister(tok)) {
      ins.src2 = Register(tok, line);
    } else {
      ins.src2_is_imm = true;
      ins.imm = Immediate(tok, line);
    }
  }

  std::int64_t Immediate(std::string_view tok, std::size_t line) const {
    bool negative = false;
    std::string_view body = tok;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    if (body.empty()) throw AssemblyError(line, "empty immediate");
    std::uint64_t magnitude = 0;
    if (std::isdigit(static_cast<unsigned char>(body.front()))) {
      int base = 10;
      if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        base = 16;
        body.remove_prefix(2);
      }
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), magnitude, base);
      if (ec != std::errc{} || ptr != body.data() + body.size()) {
        throw AssemblyError(line, "malformed immediate '" + std::string(tok) + "'");
      }
    } else if (auto it = equs_.find(std::string(body)); it != equs_.end()) {
      magnitude = static_cast<std::uint64_t>(it->second);
    } else {
      throw AssemblyError(line, "undefined constant '" + std::string(body) + "'");
    }
    return static_cast<std::int64_t>(negative ? ~magnitude + 1 : magnitude);
  }

  std::uint32_t Label(const std::string& tok, std::size_t line) const {
    auto it = labels_.find(tok);
    if (it == labels_.end()) throw AssemblyError(line, "undefined label '" + tok + "'");
    return it->second;
  }

  Program program_;
  std::vector<Statement> statements_;
  std::unordered_map<std::string, std::uint32_t> labels_;
  std::unordered_map<std::string, std::int64_t> equs_;
};

}  // namespace

AssemblyError::AssemblyError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

Program Assemble(std::string_view source, std::string name, unsigned registers) {
  return Assembler(std::move(name), registers).Run(source);
}

Program AssembleFile(const std::filesystem::path& path, unsigned registers) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return Assemble(text.str(), path.stem().string(), registers);
}

}  // namespace ftsim
