// Copyright 2026 The hbcunify Authors. All Rights Reserved.
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

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "hasm_lines.hpp"
#include "hbcunify/error.hpp"
#include "hbcunify/hasm.hpp"

namespace hbcunify::hasm {

using detail::LineKind;

std::string_view to_string(OperandKind kind) {
  switch (kind) {
    case OperandKind::Register: return "register";
    case OperandKind::Integer: return "integer";
    case OperandKind::Double: return "double";
    case OperandKind::String: return "string";
    case OperandKind::StringRef: return "string-ref";
    case OperandKind::Label: return "label";
    case OperandKind::FunctionRef: return "function-ref";
  }
  return "?";
}

std::string_view to_string(Dialect dialect) {
  switch (dialect) {
    case Dialect::Canonical: return "canonical";
    case Dialect::Hbcdump: return "hbcdump";
    case Dialect::Tabbed: return "tabbed";
  }
  return "?";
}

std::optional<Dialect> dialect_from_string(std::string_view name) {
  if (name == "canonical") return Dialect::Canonical;
  if (name == "hbcdump") return Dialect::Hbcdump;
  if (name == "tabbed") return Dialect::Tabbed;
  return std::nullopt;
}

std::size_t Program::instruction_count() const {
  std::size_t n = 0;
  for (const auto& f : functions) {
    n += f.instructions.size();
  }
  return n;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

// `r12`, `L3`, `s7`.
bool prefixed_index(std::string_view tok, char prefix, std::int64_t& out) {
  if (tok.size() < 2 || tok.front() != prefix || !all_digits(tok.substr(1))) {
    return false;
  }
  auto [ptr, ec] =
      std::from_chars(tok.data() + 1, tok.data() + tok.size(), out);
  return ec == std::errc();
}

std::optional<std::string> decode_string(std::string_view body) {
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '"') {
      return std::nullopt;
    }
    if (c != '\\' || i + 1 == body.size()) {
      out.push_back(c);
      continue;
    }
    char e = body[++i];
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      default:
        out.push_back('\\');
        out.push_back(e);
    }
  }
  return out;
}

bool is_number_text(std::string_view s) {
  if (s == "NaN" || s == "Infinity" || s == "-Infinity") {
    return true;
  }
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    ++i;
  }
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
  }
  if (digits == 0) {
    return false;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      ++i;
    }
    std::size_t exp = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++exp;
    }
    if (exp == 0) {
      return false;
    }
  }
  return i == s.size();
}

std::optional<Operand> parse_operand(std::string_view tok) {
  Operand op;
  op.raw = std::string(tok);
  if (prefixed_index(tok, 'r', op.integer)) {
    op.kind = OperandKind::Register;
    return op;
  }
  if (prefixed_index(tok, 'L', op.integer)) {
    op.kind = OperandKind::Label;
    op.text = op.raw;
    return op;
  }
  if (prefixed_index(tok, 's', op.integer)) {
    op.kind = OperandKind::StringRef;
    return op;
  }
  std::string_view body = tok;
  if (body.ends_with("...")) {
    op.truncated = true;
    body.remove_suffix(3);
  }
  if (body.size() >= 2 && body.front() == '"' && body.back() == '"') {
    auto decoded = decode_string(body.substr(1, body.size() - 2));
    if (!decoded) {
      return std::nullopt;
    }
    op.kind = OperandKind::String;
    op.text = std::move(*decoded);
    return op;
  }
  if (!op.truncated) {
    std::string_view f = tok;
    if (f.starts_with("NC")) {
      f.remove_prefix(2);
    }
    if (f.starts_with("Function<")) {
      auto hash = f.rfind(">#");
      if (hash != std::string_view::npos && hash >= 9 &&
          all_digits(f.substr(hash + 2))) {
        op.kind = OperandKind::FunctionRef;
        op.text = std::string(f.substr(9, hash - 9));
        std::from_chars(f.data() + hash + 2, f.data() + f.size(), op.integer);
        return op;
      }
      return std::nullopt;
    }
  }
  if (!is_number_text(body)) {
    return std::nullopt;
  }
  bool integral = body.find_first_of(".eEIN") == std::string_view::npos;
  if (integral) {
    const char* begin = body.data() + (body.front() == '+' ? 1 : 0);
    auto [ptr, ec] =
        std::from_chars(begin, body.data() + body.size(), op.integer);
    if (ec == std::errc()) {
      op.kind = OperandKind::Integer;
      op.number = static_cast<double>(op.integer);
      return op;
    }
  }
  op.kind = OperandKind::Double;
  if (body == "NaN") {
    op.number = std::numeric_limits<double>::quiet_NaN();
  } else if (body == "Infinity") {
    op.number = std::numeric_limits<double>::infinity();
  } else if (body == "-Infinity") {
    op.number = -std::numeric_limits<double>::infinity();
  } else {
    op.number = std::strtod(std::string(body).c_str(), nullptr);
  }
  return op;
}

struct PendingJump {
  std::size_t function;
  std::string label;
  int line;
};

struct PendingStringRef {
  std::int64_t index;
  int line;
};

// `s3: "text"` or `s3[ASCII, 0..4]: "text"` inside STRING TABLE.
void maybe_string_entry(std::string_view t,
                        std::map<std::uint32_t, std::string>& table) {
  if (t.size() < 2 || t.front() != 's') {
    return;
  }
  std::size_t i = 1;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
    ++i;
  }
  if (i == 1) {
    return;
  }
  std::uint32_t index = 0;
  std::from_chars(t.data() + 1, t.data() + i, index);
  auto colon = t.find(':', i);
  if (colon == std::string_view::npos) {
    return;
  }
  auto value = detail::trim(t.substr(colon + 1));
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    if (auto decoded = decode_string(value.substr(1, value.size() - 2))) {
      table[index] = std::move(*decoded);
    }
  }
}

}  // namespace

Program parse_disassembly(std::string_view text) {
  Program program;
  program.dialect = detect_dialect(text);

  enum class Mode { Preamble, Section, Function };
  Mode mode = Mode::Preamble;
  std::string_view current_section;
  bool saw_file_header = false;
  std::vector<PendingJump> jumps;
  std::vector<PendingStringRef> string_refs;

  auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    auto line = lines[n];
    auto t = detail::trim(line);
    auto kind = detail::classify(line);

    switch (kind) {
      case LineKind::Blank:
      case LineKind::Comment:
      case LineKind::DebugOffset:
        continue;
      case LineKind::SectionHeader: {
        current_section = detail::section_name(t);
        if (current_section == "FILE HEADER") {
          saw_file_header = true;
        }
        mode = Mode::Section;
        program.sourceMeta += std::string(t) + "\n";
        continue;
      }
      case LineKind::FunctionHeader: {
        // Header-table entries look like block headers without the colon.
        if (mode == Mode::Section && !t.ends_with(':')) {
          break;
        }
        if (!saw_file_header) {
          throw Error(ErrorCode::MalformedHeader,
                      "function block before FILE HEADER section", line_no);
        }
        auto header = detail::parse_function_header(t);
        if (!header) {
          throw Error(ErrorCode::MalformedHeader,
                      "bad function header '" + std::string(t) + "'",
                      line_no);
        }
        Function fn;
        fn.id = static_cast<std::uint32_t>(program.functions.size());
        fn.declaredName = std::move(header->name);
        fn.paramCount = header->params;
        fn.registerCount = header->registers;
        fn.symbolCount = header->symbols;
        fn.line = line_no;
        program.functions.push_back(std::move(fn));
        mode = Mode::Function;
        continue;
      }
      default:
        break;
    }

    if (mode == Mode::Preamble) {
      throw Error(ErrorCode::MalformedHeader,
                  "missing FILE HEADER section before '" + std::string(t) +
                      "'",
                  line_no);
    }
    if (mode == Mode::Section) {
      if (current_section == "STRING TABLE&STORAGE") {
        maybe_string_entry(t, program.stringTable);
      }
      program.sourceMeta += std::string(t) + "\n";
      continue;
    }

    // Function body.
    auto& fn = program.functions.back();
    if (kind == LineKind::Label) {
      std::string label(t.substr(0, t.size() - 1));
      if (fn.labels.contains(label)) {
        throw Error(ErrorCode::DanglingLabel, "duplicate label " + label,
                    line_no);
      }
      fn.labels[label] = fn.instructions.size();
      continue;
    }
    if (kind != LineKind::Instruction) {
      throw Error(ErrorCode::MalformedHeader,
                  "unrecognized line in function body '" + std::string(t) +
                      "'",
                  line_no);
    }
    auto split = detail::split_instruction(line);
    if (!split) {
      throw Error(ErrorCode::UnknownOperandShape,
                  "cannot split operands of '" + std::string(t) + "'",
                  line_no);
    }
    Instruction inst;
    inst.index = fn.instructions.size();
    inst.opcode = std::move(split->mnemonic);
    inst.line = line_no;
    for (const auto& tok : split->operands) {
      auto op = parse_operand(tok);
      if (!op) {
        throw Error(ErrorCode::UnknownOperandShape,
                    "operand '" + tok + "' matches no operand form", line_no);
      }
      switch (op->kind) {
        case OperandKind::Register:
          if (op->integer >= fn.registerCount) {
            throw Error(ErrorCode::RegisterOutOfRange,
                        "register " + op->raw + " outside frame of " +
                            std::to_string(fn.registerCount) + " registers",
                        line_no);
          }
          break;
        case OperandKind::Label:
          jumps.push_back({program.functions.size() - 1, op->raw, line_no});
          break;
        case OperandKind::StringRef:
          string_refs.push_back({op->integer, line_no});
          break;
        default:
          break;
      }
      inst.operands.push_back(std::move(*op));
    }
    fn.instructions.push_back(std::move(inst));
  }

  if (!saw_file_header) {
    throw Error(ErrorCode::MalformedHeader, "missing FILE HEADER section");
  }
  for (const auto& jump : jumps) {
    const auto& fn = program.functions[jump.function];
    auto it = fn.labels.find(jump.label);
    if (it == fn.labels.end()) {
      throw Error(ErrorCode::DanglingLabel,
                  "jump to undeclared label " + jump.label, jump.line);
    }
    if (it->second >= fn.instructions.size()) {
      throw Error(ErrorCode::DanglingLabel,
                  "label " + jump.label + " does not precede an instruction",
                  jump.line);
    }
  }
  for (const auto& ref : string_refs) {
    if (ref.index < 0 ||
        !program.stringTable.contains(static_cast<std::uint32_t>(ref.index))) {
      throw Error(ErrorCode::DanglingStringRef,
                  "string table has no entry s" + std::to_string(ref.index),
                  ref.line);
    }
  }
  return program;
}

}  // namespace hbcunify::hasm
