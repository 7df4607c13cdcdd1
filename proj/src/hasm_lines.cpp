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

#include "hasm_lines.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace hbcunify::hasm::detail {

namespace {

constexpr std::array<std::string_view, 4> kSections = {
    "FILE HEADER",
    "FUNCTION HEADER TABLE",
    "STRING TABLE&STORAGE",
    "Debug Information",
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_blank(char c) { return c == ' ' || c == '\t'; }

bool parse_u32(std::string_view s, std::uint32_t& out) {
  if (s.empty()) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Parses `<number> <word>` where word is `singular` or `singular`+"s".
bool parse_count(std::string_view s, std::string_view singular,
                 std::uint32_t& out) {
  s = trim(s);
  auto space = s.find(' ');
  if (space == std::string_view::npos) {
    return false;
  }
  auto word = trim(s.substr(space + 1));
  if (word != singular && !(word.size() == singular.size() + 1 &&
                            word.substr(0, singular.size()) == singular &&
                            word.back() == 's')) {
    return false;
  }
  return parse_u32(s.substr(0, space), out);
}

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_blank(s.front()) || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  return rtrim(s);
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (is_blank(s.back()) || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string_view section_name(std::string_view trimmed) {
  for (auto name : kSections) {
    if (trimmed.size() > name.size() && trimmed.substr(0, name.size()) == name &&
        trimmed[name.size()] == ':') {
      return name;
    }
  }
  return {};
}

LineKind classify(std::string_view line) {
  auto t = trim(line);
  if (t.empty()) {
    return LineKind::Blank;
  }
  if (t.starts_with("#") || t.starts_with("//")) {
    return LineKind::Comment;
  }
  if (!section_name(t).empty()) {
    return LineKind::SectionHeader;
  }
  if (t.starts_with("Function<") || t.starts_with("NCFunction<")) {
    return LineKind::FunctionHeader;
  }
  if (t.starts_with("Offset in debug table")) {
    return LineKind::DebugOffset;
  }
  if (t.size() >= 3 && t.front() == 'L' && t.back() == ':') {
    bool digits = true;
    for (char c : t.substr(1, t.size() - 2)) {
      digits = digits && std::isdigit(static_cast<unsigned char>(c));
    }
    if (digits) {
      return LineKind::Label;
    }
  }
  if (!line.empty() && is_blank(line.front()) && is_ident_start(t.front())) {
    std::size_t i = 0;
    while (i < t.size() && is_ident_char(t[i])) {
      ++i;
    }
    if (i == t.size() || is_blank(t[i])) {
      return LineKind::Instruction;
    }
  }
  return LineKind::Other;
}

std::optional<FunctionHeader> parse_function_header(std::string_view t) {
  std::string_view rest = t;
  if (rest.starts_with("NCFunction<")) {
    rest.remove_prefix(11);
  } else if (rest.starts_with("Function<")) {
    rest.remove_prefix(9);
  } else {
    return std::nullopt;
  }
  auto close = rest.rfind(">(");
  if (close == std::string_view::npos || !rest.ends_with("):")) {
    return std::nullopt;
  }
  FunctionHeader header;
  header.name = std::string(rest.substr(0, close));
  auto counts = rest.substr(close + 2, rest.size() - close - 4);
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = counts.find(',', start);
    parts.push_back(counts.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  if (parts.size() != 3 || !parse_count(parts[0], "param", header.params) ||
      !parse_count(parts[1], "register", header.registers) ||
      !parse_count(parts[2], "symbol", header.symbols)) {
    return std::nullopt;
  }
  return header;
}

std::optional<SplitInstruction> split_instruction(std::string_view line) {
  SplitInstruction out;
  auto t = trim(line);
  std::size_t i = 0;
  while (i < t.size() && is_ident_char(t[i])) {
    ++i;
  }
  out.mnemonic = std::string(t.substr(0, i));
  std::size_t gap = i;
  while (gap < t.size() && t[gap] == ' ') {
    ++gap;
  }
  out.columnAligned = gap - i >= 2;
  auto rest = t.substr(i);
  if (trim(rest).empty()) {
    return out;
  }

  // Comma-separated slots, each of which may hold tab-separated tokens.
  std::vector<std::string> slot_tokens;
  std::string current;
  bool in_quote = false;
  bool slot_has_token = false;
  bool any_comma = false;
  auto flush_token = [&] {
    auto tok = trim(current);
    if (!tok.empty()) {
      out.operands.emplace_back(tok);
      slot_has_token = true;
    }
    current.clear();
  };
  for (std::size_t k = 0; k < rest.size(); ++k) {
    char c = rest[k];
    if (in_quote) {
      current.push_back(c);
      if (c == '\\' && k + 1 < rest.size()) {
        current.push_back(rest[++k]);
      } else if (c == '"') {
        in_quote = false;
      }
      continue;
    }
    if (c == '"') {
      in_quote = true;
      current.push_back(c);
    } else if (c == '\t') {
      if (!trim(current).empty()) {
        out.tabSeparated = true;
      }
      flush_token();
    } else if (c == ',') {
      any_comma = true;
      flush_token();
      if (!slot_has_token) {
        return std::nullopt;
      }
      slot_has_token = false;
    } else {
      current.push_back(c);
    }
  }
  if (in_quote) {
    return std::nullopt;
  }
  flush_token();
  if (any_comma && !slot_has_token) {
    return std::nullopt;
  }
  if (out.operands.size() > 1 && !any_comma) {
    out.tabSeparated = true;
  }
  return out;
}

std::string format_function_header(const FunctionHeader& h) {
  return "Function<" + h.name + ">(" + std::to_string(h.params) + " params, " +
         std::to_string(h.registers) + " registers, " +
         std::to_string(h.symbols) + " symbols):";
}

}  // namespace hbcunify::hasm::detail
