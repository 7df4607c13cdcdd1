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

#include <string>

#include "hasm_lines.hpp"
#include "hbcunify/error.hpp"
#include "hbcunify/hasm.hpp"

namespace hbcunify::hasm {

using detail::LineKind;

Dialect detect_dialect(std::string_view text) {
  bool in_function = false;
  bool tabbed = false;
  bool hbcdump = false;
  for (auto line : detail::split_lines(text)) {
    switch (detail::classify(line)) {
      case LineKind::SectionHeader:
        in_function = false;
        break;
      case LineKind::FunctionHeader:
        in_function = true;
        break;
      case LineKind::DebugOffset:
        hbcdump = true;
        break;
      case LineKind::Instruction:
        if (in_function) {
          if (auto split = detail::split_instruction(line)) {
            tabbed = tabbed || split->tabSeparated;
            hbcdump = hbcdump || split->columnAligned;
          }
        }
        break;
      default:
        break;
    }
  }
  if (tabbed) {
    return Dialect::Tabbed;
  }
  return hbcdump ? Dialect::Hbcdump : Dialect::Canonical;
}

std::string normalize_variant(std::string_view text,
                              std::optional<Dialect> hint) {
  enum class Mode { Preamble, Section, Function };
  Mode mode = Mode::Preamble;
  bool recognized_structure = false;
  std::string out;

  auto unsupported = [&](int line_no, std::string_view line) {
    throw Error(ErrorCode::UnsupportedVariant,
                "no dialect rule matches '" + std::string(line) + "'",
                line_no);
  };
  auto emit = [&](std::string_view line) {
    out.append(line);
    out.push_back('\n');
  };

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
      case LineKind::SectionHeader:
        mode = Mode::Section;
        recognized_structure = true;
        emit(t);
        continue;
      case LineKind::FunctionHeader:
        if (mode == Mode::Section && !t.ends_with(':')) {
          break;
        }
        if (auto header = detail::parse_function_header(t)) {
          mode = Mode::Function;
          recognized_structure = true;
          emit(detail::format_function_header(*header));
        } else if (hint) {
          emit(t);
        } else {
          unsupported(line_no, t);
        }
        continue;
      default:
        break;
    }

    if (mode == Mode::Preamble) {
      if (!hint) {
        unsupported(line_no, t);
      }
      emit(detail::rtrim(line));
      continue;
    }
    if (mode == Mode::Section) {
      emit(detail::rtrim(line));
      continue;
    }
    if (kind == LineKind::Label) {
      emit(t);
      continue;
    }
    if (kind == LineKind::Instruction) {
      // Operand errors are left for the parser to report with a position.
      auto split = detail::split_instruction(line);
      if (!split) {
        emit("  " + std::string(t));
        continue;
      }
      std::string canonical = "  " + split->mnemonic;
      for (std::size_t i = 0; i < split->operands.size(); ++i) {
        canonical += i == 0 ? " " : ", ";
        canonical += split->operands[i];
      }
      emit(canonical);
      continue;
    }
    if (!hint) {
      unsupported(line_no, t);
    }
    emit(detail::rtrim(line));
  }
  if (!recognized_structure && !hint) {
    throw Error(ErrorCode::UnsupportedVariant,
                "document has no section or function headers");
  }
  return out;
}

}  // namespace hbcunify::hasm
