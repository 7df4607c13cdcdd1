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

#pragma once

// Line classification shared by the parser and the dialect normalizer.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hbcunify::hasm::detail {

enum class LineKind {
  Blank,
  Comment,
  SectionHeader,
  FunctionHeader,
  DebugOffset,
  Label,
  Instruction,
  Other,
};

struct FunctionHeader {
  std::string name;
  std::uint32_t params = 0;
  std::uint32_t registers = 0;
  std::uint32_t symbols = 0;
};

struct SplitInstruction {
  std::string mnemonic;
  std::vector<std::string> operands;
  bool tabSeparated = false;
  bool columnAligned = false;
};

std::string_view trim(std::string_view s);
std::string_view rtrim(std::string_view s);

std::vector<std::string_view> split_lines(std::string_view text);

LineKind classify(std::string_view line);

/// Name of the section a header line opens (e.g. "FILE HEADER").
std::string_view section_name(std::string_view trimmed);

/// nullopt when the line starts like a function header but does not follow
/// the `Function<NAME>(P params, R registers, S symbols):` grammar.
std::optional<FunctionHeader> parse_function_header(std::string_view trimmed);

/// Splits an instruction line into mnemonic and raw operand tokens. Returns
/// nullopt on an unterminated string or an empty comma-separated slot.
std::optional<SplitInstruction> split_instruction(std::string_view line);

std::string format_function_header(const FunctionHeader& header);

}  // namespace hbcunify::hasm::detail
