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

// Model and parser for Hermes textual disassembly (hbcdump-style `.hasm`).
//
// Canonical line grammar:
//
//   FILE HEADER: ...                 section headers, free-form bodies
//   FUNCTION HEADER TABLE: ...
//   STRING TABLE&STORAGE: ...        body entries `s<idx>: "text"`
//   Function<NAME>(P params, R registers, S symbols):
//     MNEMONIC op1, op2, ...         two-space indent, comma-space operands
//   L<n>:                            label for the next instruction
//   Debug Information: ...
//
// Operands: `r<i>` register, `L<n>` label, `s<i>` string-table reference,
// `"text"` string, integers, doubles, and `Function<NAME>#<id>` (or
// `NCFunction<...>#<id>`) function references. A literal followed by `...`
// was truncated by the disassembler.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hbcunify::hasm {

enum class OperandKind {
  Register,
  Integer,
  Double,
  String,
  StringRef,
  Label,
  FunctionRef,
};

std::string_view to_string(OperandKind kind);

struct Operand {
  OperandKind kind = OperandKind::Integer;
  /// Operand text exactly as it appeared (after separator trimming).
  std::string raw;
  /// Register index, integer value, label number, string-table index, or
  /// referenced function id, depending on `kind`.
  std::int64_t integer = 0;
  double number = 0.0;
  /// String body (escapes decoded) or the function name of a FunctionRef.
  std::string text;
  /// The literal was rendered with a trailing `...`.
  bool truncated = false;

  bool operator==(const Operand&) const = default;
};

struct Instruction {
  std::size_t index = 0;
  std::string opcode;
  std::vector<Operand> operands;
  int line = 0;

  bool operator==(const Instruction&) const = default;
};

struct Function {
  std::uint32_t id = 0;
  std::string declaredName;
  std::uint32_t paramCount = 0;
  std::uint32_t registerCount = 0;
  std::uint32_t symbolCount = 0;
  std::vector<Instruction> instructions;
  /// Label name (`L3`) -> index of the instruction it precedes.
  std::map<std::string, std::size_t> labels;
  int line = 0;

  bool operator==(const Function&) const = default;
};

/// Dialects accepted by the parser and rewritten by normalize_variant.
enum class Dialect {
  /// Comma-space operands, no debug-offset lines.
  Canonical,
  /// Column-aligned mnemonics with `Offset in debug table` lines.
  Hbcdump,
  /// Tab-separated operands.
  Tabbed,
};

std::string_view to_string(Dialect dialect);
std::optional<Dialect> dialect_from_string(std::string_view name);

struct Program {
  std::vector<Function> functions;
  std::map<std::uint32_t, std::string> stringTable;
  /// Section header lines and their bodies, newline separated.
  std::string sourceMeta;
  Dialect dialect = Dialect::Canonical;

  bool operator==(const Program&) const = default;

  std::size_t instruction_count() const;
};

/// Parses a disassembly document in any supported dialect.
/// Throws hbcunify::Error (MalformedHeader, UnknownOperandShape,
/// DanglingLabel, RegisterOutOfRange, DanglingStringRef).
Program parse_disassembly(std::string_view text);

/// Rewrites `text` into the canonical dialect. Idempotent. Without a hint,
/// a document containing lines no dialect rule recognizes is rejected with
/// UnsupportedVariant; with a hint such lines are passed through.
std::string normalize_variant(std::string_view text,
                              std::optional<Dialect> hint = std::nullopt);

/// Detects the dialect of a document without rewriting it.
Dialect detect_dialect(std::string_view text);

// Truncated literals ------------------------------------------------------

enum class LiteralKind { String, Number };

std::string_view to_string(LiteralKind kind);

struct TruncationWarning {
  std::uint32_t functionId = 0;
  std::size_t instructionIndex = 0;
  LiteralKind literalKind = LiteralKind::String;
  std::string rawText;

  bool operator==(const TruncationWarning&) const = default;
};

/// Width at which the disassembler cuts literals.
inline constexpr std::size_t kTruncationWidth = 16;

std::vector<TruncationWarning> detect_truncated_literals(
    const Program& program);

// Opcode classes ------------------------------------------------------------

bool is_unconditional_jump(std::string_view opcode);
bool is_terminator(std::string_view opcode);
bool is_call(std::string_view opcode);
/// First label operand, if the instruction branches.
const Operand* branch_target(const Instruction& instruction);

// Basic blocks ----------------------------------------------------------------

struct BasicBlock {
  std::size_t begin = 0;  ///< first instruction index
  std::size_t end = 0;    ///< one past the last instruction index
  std::vector<std::size_t> successors;  ///< sorted block indices
  /// Control leaves the function from this block (return, throw, or falling
  /// off the last instruction).
  bool exits = false;

  bool operator==(const BasicBlock&) const = default;
};

struct BlockGraph {
  std::vector<BasicBlock> blocks;

  std::size_t internal_edge_count() const;
  /// Internal edges plus one edge to the synthetic exit per exiting block.
  std::size_t edge_count() const;
  std::size_t block_of(std::size_t instruction) const;

  bool operator==(const BlockGraph&) const = default;
};

/// Throws DanglingLabel when a jump names an unknown label.
BlockGraph build_blocks(const Function& function);

// Bundle sniffing -------------------------------------------------------------

enum class BundleKind { HermesBytecode, PlainJavaScript, Unknown };

std::string_view to_string(BundleKind kind);

/// Little-endian file magic at offset 0 of every Hermes bytecode bundle.
inline constexpr std::uint64_t kHermesMagic = 0x1F1903C103BC1FC6ULL;

BundleKind detect_bundle_kind(std::span<const std::byte> bytes);
BundleKind detect_bundle_kind(std::string_view bytes);

}  // namespace hbcunify::hasm
