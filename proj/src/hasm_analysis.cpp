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

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <set>

#include "hasm_lines.hpp"
#include "hbcunify/error.hpp"
#include "hbcunify/hasm.hpp"

namespace hbcunify::hasm {

std::string_view to_string(LiteralKind kind) {
  return kind == LiteralKind::String ? "string" : "number";
}

std::string_view to_string(BundleKind kind) {
  switch (kind) {
    case BundleKind::HermesBytecode: return "HermesBytecode";
    case BundleKind::PlainJavaScript: return "PlainJavaScript";
    case BundleKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<TruncationWarning> detect_truncated_literals(
    const Program& program) {
  std::vector<TruncationWarning> warnings;
  for (const auto& fn : program.functions) {
    for (const auto& inst : fn.instructions) {
      for (const auto& op : inst.operands) {
        if (!op.truncated) {
          continue;
        }
        if (op.kind == OperandKind::String) {
          // The dump may carry a trailing blank after the cut; it is not
          // part of the 16 rendered characters.
          if (detail::rtrim(op.text).size() == kTruncationWidth) {
            warnings.push_back(
                {fn.id, inst.index, LiteralKind::String, op.raw});
          }
        } else if (op.kind == OperandKind::Integer ||
                   op.kind == OperandKind::Double) {
          if (op.raw.size() - 3 == kTruncationWidth) {
            warnings.push_back(
                {fn.id, inst.index, LiteralKind::Number, op.raw});
          }
        }
      }
    }
  }
  return warnings;
}

bool is_unconditional_jump(std::string_view opcode) {
  return opcode == "Jmp" || opcode == "JmpLong";
}

bool is_terminator(std::string_view opcode) {
  return opcode == "Ret" || opcode == "Throw" || is_unconditional_jump(opcode);
}

bool is_call(std::string_view opcode) {
  static constexpr std::array<std::string_view, 9> kCalls = {
      "Call",     "Call1",     "Call2",         "Call3", "Call4",
      "CallLong", "Construct", "ConstructLong", "CallN"};
  return std::find(kCalls.begin(), kCalls.end(), opcode) != kCalls.end();
}

const Operand* branch_target(const Instruction& instruction) {
  for (const auto& op : instruction.operands) {
    if (op.kind == OperandKind::Label) {
      return &op;
    }
  }
  return nullptr;
}

std::size_t BlockGraph::internal_edge_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    n += b.successors.size();
  }
  return n;
}

std::size_t BlockGraph::edge_count() const {
  std::size_t n = internal_edge_count();
  for (const auto& b : blocks) {
    n += b.exits ? 1 : 0;
  }
  return n;
}

std::size_t BlockGraph::block_of(std::size_t instruction) const {
  auto it = std::upper_bound(
      blocks.begin(), blocks.end(), instruction,
      [](std::size_t i, const BasicBlock& b) { return i < b.begin; });
  return static_cast<std::size_t>(it - blocks.begin()) - 1;
}

BlockGraph build_blocks(const Function& function) {
  BlockGraph graph;
  const auto& code = function.instructions;
  const std::size_t n = code.size();
  if (n == 0) {
    return graph;
  }

  auto resolve = [&](const Operand& label, int line) {
    auto it = function.labels.find(label.raw);
    if (it == function.labels.end() || it->second >= n) {
      throw Error(ErrorCode::DanglingLabel,
                  "jump to undeclared label " + label.raw, line);
    }
    return it->second;
  };

  std::set<std::size_t> leaders{0};
  for (const auto& [name, index] : function.labels) {
    if (index < n) {
      leaders.insert(index);
    }
  }
  for (const auto& inst : code) {
    bool branches = false;
    for (const auto& op : inst.operands) {
      if (op.kind == OperandKind::Label) {
        resolve(op, inst.line);
        branches = true;
      }
    }
    if ((branches || is_terminator(inst.opcode)) && inst.index + 1 < n) {
      leaders.insert(inst.index + 1);
    }
  }

  std::vector<std::size_t> starts(leaders.begin(), leaders.end());
  for (std::size_t b = 0; b < starts.size(); ++b) {
    BasicBlock block;
    block.begin = starts[b];
    block.end = b + 1 < starts.size() ? starts[b + 1] : n;
    graph.blocks.push_back(block);
  }
  for (std::size_t b = 0; b < graph.blocks.size(); ++b) {
    auto& block = graph.blocks[b];
    const auto& last = code[block.end - 1];
    for (const auto& op : last.operands) {
      if (op.kind == OperandKind::Label) {
        block.successors.push_back(graph.block_of(resolve(op, last.line)));
      }
    }
    if (last.opcode == "Ret" || last.opcode == "Throw") {
      block.exits = true;
    } else if (!is_unconditional_jump(last.opcode)) {
      if (b + 1 < graph.blocks.size()) {
        block.successors.push_back(b + 1);
      } else {
        block.exits = true;
      }
    }
    std::sort(block.successors.begin(), block.successors.end());
    block.successors.erase(
        std::unique(block.successors.begin(), block.successors.end()),
        block.successors.end());
  }
  return graph;
}

namespace {

// Accepts well-formed UTF-8 without NUL or stray control characters.
bool is_text(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      if (c < 0x20 && c != '\n' && c != '\r' && c != '\t' && c != '\f') {
        return false;
      }
      if (c == 0x7F) {
        return false;
      }
      ++i;
      continue;
    }
    std::size_t extra = (c & 0xE0) == 0xC0   ? 1
                        : (c & 0xF0) == 0xE0 ? 2
                        : (c & 0xF8) == 0xF0 ? 3
                                             : 0;
    if (extra == 0 || i + extra >= s.size()) {
      return false;
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        return false;
      }
    }
    i += extra + 1;
  }
  return true;
}

bool plausible_js_start(std::string_view s) {
  if (s.starts_with("\xEF\xBB\xBF")) {
    s.remove_prefix(3);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return false;
  }
  auto c = static_cast<unsigned char>(s.front());
  if (std::isalpha(c) || c == '_' || c == '$') {
    return true;
  }
  static constexpr std::string_view kPunct = "({[!;/\"'`+-~";
  return kPunct.find(static_cast<char>(c)) != std::string_view::npos;
}

}  // namespace

BundleKind detect_bundle_kind(std::string_view bytes) {
  if (bytes.size() >= 8) {
    std::uint64_t magic = 0;
    for (int i = 7; i >= 0; --i) {
      magic = (magic << 8) | static_cast<unsigned char>(bytes[i]);
    }
    if (magic == kHermesMagic) {
      return BundleKind::HermesBytecode;
    }
  }
  if (is_text(bytes) && plausible_js_start(bytes)) {
    return BundleKind::PlainJavaScript;
  }
  return BundleKind::Unknown;
}

BundleKind detect_bundle_kind(std::span<const std::byte> bytes) {
  return detect_bundle_kind(std::string_view(
      reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace hbcunify::hasm
