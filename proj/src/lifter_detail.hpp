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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbcunify/lifter.hpp"

namespace hbcunify::lift::detail {

bool is_get_by_id(std::string_view op);
bool is_put_by_id(std::string_view op);
bool is_closure(std::string_view op);
bool is_arithmetic(std::string_view op);
std::optional<std::size_t> fixed_call_arity(std::string_view op);

/// Register written by the instruction, if any.
std::optional<std::uint32_t> destination(const hasm::Instruction& inst);

/// Inline string, string-table reference, or integer string-table index.
std::optional<std::string> string_operand(const hasm::Operand& op,
                                          const hasm::Program& program);

std::string closure_name(const hasm::Operand& ref,
                         const MethodIdentityMap* identities);

const RegisterDescriptor& lookup(const RegisterState& state, std::uint32_t reg);

/// Applies one instruction to `state`; returns the descriptor written to the
/// destination register, if there is one.
std::optional<RegisterDescriptor> step(RegisterState& state,
                                       const hasm::Instruction& inst,
                                       const hasm::Program& program,
                                       const MethodIdentityMap* identities);

/// Replaces characters that cannot appear in an IR name with '_'.
std::string sanitize_identifier(std::string_view name);
std::string sanitize_type(std::string_view type);

}  // namespace hbcunify::lift::detail
