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

// Lifts parsed Hermes disassembly into the unified IR.
//
// Register contents are tracked by a single linear pass in textual order
// (flow-insensitive: no merging at joins), producing a symbolic descriptor
// such as `Hbc.GlobalObject.console.log` for each register. Call opcodes
// whose callee descriptor is a property chain become direct invokes on the
// chain prefix, e.g. `<Hbc.GlobalObject.console: ... log(...)>`.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hbcunify/hasm.hpp"
#include "hbcunify/ir.hpp"

namespace hbcunify::lift {

inline constexpr std::string_view kHermesClass = "HermesByteCode";
inline constexpr std::string_view kOpcodeClass = "Hbc.Opcod";
inline constexpr std::string_view kFunctionOutput = "JavaScript.FunctionOutput";
inline constexpr std::string_view kObjectType = "JavaScript.Object";

enum class Origin {
  GlobalObject,
  PropertyAccess,
  ConstString,
  ConstNumber,
  CallResult,
  FunctionRef,
  Param,
  Unknown,
};

std::string_view to_string(Origin origin);

struct RegisterDescriptor {
  std::vector<std::string> chain;
  Origin origin = Origin::Unknown;
  std::optional<std::uint32_t> functionRefId;
  /// Literal payload of ConstString / ConstNumber.
  std::optional<std::string> literal;
  /// For chain positions holding a call result: the first string literal
  /// passed to that call (e.g. the module name given to
  /// `TurboModuleRegistry.getEnforcing`).
  std::map<std::size_t, std::string> callLiterals;

  /// Dot-join of the chain.
  std::string render() const;
  /// render() with call literals spliced in: `...getEnforcing("Calendar")...`
  std::string annotated() const;
  /// Type used for IR declarations: render(), or JavaScript.Object when the
  /// chain is empty.
  std::string type_name() const;

  bool operator==(const RegisterDescriptor&) const = default;
};

using RegisterState = std::map<std::uint32_t, RegisterDescriptor>;

struct DescriptorTrace {
  /// after[i]: register state once instruction i has executed.
  std::vector<RegisterState> after;

  /// Descriptor of `reg` after instruction `instruction`; Unknown when the
  /// register has not been written yet.
  const RegisterDescriptor& at(std::size_t instruction,
                               std::uint32_t reg) const;
};

struct MethodIdentityMap {
  std::map<std::uint32_t, ir::MethodSig> byFunctionId;

  const ir::MethodSig& at(std::uint32_t functionId) const {
    return byFunctionId.at(functionId);
  }
};

/// One MethodSig per function in class HermesByteCode. Unique names are
/// kept, duplicates become `hermesDuplicatedFunction_<name>_<id>`, and
/// unnamed functions `hermesAnonymousFunction_<id>`.
MethodIdentityMap assign_method_identities(const hasm::Program& program);

/// Flow-insensitive descriptor pass over one function. `identities`, when
/// given, names closure targets by their assigned method names.
DescriptorTrace track_register_types(
    const hasm::Function& function, const hasm::Program& program,
    const MethodIdentityMap* identities = nullptr);

struct CallSiteRecord {
  ir::MethodSig callerSig;
  std::uint32_t functionId = 0;
  std::size_t instructionIndex = 0;
  std::size_t statementIndex = 0;
  std::string opcode;
  RegisterDescriptor calleeDescriptor;
  std::vector<RegisterDescriptor> argDescriptors;
  std::size_t argCount = 0;
  /// Set when the call was lifted to a direct invoke of a bundle function.
  std::optional<ir::MethodSig> directTarget;
};

struct LiftedFunction {
  ir::Method method;
  std::vector<CallSiteRecord> callSites;
  /// First statement emitted for each instruction.
  std::vector<std::size_t> instructionStart;
};

/// Throws UnliftableOperand when an opcode from the mapping table has
/// operands of the wrong shape.
LiftedFunction lift_function(const hasm::Function& function,
                             const hasm::Program& program,
                             const MethodIdentityMap& identities);

struct LiftResult {
  ir::Program program;
  MethodIdentityMap identities;
  /// Call sites in lifting order (function id, then statement).
  std::vector<CallSiteRecord> callSites;
  /// Methods of functions declared as `global`.
  std::vector<ir::MethodSig> globalMethods;
};

LiftResult lift_program(const hasm::Program& program);

/// Call sites ordered by caller signature, then statement index.
std::vector<CallSiteRecord> record_call_sites(const LiftResult& lifted);

}  // namespace hbcunify::lift
