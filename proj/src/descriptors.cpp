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

#include <array>

#include "lifter_detail.hpp"

namespace hbcunify::lift {

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::GlobalObject: return "GlobalObject";
    case Origin::PropertyAccess: return "PropertyAccess";
    case Origin::ConstString: return "ConstString";
    case Origin::ConstNumber: return "ConstNumber";
    case Origin::CallResult: return "CallResult";
    case Origin::FunctionRef: return "FunctionRef";
    case Origin::Param: return "Param";
    case Origin::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string RegisterDescriptor::render() const {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0) {
      out.push_back('.');
    }
    out += chain[i];
  }
  return out;
}

std::string RegisterDescriptor::annotated() const {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0) {
      out.push_back('.');
    }
    // The literal belongs to the call whose result sits at position i; it is
    // rendered after the callee segment that precedes it.
    if (i > 0) {
      if (auto it = callLiterals.find(i); it != callLiterals.end()) {
        out.pop_back();
        out += "(\"" + it->second + "\").";
      }
    }
    out += chain[i];
  }
  return out;
}

std::string RegisterDescriptor::type_name() const {
  return chain.empty() ? std::string(kObjectType) : render();
}

const RegisterDescriptor& DescriptorTrace::at(std::size_t instruction,
                                              std::uint32_t reg) const {
  static const RegisterDescriptor kUnknown;
  if (instruction >= after.size()) {
    return kUnknown;
  }
  auto it = after[instruction].find(reg);
  return it == after[instruction].end() ? kUnknown : it->second;
}

namespace detail {

namespace {

template <std::size_t N>
bool one_of(std::string_view op, const std::array<std::string_view, N>& set) {
  for (auto s : set) {
    if (s == op) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_get_by_id(std::string_view op) {
  static constexpr std::array<std::string_view, 5> kSet = {
      "TryGetById", "GetById", "GetByIdShort", "GetByIdLong",
      "TryGetByIdLong"};
  return one_of(op, kSet);
}

bool is_put_by_id(std::string_view op) {
  // PutNewOwnById* carry no cache index and take the generic path.
  static constexpr std::array<std::string_view, 4> kSet = {
      "PutById", "TryPutById", "PutByIdLong", "TryPutByIdLong"};
  return one_of(op, kSet);
}

bool is_closure(std::string_view op) {
  static constexpr std::array<std::string_view, 4> kSet = {
      "CreateClosure", "CreateClosureLongIndex", "CreateAsyncClosure",
      "CreateGeneratorClosure"};
  return one_of(op, kSet);
}

bool is_arithmetic(std::string_view op) {
  static constexpr std::array<std::string_view, 4> kSet = {"Add", "Sub",
                                                           "Mul", "Div"};
  return one_of(op, kSet);
}

std::optional<std::size_t> fixed_call_arity(std::string_view op) {
  if (op.size() == 5 && op.starts_with("Call") && op[4] >= '1' &&
      op[4] <= '4') {
    return static_cast<std::size_t>(op[4] - '0');
  }
  return std::nullopt;
}

std::optional<std::uint32_t> destination(const hasm::Instruction& inst) {
  if (inst.operands.empty() ||
      inst.operands[0].kind != hasm::OperandKind::Register) {
    return std::nullopt;
  }
  static constexpr std::array<std::string_view, 14> kNonWriterPrefixes = {
      "Put",        "Store",           "J",
      "Throw",      "Ret",             "Declare",
      "Debugger",   "AsyncBreakCheck", "ProfilePoint",
      "Unreachable", "Switch",         "StartGenerator",
      "CompleteGenerator", "SaveGenerator"};
  for (auto prefix : kNonWriterPrefixes) {
    if (std::string_view(inst.opcode).starts_with(prefix)) {
      return std::nullopt;
    }
  }
  return static_cast<std::uint32_t>(inst.operands[0].integer);
}

std::optional<std::string> string_operand(const hasm::Operand& op,
                                          const hasm::Program& program) {
  switch (op.kind) {
    case hasm::OperandKind::String:
      return op.text;
    case hasm::OperandKind::StringRef:
    case hasm::OperandKind::Integer: {
      auto it = program.stringTable.find(static_cast<std::uint32_t>(op.integer));
      if (op.integer >= 0 && it != program.stringTable.end()) {
        return it->second;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::string closure_name(const hasm::Operand& ref,
                         const MethodIdentityMap* identities) {
  if (identities != nullptr) {
    auto it = identities->byFunctionId.find(
        static_cast<std::uint32_t>(ref.integer));
    if (it != identities->byFunctionId.end()) {
      return it->second.methodName;
    }
  }
  return ref.text.empty() ? "hermesAnonymousFunction_" +
                                std::to_string(ref.integer)
                          : ref.text;
}

const RegisterDescriptor& lookup(const RegisterState& state,
                                 std::uint32_t reg) {
  static const RegisterDescriptor kUnknown;
  auto it = state.find(reg);
  return it == state.end() ? kUnknown : it->second;
}

RegisterDescriptor property_of(const RegisterDescriptor& base,
                               std::string property) {
  RegisterDescriptor out;
  out.origin = Origin::PropertyAccess;
  out.chain = base.chain.empty() ? std::vector<std::string>{std::string(kObjectType)}
                                 : base.chain;
  out.callLiterals = base.callLiterals;
  out.chain.push_back(std::move(property));
  return out;
}

RegisterDescriptor call_result(const RegisterDescriptor& callee,
                               const std::vector<RegisterDescriptor>& args,
                               const std::vector<const hasm::Operand*>& argOps) {
  RegisterDescriptor out;
  out.origin = Origin::CallResult;
  out.chain = callee.chain;
  out.callLiterals = callee.callLiterals;
  out.chain.emplace_back(kFunctionOutput);
  // Skip the receiver slot.
  for (std::size_t k = 1; k < args.size(); ++k) {
    if (argOps[k]->kind == hasm::OperandKind::String) {
      out.callLiterals[out.chain.size() - 1] = argOps[k]->text;
      break;
    }
    if (args[k].origin == Origin::ConstString && args[k].literal) {
      out.callLiterals[out.chain.size() - 1] = *args[k].literal;
      break;
    }
  }
  return out;
}

std::optional<RegisterDescriptor> step(RegisterState& state,
                                       const hasm::Instruction& inst,
                                       const hasm::Program& program,
                                       const MethodIdentityMap* identities) {
  auto dest = destination(inst);
  if (!dest) {
    return std::nullopt;
  }
  const auto& ops = inst.operands;
  const std::string_view op = inst.opcode;
  RegisterDescriptor out;

  auto reg_at = [&](std::size_t i) -> const hasm::Operand* {
    return i < ops.size() && ops[i].kind == hasm::OperandKind::Register
               ? &ops[i]
               : nullptr;
  };

  if (op == "GetGlobalObject") {
    out.origin = Origin::GlobalObject;
    out.chain = {"Hbc.GlobalObject"};
  } else if (is_get_by_id(op)) {
    auto base = reg_at(1);
    auto prop = ops.size() == 4 ? string_operand(ops[3], program) : std::nullopt;
    if (base && prop) {
      out = property_of(lookup(state, static_cast<std::uint32_t>(base->integer)),
                        *prop);
    }
  } else if (op == "LoadConstString") {
    if (ops.size() == 2) {
      if (auto s = string_operand(ops[1], program);
          s && ops[1].kind != hasm::OperandKind::Integer) {
        out.origin = Origin::ConstString;
        out.chain = {"JavaScript.String"};
        out.literal = *s;
      }
    }
  } else if (op == "LoadConstInt" || op == "LoadConstDouble") {
    if (ops.size() == 2 && (ops[1].kind == hasm::OperandKind::Integer ||
                            ops[1].kind == hasm::OperandKind::Double)) {
      out.origin = Origin::ConstNumber;
      out.chain = {"JavaScript.Number"};
      out.literal = ops[1].raw;
    }
  } else if (op == "Mov") {
    if (auto src = reg_at(1); src && ops.size() == 2) {
      out = lookup(state, static_cast<std::uint32_t>(src->integer));
    }
  } else if (op == "LoadParam") {
    if (ops.size() == 2 && ops[1].kind == hasm::OperandKind::Integer) {
      out.origin = Origin::Param;
      out.chain = {"JavaScript.Parameter_" + std::to_string(ops[1].integer)};
    }
  } else if (is_closure(op)) {
    if (ops.size() == 3 && ops[2].kind == hasm::OperandKind::FunctionRef) {
      out.origin = Origin::FunctionRef;
      out.functionRefId = static_cast<std::uint32_t>(ops[2].integer);
      out.chain = {"JavaScript.Function.HermesBytecode",
                   closure_name(ops[2], identities)};
    }
  } else if (hasm::is_call(op)) {
    if (auto callee = reg_at(1)) {
      std::vector<RegisterDescriptor> args;
      std::vector<const hasm::Operand*> arg_ops;
      for (std::size_t i = 2; i < ops.size(); ++i) {
        arg_ops.push_back(&ops[i]);
        args.push_back(ops[i].kind == hasm::OperandKind::Register
                           ? lookup(state, static_cast<std::uint32_t>(ops[i].integer))
                           : RegisterDescriptor{});
      }
      out = call_result(
          lookup(state, static_cast<std::uint32_t>(callee->integer)), args,
          arg_ops);
    }
  }
  state[*dest] = out;
  return out;
}

}  // namespace detail

DescriptorTrace track_register_types(const hasm::Function& function,
                                     const hasm::Program& program,
                                     const MethodIdentityMap* identities) {
  DescriptorTrace trace;
  RegisterState state;
  trace.after.reserve(function.instructions.size());
  for (const auto& inst : function.instructions) {
    detail::step(state, inst, program, identities);
    trace.after.push_back(state);
  }
  return trace;
}

}  // namespace hbcunify::lift
