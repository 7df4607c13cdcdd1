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

#include "hbcunify/lifter.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "hbcunify/error.hpp"
#include "lifter_detail.hpp"

namespace hbcunify::lift {

namespace detail {

std::string sanitize_identifier(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(u) || c == '_' || c == '$' ? c : '_');
  }
  return out;
}

std::string sanitize_type(std::string_view type) {
  if (type.empty()) {
    return std::string(kObjectType);
  }
  std::string out;
  out.reserve(type.size());
  for (char c : type) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(u) || c == '_' || c == '$' || c == '.' ? c
                                                                      : '_');
  }
  return out;
}

}  // namespace detail

namespace {

using hasm::OperandKind;
using ir::Statement;

std::string join(const std::vector<std::string>& parts, std::size_t count,
                 std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) {
      out += sep;
    }
    out += parts[i];
  }
  return out;
}

std::string reg_local(std::int64_t reg) { return "r" + std::to_string(reg); }

class FunctionLifter {
 public:
  FunctionLifter(const hasm::Function& fn, const hasm::Program& program,
                 const MethodIdentityMap& identities)
      : fn_(fn), program_(program), identities_(identities),
        sig_(identities.at(fn.id)) {}

  LiftedFunction run() {
    std::vector<std::size_t> inst_start(fn_.instructions.size());
    for (const auto& inst : fn_.instructions) {
      inst_start[inst.index] = body_.size();
      lift(inst);
    }

    // Prefix: parameter identities, then registers read before any write.
    std::vector<Statement> prefix;
    for (std::uint32_t i = 0; i < fn_.paramCount; ++i) {
      prefix.push_back(Statement::identity(arg_local(i), i, param_type(i)));
    }
    for (const auto& name : uninitialized_) {
      prefix.push_back(
          Statement::assign(name, ir::Constant::undefined()));
    }
    const std::size_t shift = prefix.size();

    LiftedFunction out;
    out.method.sig = sig_;
    for (auto& s : body_) {
      if (s.is_branch()) {
        s.branchTarget = inst_start.empty() ? 0 : inst_start[s.branchTarget];
        s.branchTarget += shift;
      }
    }
    auto& stmts = out.method.statements;
    stmts = std::move(prefix);
    stmts.insert(stmts.end(), std::make_move_iterator(body_.begin()),
                 std::make_move_iterator(body_.end()));
    if (stmts.empty() || !(stmts.back().kind == ir::StmtKind::Return ||
                           stmts.back().kind == ir::StmtKind::Goto)) {
      stmts.push_back(Statement::ret());
    }
    // A branch to an end-of-body label lands on the appended return.
    for (auto& s : stmts) {
      if (s.is_branch() && s.branchTarget >= stmts.size()) {
        s.branchTarget = stmts.size() - 1;
      }
    }

    out.method.blockStarts.insert(0);
    if (!fn_.instructions.empty()) {
      const auto graph = hasm::build_blocks(fn_);
      for (std::size_t b = 1; b < graph.blocks.size(); ++b) {
        out.method.blockStarts.insert(inst_start[graph.blocks[b].begin] +
                                      shift);
      }
    }
    for (std::size_t i = 0; i < stmts.size(); ++i) {
      if (stmts[i].is_branch()) {
        out.method.blockStarts.insert(stmts[i].branchTarget);
      }
    }

    // Locals: registers, condition temporaries, then parameters.
    for (const auto& [reg, type] : register_types_) {
      out.method.locals.push_back({reg_local(reg), type});
    }
    for (std::size_t k = 0; k < cond_temps_; ++k) {
      out.method.locals.push_back(
          {"$c" + std::to_string(k), "JavaScript.Boolean"});
    }
    for (std::uint32_t i = 0; i < fn_.paramCount; ++i) {
      out.method.locals.push_back({arg_local(i), param_type(i)});
    }

    for (auto& site : sites_) {
      site.statementIndex += shift;
    }
    out.callSites = std::move(sites_);
    out.instructionStart = std::move(inst_start);
    for (auto& s : out.instructionStart) {
      s += shift;
    }
    return out;
  }

 private:
  static std::string arg_local(std::uint32_t i) {
    return "arg" + std::to_string(i);
  }
  static std::string param_type(std::uint32_t i) {
    return "JavaScript.Parameter_" + std::to_string(i);
  }

  [[noreturn]] void fail(const hasm::Instruction& inst,
                         std::string_view what) const {
    throw Error(ErrorCode::UnliftableOperand,
                inst.opcode + " in function " + std::to_string(fn_.id) +
                    ": " + std::string(what),
                inst.line);
  }

  const hasm::Operand& reg_operand(const hasm::Instruction& inst,
                                   std::size_t i) const {
    if (i >= inst.operands.size() ||
        inst.operands[i].kind != OperandKind::Register) {
      fail(inst, "operand " + std::to_string(i) + " must be a register");
    }
    return inst.operands[i];
  }

  void expect_count(const hasm::Instruction& inst, std::size_t n) const {
    if (inst.operands.size() != n) {
      fail(inst, "expected " + std::to_string(n) + " operands");
    }
  }

  // Reads a register; one never written before this point gets an
  // `undefined` initializer in the prefix.
  ir::Value read(std::int64_t reg) {
    const auto r = static_cast<std::uint32_t>(reg);
    if (!written_.contains(r)) {
      const auto name = reg_local(reg);
      if (std::find(uninitialized_.begin(), uninitialized_.end(), name) ==
          uninitialized_.end()) {
        uninitialized_.push_back(name);
      }
      register_types_.emplace(r, std::string(kObjectType));
    }
    return ir::LocalRef{reg_local(reg)};
  }

  ir::Value value_of(const hasm::Instruction& inst, const hasm::Operand& op) {
    switch (op.kind) {
      case OperandKind::Register:
        return read(op.integer);
      case OperandKind::Integer:
        return ir::Constant::of_int(op.integer);
      case OperandKind::Double:
        return ir::Constant::of_double(op.number);
      case OperandKind::String:
        return ir::Constant::of_string(op.text);
      case OperandKind::StringRef:
        return ir::Constant::of_string(
            detail::string_operand(op, program_).value_or(""));
      case OperandKind::FunctionRef:
        return ir::Constant::of_int(op.integer);
      case OperandKind::Label:
        break;
    }
    fail(inst, "label used as a value");
  }

  std::string value_type(const ir::Value& v) const {
    if (const auto* c = std::get_if<ir::Constant>(&v)) {
      return std::string(ir::constant_type(*c));
    }
    const auto& name = std::get<ir::LocalRef>(v).name;
    if (name.starts_with("arg")) {
      return param_type(static_cast<std::uint32_t>(std::stoul(name.substr(3))));
    }
    return std::string(kObjectType);
  }

  void define(std::uint32_t reg, const std::string& type) {
    written_.insert(reg);
    register_types_.emplace(reg, detail::sanitize_type(type));
  }

  std::size_t target_of(const hasm::Instruction& inst,
                        const hasm::Operand& label) const {
    auto it = fn_.labels.find(label.raw);
    if (it == fn_.labels.end()) {
      fail(inst, "unknown label " + label.raw);
    }
    return it->second;
  }

  ir::MethodSig opcode_sig(std::string_view name, std::string ret,
                           std::vector<std::string> params) const {
    return ir::make_signature(kOpcodeClass, name, std::move(params),
                              detail::sanitize_type(ret));
  }

  void lift(const hasm::Instruction& inst) {
    const std::string_view op = inst.opcode;
    const auto& ops = inst.operands;
    // Snapshot before the destination is overwritten.
    const RegisterState before = state_;
    auto written = detail::step(state_, inst, program_, &identities_);

    if (op == "GetGlobalObject") {
      expect_count(inst, 1);
      const auto& d = reg_operand(inst, 0);
      emit_assign_invoke(d, opcode_sig("GetGlobalObject", "Hbc.GlobalObject", {}),
                         {}, written);
    } else if (detail::is_get_by_id(op)) {
      expect_count(inst, 4);
      const auto& d = reg_operand(inst, 0);
      const auto& b = reg_operand(inst, 1);
      auto prop = detail::string_operand(ops[3], program_);
      if (!prop || ops[2].kind != OperandKind::Integer) {
        fail(inst, "expected cache index and property name");
      }
      std::vector<ir::Value> args{read(b.integer),
                                  ir::Constant::of_int(ops[2].integer),
                                  ir::Constant::of_string(*prop)};
      emit_assign_invoke(
          d,
          opcode_sig("hbcGet", written->type_name(),
                     {std::string(kObjectType), "JavaScript.Number",
                      "JavaScript.String"}),
          std::move(args), written);
    } else if (detail::is_put_by_id(op)) {
      expect_count(inst, 4);
      const auto& o = reg_operand(inst, 0);
      const auto& v = reg_operand(inst, 1);
      auto prop = detail::string_operand(ops[3], program_);
      if (!prop || ops[2].kind != OperandKind::Integer) {
        fail(inst, "expected cache index and property name");
      }
      std::vector<ir::Value> args{read(o.integer), read(v.integer),
                                  ir::Constant::of_int(ops[2].integer),
                                  ir::Constant::of_string(*prop)};
      body_.push_back(Statement::invoke(
          opcode_sig("hbcPut", "void",
                     {std::string(kObjectType), std::string(kObjectType),
                      "JavaScript.Number", "JavaScript.String"}),
          std::move(args)));
    } else if (op == "LoadConstString") {
      expect_count(inst, 2);
      const auto& d = reg_operand(inst, 0);
      if (ops[1].kind != OperandKind::String &&
          ops[1].kind != OperandKind::StringRef) {
        fail(inst, "expected a string operand");
      }
      emit_assign_invoke(
          d, opcode_sig("LoadConstString", "JavaScript.String",
                        {"JavaScript.String"}),
          {value_of(inst, ops[1])}, written);
    } else if (op == "LoadConstInt" || op == "LoadConstDouble") {
      expect_count(inst, 2);
      const auto& d = reg_operand(inst, 0);
      if (ops[1].kind != OperandKind::Integer &&
          ops[1].kind != OperandKind::Double) {
        fail(inst, "expected a numeric operand");
      }
      emit_assign_invoke(d, opcode_sig(op, "JavaScript.Number",
                                       {"JavaScript.Number"}),
                         {value_of(inst, ops[1])}, written);
    } else if (op == "LoadConstUndefined") {
      expect_count(inst, 1);
      const auto& d = reg_operand(inst, 0);
      define(static_cast<std::uint32_t>(d.integer), std::string(kObjectType));
      body_.push_back(
          Statement::assign(reg_local(d.integer), ir::Constant::undefined()));
    } else if (op == "Mov") {
      expect_count(inst, 2);
      const auto& d = reg_operand(inst, 0);
      const auto& s = reg_operand(inst, 1);
      auto src = read(s.integer);
      define(static_cast<std::uint32_t>(d.integer), written->type_name());
      body_.push_back(Statement::assign(reg_local(d.integer), std::move(src)));
    } else if (op == "LoadParam") {
      expect_count(inst, 2);
      const auto& d = reg_operand(inst, 0);
      if (ops[1].kind != OperandKind::Integer || ops[1].integer < 0) {
        fail(inst, "expected a parameter index");
      }
      const auto idx = static_cast<std::uint32_t>(ops[1].integer);
      define(static_cast<std::uint32_t>(d.integer), written->type_name());
      if (idx < fn_.paramCount) {
        body_.push_back(Statement::assign(reg_local(d.integer),
                                          ir::LocalRef{arg_local(idx)}));
      } else {
        body_.push_back(Statement::assign(reg_local(d.integer),
                                          ir::Constant::undefined()));
      }
    } else if (detail::is_closure(op)) {
      expect_count(inst, 3);
      const auto& d = reg_operand(inst, 0);
      const auto& env = reg_operand(inst, 1);
      if (ops[2].kind != OperandKind::FunctionRef ||
          !identities_.byFunctionId.contains(
              static_cast<std::uint32_t>(ops[2].integer))) {
        fail(inst, "expected a reference to a function of this bundle");
      }
      emit_assign_invoke(
          d,
          opcode_sig(op, written->type_name(),
                     {std::string(kObjectType), "JavaScript.Number"}),
          {read(env.integer), ir::Constant::of_int(ops[2].integer)}, written);
    } else if (hasm::is_call(op)) {
      lift_call(inst, before, written);
    } else if (op == "Jmp" || op == "JmpLong") {
      expect_count(inst, 1);
      if (ops[0].kind != OperandKind::Label) {
        fail(inst, "expected a label");
      }
      body_.push_back(Statement::jump(target_of(inst, ops[0])));
    } else if (op == "JmpTrue" || op == "JmpTrueLong" || op == "JmpFalse" ||
               op == "JmpFalseLong") {
      expect_count(inst, 2);
      const bool label_first = ops[0].kind == OperandKind::Label;
      const auto& label = ops[label_first ? 0 : 1];
      const auto& cond = ops[label_first ? 1 : 0];
      if (label.kind != OperandKind::Label ||
          cond.kind != OperandKind::Register) {
        fail(inst, "expected a label and a register");
      }
      auto c = read(cond.integer);
      body_.push_back(Statement::branch_if(std::get<ir::LocalRef>(c).name,
                                           op.starts_with("JmpTrue"),
                                           target_of(inst, label)));
    } else if (op == "Ret") {
      expect_count(inst, 1);
      body_.push_back(Statement::ret(read(reg_operand(inst, 0).integer)));
    } else if (op == "Throw") {
      expect_count(inst, 1);
      body_.push_back(Statement::invoke(
          opcode_sig("Throw", "void", {std::string(kObjectType)}),
          {read(reg_operand(inst, 0).integer)}));
      body_.push_back(Statement::ret());
    } else if (detail::is_arithmetic(op)) {
      expect_count(inst, 3);
      const auto& d = reg_operand(inst, 0);
      std::vector<ir::Value> args{read(reg_operand(inst, 1).integer),
                                  read(reg_operand(inst, 2).integer)};
      const std::string ret =
          op == "Add" ? std::string(kObjectType) : "JavaScript.Number";
      emit_assign_invoke(
          d,
          opcode_sig(op, ret,
                     {std::string(kObjectType), std::string(kObjectType)}),
          std::move(args), written, ret);
    } else {
      lift_unknown(inst, written);
    }
  }

  void emit_assign_invoke(const hasm::Operand& dest, ir::MethodSig callee,
                          std::vector<ir::Value> args,
                          const std::optional<RegisterDescriptor>& written,
                          std::optional<std::string> type = std::nullopt) {
    define(static_cast<std::uint32_t>(dest.integer),
           type ? *type : (written ? written->type_name()
                                   : std::string(kObjectType)));
    body_.push_back(Statement::assign_invoke(
        reg_local(dest.integer), std::move(callee), std::move(args)));
  }

  void lift_call(const hasm::Instruction& inst, const RegisterState& before,
                 const std::optional<RegisterDescriptor>& written) {
    const auto& ops = inst.operands;
    if (auto n = detail::fixed_call_arity(inst.opcode)) {
      expect_count(inst, *n + 2);
    } else if (ops.size() < 2) {
      fail(inst, "expected a destination and a callee");
    }
    const auto& d = reg_operand(inst, 0);
    const auto& c = reg_operand(inst, 1);
    const auto& callee =
        detail::lookup(before, static_cast<std::uint32_t>(c.integer));

    CallSiteRecord site;
    site.callerSig = sig_;
    site.functionId = fn_.id;
    site.instructionIndex = inst.index;
    site.opcode = inst.opcode;
    site.calleeDescriptor = callee;
    site.argCount = ops.size() - 2;

    std::vector<ir::Value> args;
    for (std::size_t i = 2; i < ops.size(); ++i) {
      args.push_back(value_of(inst, ops[i]));
      site.argDescriptors.push_back(
          ops[i].kind == OperandKind::Register
              ? detail::lookup(before, static_cast<std::uint32_t>(ops[i].integer))
              : RegisterDescriptor{});
    }
    const std::string ret = detail::sanitize_type(written->type_name());

    ir::MethodSig target;
    std::vector<ir::Value> call_args;
    const bool method_ok =
        callee.chain.size() >= 2 && ir::is_valid_name(callee.chain.back()) &&
        callee.chain.back().find('.') == std::string::npos;
    const std::string owner =
        callee.chain.size() >= 2
            ? join(callee.chain, callee.chain.size() - 1, ".")
            : std::string();
    if (callee.origin == Origin::FunctionRef && callee.functionRefId &&
        identities_.byFunctionId.contains(*callee.functionRefId)) {
      target = identities_.at(*callee.functionRefId);
      call_args = args;
      call_args.resize(std::min(call_args.size(), target.arity()));
      while (call_args.size() < target.arity()) {
        call_args.emplace_back(ir::Constant::undefined());
      }
      site.directTarget = target;
    } else if (callee.origin == Origin::PropertyAccess && method_ok &&
               ir::is_valid_name(owner)) {
      target = ir::make_signature(
          owner, callee.chain.back(),
          std::vector<std::string>(args.size(), std::string(kObjectType)), ret);
      call_args = args;
    } else {
      std::vector<std::string> params{std::string(kObjectType)};
      for (const auto& a : args) {
        params.push_back(value_type(a));
      }
      target = opcode_sig(inst.opcode, ret, std::move(params));
      call_args.push_back(read(c.integer));
      call_args.insert(call_args.end(), args.begin(), args.end());
    }
    site.statementIndex = body_.size();
    define(static_cast<std::uint32_t>(d.integer), ret);
    body_.push_back(Statement::assign_invoke(reg_local(d.integer),
                                             std::move(target),
                                             std::move(call_args)));
    sites_.push_back(std::move(site));
  }

  void lift_unknown(const hasm::Instruction& inst,
                    const std::optional<RegisterDescriptor>& written) {
    const hasm::Operand* label = hasm::branch_target(inst);
    auto dest = detail::destination(inst);
    std::vector<ir::Value> args;
    std::vector<std::string> params;
    for (std::size_t i = 0; i < inst.operands.size(); ++i) {
      const auto& op = inst.operands[i];
      if (op.kind == OperandKind::Label || (dest && !label && i == 0)) {
        continue;
      }
      args.push_back(value_of(inst, op));
      params.push_back(value_type(args.back()));
    }
    const auto name = detail::sanitize_identifier(inst.opcode);
    if (label != nullptr) {
      const auto temp = "$c" + std::to_string(cond_temps_++);
      body_.push_back(Statement::assign_invoke(
          temp, opcode_sig(name, "JavaScript.Boolean", std::move(params)),
          std::move(args)));
      body_.push_back(
          Statement::branch_if(temp, true, target_of(inst, *label)));
      return;
    }
    auto sig = opcode_sig(name, "Hbc.Unknown", std::move(params));
    if (dest) {
      define(*dest, written ? written->type_name() : std::string(kObjectType));
      body_.push_back(Statement::assign_invoke(reg_local(*dest), std::move(sig),
                                               std::move(args)));
    } else {
      body_.push_back(Statement::invoke(std::move(sig), std::move(args)));
    }
  }

  const hasm::Function& fn_;
  const hasm::Program& program_;
  const MethodIdentityMap& identities_;
  ir::MethodSig sig_;

  RegisterState state_;
  std::vector<Statement> body_;
  std::set<std::uint32_t> written_;
  std::map<std::uint32_t, std::string> register_types_;
  std::vector<std::string> uninitialized_;
  std::size_t cond_temps_ = 0;
  std::vector<CallSiteRecord> sites_;
};

}  // namespace

MethodIdentityMap assign_method_identities(const hasm::Program& program) {
  std::map<std::string, std::size_t> counts;
  for (const auto& fn : program.functions) {
    ++counts[detail::sanitize_identifier(fn.declaredName)];
  }
  std::map<std::uint32_t, std::string> names;
  for (const auto& fn : program.functions) {
    const auto base = detail::sanitize_identifier(fn.declaredName);
    const auto id = std::to_string(fn.id);
    std::string name;
    if (base.empty()) {
      name = "hermesAnonymousFunction_" + id;
    } else if (counts[base] > 1) {
      name = "hermesDuplicatedFunction_" + base + "_" + id;
    } else {
      name = base;
    }
    names[fn.id] = name;
  }
  // A unique declared name may equal a generated one; the generated names
  // carry the function id, so the plain name yields.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::string, std::vector<std::uint32_t>> owners;
    for (const auto& [id, name] : names) {
      owners[name].push_back(id);
    }
    for (const auto& [name, ids] : owners) {
      if (ids.size() < 2) {
        continue;
      }
      for (auto id : ids) {
        const auto suffix = "_" + std::to_string(id);
        if (!name.ends_with(suffix)) {
          names[id] = "hermesDuplicatedFunction_" + name + suffix;
          changed = true;
        }
      }
    }
  }

  MethodIdentityMap map;
  for (const auto& fn : program.functions) {
    const auto& name = names[fn.id];
    std::vector<std::string> params;
    for (std::uint32_t i = 0; i < fn.paramCount; ++i) {
      params.push_back("JavaScript.Parameter_" + std::to_string(i));
    }
    map.byFunctionId.emplace(
        fn.id, ir::make_signature(kHermesClass, name, std::move(params),
                                  "JavaScript.Function.HermesBytecode." +
                                      name + "." + std::string(kFunctionOutput)));
  }
  return map;
}

LiftedFunction lift_function(const hasm::Function& function,
                             const hasm::Program& program,
                             const MethodIdentityMap& identities) {
  return FunctionLifter(function, program, identities).run();
}

LiftResult lift_program(const hasm::Program& program) {
  LiftResult result;
  result.identities = assign_method_identities(program);
  for (const auto& fn : program.functions) {
    auto lifted = lift_function(fn, program, result.identities);
    if (fn.declaredName == "global") {
      result.globalMethods.push_back(lifted.method.sig);
    }
    result.callSites.insert(result.callSites.end(), lifted.callSites.begin(),
                            lifted.callSites.end());
    result.program.add_method(std::move(lifted.method));
  }
  return result;
}

std::vector<CallSiteRecord> record_call_sites(const LiftResult& lifted) {
  auto sites = lifted.callSites;
  std::stable_sort(sites.begin(), sites.end(),
                   [](const CallSiteRecord& a, const CallSiteRecord& b) {
                     const auto sa = a.callerSig.to_string();
                     const auto sb = b.callerSig.to_string();
                     if (sa != sb) {
                       return sa < sb;
                     }
                     return a.statementIndex < b.statementIndex;
                   });
  return sites;
}

}  // namespace hbcunify::lift
