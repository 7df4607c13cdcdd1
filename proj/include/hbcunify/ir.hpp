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

// Unified three-address IR. Every invoke is static-style: the class name of
// the callee signature encodes the receiver chain, as in
// `staticinvoke <Hbc.GlobalObject.console: ... log(...)>(r2, r0)`.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace hbcunify::ir {

struct MethodSig {
  std::string className;
  std::string methodName;
  std::vector<std::string> paramTypes;
  std::string returnType;

  /// `<Class: Ret name(P1,P2)>`
  std::string to_string() const;
  /// `Ret name(P1,P2)`
  std::string sub_signature() const;
  std::size_t arity() const { return paramTypes.size(); }

  auto operator<=>(const MethodSig&) const = default;
  bool operator==(const MethodSig&) const = default;
};

/// Trims every component and checks it. Throws EmptyName for an empty
/// class, method, return, or parameter type, and InvalidName when a
/// component contains whitespace or one of `<>(),:;"`.
MethodSig make_signature(std::string_view className,
                         std::string_view methodName,
                         std::vector<std::string> paramTypes,
                         std::string_view returnType);

/// Parses `<Class: Ret name(P1,P2)>`; nullopt when malformed.
std::optional<MethodSig> parse_signature(std::string_view text);

/// True when `name` can be used as a method or class name component.
bool is_valid_name(std::string_view name);

struct Constant {
  enum class Kind { Integer, Double, String, Null, Undefined };

  Kind kind = Kind::Undefined;
  std::int64_t integer = 0;
  double number = 0.0;
  std::string text;

  static Constant of_int(std::int64_t v);
  static Constant of_double(double v);
  static Constant of_string(std::string v);
  static Constant null();
  static Constant undefined();

  bool operator==(const Constant& other) const;
};

struct LocalRef {
  std::string name;
  bool operator==(const LocalRef&) const = default;
};

using Value = std::variant<LocalRef, Constant>;

std::string render(const Value& value);
std::string render(const Constant& constant);
/// Symbolic type of a value used as an invoke argument.
std::string_view constant_type(const Constant& constant);

enum class StmtKind {
  IdentityParam,
  Assign,
  StaticInvoke,
  AssignInvoke,
  If,
  Goto,
  Return,
};

std::string_view to_string(StmtKind kind);

struct Statement {
  StmtKind kind = StmtKind::Return;
  /// Defined local (IdentityParam, Assign, AssignInvoke) or the condition
  /// local of an If.
  std::string target;
  std::size_t paramIndex = 0;
  std::string paramType;
  /// Assign source or Return value.
  std::optional<Value> value;
  MethodSig callee;
  std::vector<Value> args;
  bool branchWhenTrue = true;
  std::size_t branchTarget = 0;

  static Statement identity(std::string local, std::size_t index,
                            std::string type);
  static Statement assign(std::string local, Value value);
  static Statement invoke(MethodSig callee, std::vector<Value> args);
  static Statement assign_invoke(std::string local, MethodSig callee,
                                 std::vector<Value> args);
  static Statement branch_if(std::string condition, bool whenTrue,
                             std::size_t target);
  static Statement jump(std::size_t target);
  static Statement ret(std::optional<Value> value = std::nullopt);

  bool is_invoke() const {
    return kind == StmtKind::StaticInvoke || kind == StmtKind::AssignInvoke;
  }
  bool is_branch() const {
    return kind == StmtKind::If || kind == StmtKind::Goto;
  }
  bool defines() const {
    return kind == StmtKind::IdentityParam || kind == StmtKind::Assign ||
           kind == StmtKind::AssignInvoke;
  }
  /// Locals read by this statement, in operand order.
  std::vector<std::string> uses() const;
};

struct LocalDecl {
  std::string name;
  std::string type;
  bool operator==(const LocalDecl&) const = default;
};

struct Method {
  MethodSig sig;
  std::vector<LocalDecl> locals;
  std::vector<Statement> statements;
  std::set<std::size_t> blockStarts;

  const LocalDecl* find_local(std::string_view name) const;
};

/// Methods of one IR class. Signatures are unique under
/// (className, methodName, paramTypes).
class Program {
 public:
  explicit Program(std::string className = "HermesByteCode")
      : className_(std::move(className)) {}

  const std::string& class_name() const { return className_; }
  const std::vector<Method>& methods() const { return methods_; }
  std::vector<Method>& methods() { return methods_; }

  /// Throws DuplicateSignature when the key is already present.
  void add_method(Method method);
  const Method* find(const MethodSig& sig) const;

  std::size_t statement_count() const;

 private:
  using Key = std::tuple<std::string, std::string, std::vector<std::string>>;

  std::string className_;
  std::vector<Method> methods_;
  std::set<Key> keys_;
};

// Validation ------------------------------------------------------------------

enum class Rule {
  UndeclaredLocal,
  DuplicateLocal,
  BadBranchTarget,
  MissingTerminator,
  IdentityNotPrefix,
  UseBeforeDef,
  ArityMismatch,
};

std::string_view to_string(Rule rule);

struct Violation {
  std::size_t statementIndex = 0;
  Rule rule = Rule::UndeclaredLocal;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(Rule rule) const;
};

/// Structural checks. Definite assignment is approximated flow-insensitively:
/// a use is accepted when some definition of the local has a lower index.
ValidationReport validate_body(const Method& method);

// Printing --------------------------------------------------------------------

std::string print_ir(const Method& method);
std::string print_ir(const Program& program);

}  // namespace hbcunify::ir
