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
#include <cctype>
#include <charconv>
#include <cmath>

#include "hbcunify/error.hpp"
#include "hbcunify/ir.hpp"

namespace hbcunify::ir {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += parts[i];
  }
  return out;
}

std::string checked(std::string_view raw, std::string_view what) {
  auto t = trim(raw);
  if (t.empty()) {
    throw Error(ErrorCode::EmptyName, "empty " + std::string(what));
  }
  if (!is_valid_name(t)) {
    throw Error(ErrorCode::InvalidName,
                std::string(what) + " '" + std::string(t) + "' is not a name");
  }
  return std::string(t);
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty()) {
    return false;
  }
  static constexpr std::string_view kForbidden = "<>(),:;\"";
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) ||
        kForbidden.find(c) != std::string_view::npos) {
      return false;
    }
  }
  return true;
}

std::string MethodSig::sub_signature() const {
  return returnType + " " + methodName + "(" + join(paramTypes, ",") + ")";
}

std::string MethodSig::to_string() const {
  return "<" + className + ": " + sub_signature() + ">";
}

MethodSig make_signature(std::string_view className,
                         std::string_view methodName,
                         std::vector<std::string> paramTypes,
                         std::string_view returnType) {
  MethodSig sig;
  sig.className = checked(className, "class name");
  sig.methodName = checked(methodName, "method name");
  sig.returnType = checked(returnType, "return type");
  sig.paramTypes.reserve(paramTypes.size());
  for (const auto& p : paramTypes) {
    sig.paramTypes.push_back(checked(p, "parameter type"));
  }
  return sig;
}

std::optional<MethodSig> parse_signature(std::string_view text) {
  auto t = trim(text);
  if (t.size() < 2 || t.front() != '<' || t.back() != '>') {
    return std::nullopt;
  }
  t = t.substr(1, t.size() - 2);
  auto colon = t.find(':');
  auto open = t.find('(');
  if (colon == std::string_view::npos || open == std::string_view::npos ||
      open < colon || !t.ends_with(")")) {
    return std::nullopt;
  }
  auto cls = t.substr(0, colon);
  auto head = trim(t.substr(colon + 1, open - colon - 1));
  auto space = head.rfind(' ');
  if (space == std::string_view::npos) {
    return std::nullopt;
  }
  auto params_text = t.substr(open + 1, t.size() - open - 2);
  std::vector<std::string> params;
  if (!trim(params_text).empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = params_text.find(',', start);
      params.emplace_back(trim(params_text.substr(start, comma - start)));
      if (comma == std::string_view::npos) {
        break;
      }
      start = comma + 1;
    }
  }
  try {
    return make_signature(cls, head.substr(space + 1), std::move(params),
                          head.substr(0, space));
  } catch (const Error&) {
    return std::nullopt;
  }
}

Constant Constant::of_int(std::int64_t v) {
  Constant c;
  c.kind = Kind::Integer;
  c.integer = v;
  return c;
}

Constant Constant::of_double(double v) {
  Constant c;
  c.kind = Kind::Double;
  c.number = v;
  return c;
}

Constant Constant::of_string(std::string v) {
  Constant c;
  c.kind = Kind::String;
  c.text = std::move(v);
  return c;
}

Constant Constant::null() {
  Constant c;
  c.kind = Kind::Null;
  return c;
}

Constant Constant::undefined() { return Constant{}; }

bool Constant::operator==(const Constant& other) const {
  if (kind != other.kind) {
    return false;
  }
  switch (kind) {
    case Kind::Integer: return integer == other.integer;
    case Kind::Double:
      return number == other.number ||
             (std::isnan(number) && std::isnan(other.number));
    case Kind::String: return text == other.text;
    default: return true;
  }
}

std::string render(const Constant& c) {
  switch (c.kind) {
    case Constant::Kind::Integer: return std::to_string(c.integer);
    case Constant::Kind::Double: {
      if (std::isnan(c.number)) return "NaN";
      if (std::isinf(c.number)) return c.number > 0 ? "Infinity" : "-Infinity";
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, c.number);
      std::string s(buf, ptr);
      if (s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
      }
      return s;
    }
    case Constant::Kind::String: {
      std::string out = "\"";
      for (char ch : c.text) {
        switch (ch) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          case '\r': out += "\\r"; break;
          default: out.push_back(ch);
        }
      }
      out += "\"";
      return out;
    }
    case Constant::Kind::Null: return "null";
    case Constant::Kind::Undefined: return "undefined";
  }
  return "undefined";
}

std::string render(const Value& value) {
  if (const auto* local = std::get_if<LocalRef>(&value)) {
    return local->name;
  }
  return render(std::get<Constant>(value));
}

std::string_view constant_type(const Constant& c) {
  switch (c.kind) {
    case Constant::Kind::Integer:
    case Constant::Kind::Double: return "JavaScript.Number";
    case Constant::Kind::String: return "JavaScript.String";
    case Constant::Kind::Null: return "JavaScript.Null";
    case Constant::Kind::Undefined: return "JavaScript.Undefined";
  }
  return "JavaScript.Object";
}

std::string_view to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::IdentityParam: return "IdentityParam";
    case StmtKind::Assign: return "Assign";
    case StmtKind::StaticInvoke: return "StaticInvoke";
    case StmtKind::AssignInvoke: return "AssignInvoke";
    case StmtKind::If: return "If";
    case StmtKind::Goto: return "Goto";
    case StmtKind::Return: return "Return";
  }
  return "?";
}

Statement Statement::identity(std::string local, std::size_t index,
                              std::string type) {
  Statement s;
  s.kind = StmtKind::IdentityParam;
  s.target = std::move(local);
  s.paramIndex = index;
  s.paramType = std::move(type);
  return s;
}

Statement Statement::assign(std::string local, Value value) {
  Statement s;
  s.kind = StmtKind::Assign;
  s.target = std::move(local);
  s.value = std::move(value);
  return s;
}

Statement Statement::invoke(MethodSig callee, std::vector<Value> args) {
  Statement s;
  s.kind = StmtKind::StaticInvoke;
  s.callee = std::move(callee);
  s.args = std::move(args);
  return s;
}

Statement Statement::assign_invoke(std::string local, MethodSig callee,
                                   std::vector<Value> args) {
  Statement s = invoke(std::move(callee), std::move(args));
  s.kind = StmtKind::AssignInvoke;
  s.target = std::move(local);
  return s;
}

Statement Statement::branch_if(std::string condition, bool whenTrue,
                               std::size_t target) {
  Statement s;
  s.kind = StmtKind::If;
  s.target = std::move(condition);
  s.branchWhenTrue = whenTrue;
  s.branchTarget = target;
  return s;
}

Statement Statement::jump(std::size_t target) {
  Statement s;
  s.kind = StmtKind::Goto;
  s.branchTarget = target;
  return s;
}

Statement Statement::ret(std::optional<Value> value) {
  Statement s;
  s.kind = StmtKind::Return;
  s.value = std::move(value);
  return s;
}

std::vector<std::string> Statement::uses() const {
  std::vector<std::string> out;
  auto add = [&](const Value& v) {
    if (const auto* local = std::get_if<LocalRef>(&v)) {
      out.push_back(local->name);
    }
  };
  switch (kind) {
    case StmtKind::Assign:
    case StmtKind::Return:
      if (value) add(*value);
      break;
    case StmtKind::StaticInvoke:
    case StmtKind::AssignInvoke:
      for (const auto& a : args) add(a);
      break;
    case StmtKind::If:
      out.push_back(target);
      break;
    default:
      break;
  }
  return out;
}

const LocalDecl* Method::find_local(std::string_view name) const {
  for (const auto& l : locals) {
    if (l.name == name) {
      return &l;
    }
  }
  return nullptr;
}

void Program::add_method(Method method) {
  Key key{method.sig.className, method.sig.methodName, method.sig.paramTypes};
  if (!keys_.insert(key).second) {
    throw Error(ErrorCode::DuplicateSignature,
                "signature " + method.sig.to_string() + " already present");
  }
  methods_.push_back(std::move(method));
}

const Method* Program::find(const MethodSig& sig) const {
  for (const auto& m : methods_) {
    if (m.sig == sig) {
      return &m;
    }
  }
  return nullptr;
}

std::size_t Program::statement_count() const {
  std::size_t n = 0;
  for (const auto& m : methods_) {
    n += m.statements.size();
  }
  return n;
}

}  // namespace hbcunify::ir
