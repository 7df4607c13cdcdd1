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

#include <map>
#include <sstream>

#include "hbcunify/ir.hpp"

namespace hbcunify::ir {

namespace {

std::string render_args(const std::vector<Value>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += render(args[i]);
  }
  return out + ")";
}

void print_method(std::ostream& os, const Method& m) {
  std::map<std::size_t, std::size_t> labels;
  for (const auto& s : m.statements) {
    if (s.is_branch()) {
      labels.emplace(s.branchTarget, 0);
    }
  }
  std::size_t next = 1;
  for (auto& [index, number] : labels) {
    number = next++;
  }
  auto label = [&](std::size_t target) {
    auto it = labels.find(target);
    return "label" + std::to_string(it == labels.end() ? 0 : it->second);
  };

  os << "    public static " << m.sig.returnType << " " << m.sig.methodName
     << "(";
  for (std::size_t i = 0; i < m.sig.paramTypes.size(); ++i) {
    os << (i ? ", " : "") << m.sig.paramTypes[i];
  }
  os << ") {\n";
  for (const auto& local : m.locals) {
    os << "        " << local.type << " " << local.name << ";\n";
  }
  if (!m.locals.empty()) {
    os << "\n";
  }
  for (std::size_t i = 0; i < m.statements.size(); ++i) {
    if (labels.contains(i)) {
      os << "     " << label(i) << ":\n";
    }
    const auto& s = m.statements[i];
    os << "        ";
    switch (s.kind) {
      case StmtKind::IdentityParam:
        os << s.target << " := @parameter" << s.paramIndex << ": "
           << s.paramType;
        break;
      case StmtKind::Assign:
        os << s.target << " = " << render(*s.value);
        break;
      case StmtKind::StaticInvoke:
        os << "staticinvoke " << s.callee.to_string() << render_args(s.args);
        break;
      case StmtKind::AssignInvoke:
        os << s.target << " = staticinvoke " << s.callee.to_string()
           << render_args(s.args);
        break;
      case StmtKind::If:
        os << "if " << s.target << " == " << (s.branchWhenTrue ? "true" : "false")
           << " goto " << label(s.branchTarget);
        break;
      case StmtKind::Goto:
        os << "goto " << label(s.branchTarget);
        break;
      case StmtKind::Return:
        os << "return";
        if (s.value) {
          os << " " << render(*s.value);
        }
        break;
    }
    os << ";\n";
  }
  os << "    }\n";
}

}  // namespace

std::string print_ir(const Method& method) {
  std::ostringstream os;
  print_method(os, method);
  return os.str();
}

std::string print_ir(const Program& program) {
  std::ostringstream os;
  os << "public class " << program.class_name() << " {\n";
  for (std::size_t i = 0; i < program.methods().size(); ++i) {
    if (i > 0) {
      os << "\n";
    }
    print_method(os, program.methods()[i]);
  }
  os << "}\n";
  return os.str();
}

}  // namespace hbcunify::ir
