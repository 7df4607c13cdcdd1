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

#include "hbcunify/ir.hpp"

namespace hbcunify::ir {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::UndeclaredLocal: return "UndeclaredLocal";
    case Rule::DuplicateLocal: return "DuplicateLocal";
    case Rule::BadBranchTarget: return "BadBranchTarget";
    case Rule::MissingTerminator: return "MissingTerminator";
    case Rule::IdentityNotPrefix: return "IdentityNotPrefix";
    case Rule::UseBeforeDef: return "UseBeforeDef";
    case Rule::ArityMismatch: return "ArityMismatch";
  }
  return "?";
}

bool ValidationReport::has(Rule rule) const {
  for (const auto& v : violations) {
    if (v.rule == rule) {
      return true;
    }
  }
  return false;
}

ValidationReport validate_body(const Method& method) {
  ValidationReport report;
  auto flag = [&](std::size_t index, Rule rule, std::string message) {
    report.violations.push_back({index, rule, std::move(message)});
  };
  const auto& body = method.statements;

  std::map<std::string, std::size_t> declared;
  for (const auto& local : method.locals) {
    if (!declared.emplace(local.name, 0).second) {
      flag(0, Rule::DuplicateLocal, "local " + local.name + " declared twice");
    }
  }

  // Lowest statement index defining each local.
  std::map<std::string, std::size_t> first_def;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].defines()) {
      first_def.emplace(body[i].target, i);
    }
  }

  bool in_prefix = true;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto& s = body[i];
    if (s.kind == StmtKind::IdentityParam) {
      if (!in_prefix) {
        flag(i, Rule::IdentityNotPrefix,
             "identity statement after the parameter prefix");
      }
    } else {
      in_prefix = false;
    }

    if (s.defines() && !declared.contains(s.target)) {
      flag(i, Rule::UndeclaredLocal, "assignment to undeclared " + s.target);
    }
    for (const auto& use : s.uses()) {
      if (!declared.contains(use)) {
        flag(i, Rule::UndeclaredLocal, "use of undeclared " + use);
        continue;
      }
      auto def = first_def.find(use);
      if (def == first_def.end() || def->second >= i) {
        flag(i, Rule::UseBeforeDef, use + " read before any definition");
      }
    }

    if (s.is_branch()) {
      if (s.branchTarget >= body.size()) {
        flag(i, Rule::BadBranchTarget,
             "branch to " + std::to_string(s.branchTarget) + " past the end");
      } else if (!method.blockStarts.contains(s.branchTarget)) {
        flag(i, Rule::BadBranchTarget,
             "branch to " + std::to_string(s.branchTarget) +
                 " which starts no block");
      }
    }

    if (s.is_invoke() && s.callee.arity() != s.args.size()) {
      flag(i, Rule::ArityMismatch,
           s.callee.to_string() + " takes " +
               std::to_string(s.callee.arity()) + " arguments, given " +
               std::to_string(s.args.size()));
    }
  }

  for (auto start : method.blockStarts) {
    if (start >= body.size()) {
      flag(start, Rule::BadBranchTarget,
           "block start " + std::to_string(start) + " past the end");
    }
  }

  if (body.empty()) {
    flag(0, Rule::MissingTerminator, "empty body");
  } else if (body.back().kind != StmtKind::Return &&
             body.back().kind != StmtKind::Goto) {
    flag(body.size() - 1, Rule::MissingTerminator,
         "control falls off the end of the body");
  }
  return report;
}

}  // namespace hbcunify::ir
