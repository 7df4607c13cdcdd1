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

// Independent reference implementations used as test oracles. They favour
// obviousness over speed and share no code with the library.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hbcunify/hasm.hpp"
#include "hbcunify/ir.hpp"
#include "hbcunify/java_model.hpp"
#include "hbcunify/lifter.hpp"

namespace hbcunify::testing {

struct OracleCfg {
  /// (begin, end) instruction ranges.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::size_t> exits;
};

/// Per-instruction successor relation collapsed into maximal straight-line
/// runs.
OracleCfg brute_force_cfg(const hasm::Function& function);

/// The same shape recovered from a lifted IR method: blocks are statement
/// runs split at blockStarts, with edges from If/Goto/fall-through and exits
/// at Return.
OracleCfg ir_cfg(const ir::Method& method);

/// Number of instruction lines inside Function blocks, by a line classifier
/// written independently of the parser.
std::size_t count_instruction_lines(std::string_view text);

/// Number of lines beginning with `Function<` or `NCFunction<`.
std::size_t count_function_headers(std::string_view text);

/// Count of `"...` and numeric `...` truncation markers on instruction
/// lines whose literal has exactly 16 characters.
std::size_t grep_truncations(std::string_view text);

/// Reachable node set by repeated relaxation over an edge list.
std::set<std::string> fixpoint_reachable(
    const std::set<std::string>& roots,
    const std::vector<std::pair<std::string, std::string>>& edges);

/// Strict transitive closure of a parent relation, by relaxation until no
/// set grows. Names without an entry in `parents` are leaves.
std::map<std::string, std::set<std::string>> closure_supertypes(
    const std::map<std::string, std::vector<std::string>>& parents);

/// (caller, statement, exposed name, method key)
using MatchKey = std::tuple<std::string, std::size_t, std::string, std::string>;

/// Tries every (site, binding, method) triple against regexes over the
/// rendered callee descriptor.
std::set<MatchKey> naive_matches(
    const std::vector<lift::CallSiteRecord>& sites,
    const std::vector<java::ModuleBinding>& bindings);

/// `*` glob through std::regex.
bool regex_glob(const std::string& pattern, const std::string& text);

/// The same acceptance rule as the taint engine, re-derived by string
/// surgery on `<Class: Ret name(P)>`.
bool oracle_pattern_matches(const std::string& pattern, const std::string& id);

/// (source invoker, source, sink invoker, sink)
using TaintKey = std::tuple<std::string, std::string, std::string, std::string>;

/// Every invoker pair connected in the edge relation.
std::set<TaintKey> enumerate_taint(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& sourcePatterns,
    const std::vector<std::string>& sinkPatterns);

/// Lexicographically least among shortest walks, by dynamic programming over
/// walk length. Empty when unreachable.
std::vector<std::string> dp_shortest_path(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::string& from, const std::string& to);

}  // namespace hbcunify::testing
