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

// Source/sink taint over the unified call graph. A finding is a call-graph
// reachability fact between a node invoking a source and a node invoking a
// sink; no data flow through variables is tracked, so results over-approximate.

#include <chrono>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbcunify/callgraph.hpp"

namespace hbcunify::taint {

struct PatternRule {
  /// Signature pattern; `*` matches any run of characters, dots included.
  std::string pattern;
  std::string category;

  bool operator==(const PatternRule&) const = default;
};

struct SourceSinkSpec {
  std::vector<PatternRule> sources;
  std::vector<PatternRule> sinks;

  /// Bundled Android defaults grouped by SuSi-style categories.
  static SourceSinkSpec defaults();
};

/// Parses `{"sources": [{"pattern", "category"}], "sinks": [...]}`. An empty
/// or blank document yields an empty spec. Throws SchemaViolation.
SourceSinkSpec load_sources_sinks(std::string_view document);
std::string dump_sources_sinks(const SourceSinkSpec& spec);

/// Matches a node id against one pattern. Signatures are tried as
/// `Class: Ret name(Params)`, `Class.name(Params)` and `Class.name`;
/// angle brackets around the pattern are ignored.
bool pattern_matches(std::string_view pattern, std::string_view nodeId);

/// Category of the first matching rule, or empty.
std::string match_category(const std::vector<PatternRule>& rules,
                           std::string_view nodeId);

struct Endpoint {
  /// Graph node that invokes the source or sink method.
  std::string node;
  /// The source or sink method itself.
  std::string signature;
  std::string category;

  auto operator<=>(const Endpoint&) const = default;
  bool operator==(const Endpoint&) const = default;
};

struct TaintFinding {
  Endpoint source;
  Endpoint sink;
  /// Shortest path from a root to source.node.
  std::vector<std::string> entryPath;
  /// Shortest path from source.node to sink.node.
  std::vector<std::string> path;
  /// Some edge along entryPath or path is a Bridge edge.
  bool crossesBridge = false;

  auto operator<=>(const TaintFinding&) const = default;
  bool operator==(const TaintFinding&) const = default;
};

struct TaintOptions {
  std::chrono::milliseconds timeout = std::chrono::minutes(30);
};

struct TaintResult {
  std::vector<TaintFinding> findings;
  /// The budget ran out; findings are partial.
  bool timedOut = false;
};

TaintResult run_taint(const cg::CallGraph& graph, const SourceSinkSpec& spec,
                      const TaintOptions& options = {});

/// Shortest path from `from` to `to`, ties broken by lexicographic node order.
/// Empty when `to` is unreachable.
std::vector<std::string> shortest_path(const cg::CallGraph& graph,
                                       const std::string& from,
                                       const std::string& to);

bool path_crosses_bridge(const cg::CallGraph& graph,
                         const std::vector<std::string>& path);

struct CategorySummary {
  std::map<std::pair<std::string, std::string>, std::size_t> flows;
  std::size_t total = 0;
};

CategorySummary categorize_findings(const std::vector<TaintFinding>& findings);

/// `{"links": [{"source", "target", "value"}], "total"}`
std::string sankey_json(const CategorySummary& summary);
std::string findings_json(const TaintResult& result);
/// One row per finding, aligned columns.
std::string findings_table(const std::vector<TaintFinding>& findings);

}  // namespace hbcunify::taint
