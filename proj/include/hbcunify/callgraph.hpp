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

// Unified call graph over lifted JavaScript methods, Java methods, and
// built-in APIs.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hbcunify/bridge.hpp"
#include "hbcunify/java_model.hpp"
#include "hbcunify/lifter.hpp"

namespace hbcunify::cg {

enum class Side { Js, Java, Builtin };
enum class EdgeKind { JsIntra, JavaIntra, Bridge, Builtin };

std::string_view to_string(Side side);
std::string_view to_string(EdgeKind kind);
std::optional<Side> side_from_string(std::string_view name);
std::optional<EdgeKind> edge_kind_from_string(std::string_view name);

/// Node id of a built-in API: `<Builtin: console.log>`.
std::string builtin_node(std::string_view name);

struct Node {
  std::string id;
  Side side = Side::Js;
  /// Java method referenced by a call summary but absent from the model.
  bool external = false;

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::JsIntra;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

class CallGraph {
 public:
  /// Keeps the first registration of a node id.
  void add_node(Node node);
  /// Both endpoints must already be nodes.
  void add_edge(Edge edge);
  void add_root(std::string id);

  const std::map<std::string, Node>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::set<std::string>& roots() const { return roots_; }

  bool has_node(std::string_view id) const { return nodes_.contains(std::string(id)); }
  const Node* node(std::string_view id) const;
  /// Outgoing edges of `id`, sorted.
  std::vector<Edge> out_edges(std::string_view id) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool operator==(const CallGraph&) const = default;

 private:
  std::map<std::string, Node> nodes_;
  std::set<Edge> edges_;
  std::set<std::string> roots_;
  std::map<std::string, std::vector<Edge>, std::less<>> out_;
};

struct BuildOptions {
  bool withBridge = false;
  /// Every method of these classes becomes a root.
  std::vector<std::string> javaEntryClasses;
  /// Additional roots by full signature.
  std::vector<std::string> rootSignatures;
  bridge::BuiltinCatalog catalog = bridge::BuiltinCatalog::defaults();
};

struct CoverageReport {
  std::size_t callSites = 0;
  std::size_t direct = 0;
  std::size_t bridged = 0;
  std::size_t builtin = 0;
  /// Call sites that produced no edge.
  std::size_t unresolved = 0;
};

/// Graph of the methods reachable from the roots: `global` functions plus
/// configured Java entry points. Throws UnknownRoot for a configured root
/// that names nothing in the program or model.
CallGraph build_callgraph(const lift::LiftResult& lifted,
                          const java::ClassModel& model,
                          const std::vector<bridge::CrossLangEdge>& crossEdges,
                          const BuildOptions& options,
                          CoverageReport* coverage = nullptr);

/// Nodes reachable from the roots along `edges`.
std::set<std::string> reachable(const CallGraph& graph);

struct DeltaStats {
  std::size_t nodesBefore = 0;
  std::size_t edgesBefore = 0;
  std::size_t nodesAfter = 0;
  std::size_t edgesAfter = 0;
  long long addedNodes = 0;
  long long addedEdges = 0;
  /// added / before * 100, rounded to two decimals; empty when before is 0.
  std::optional<double> addedNodesPct;
  std::optional<double> addedEdgesPct;
};

DeltaStats diff_counts(std::size_t nodesBefore, std::size_t edgesBefore,
                       std::size_t nodesAfter, std::size_t edgesAfter);
DeltaStats diff_callgraphs(const CallGraph& before, const CallGraph& after);

enum class Format { Dot, Json };
std::optional<Format> format_from_string(std::string_view name);

std::string export_graph(const CallGraph& graph, Format format);
/// Inverse of the JSON export. Throws SchemaViolation.
CallGraph graph_from_json(std::string_view text);

}  // namespace hbcunify::cg
