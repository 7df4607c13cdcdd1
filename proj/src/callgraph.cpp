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

#include "hbcunify/callgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "hbcunify/error.hpp"
#include "json.hpp"

namespace hbcunify::cg {

namespace {

std::string normalized_signature(std::string_view text) {
  auto sig = ir::parse_signature(text);
  return sig ? sig->to_string() : std::string(text);
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::optional<double> percent(std::size_t before, long long added) {
  if (before == 0) {
    return std::nullopt;
  }
  const double pct = static_cast<double>(added) / static_cast<double>(before) *
                     100.0;
  return std::round(pct * 100.0) / 100.0;
}

}  // namespace

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Js: return "Js";
    case Side::Java: return "Java";
    case Side::Builtin: return "Builtin";
  }
  return "Js";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::JsIntra: return "JsIntra";
    case EdgeKind::JavaIntra: return "JavaIntra";
    case EdgeKind::Bridge: return "Bridge";
    case EdgeKind::Builtin: return "Builtin";
  }
  return "JsIntra";
}

std::optional<Side> side_from_string(std::string_view name) {
  for (auto s : {Side::Js, Side::Java, Side::Builtin}) {
    if (to_string(s) == name) {
      return s;
    }
  }
  return std::nullopt;
}

std::optional<EdgeKind> edge_kind_from_string(std::string_view name) {
  for (auto k : {EdgeKind::JsIntra, EdgeKind::JavaIntra, EdgeKind::Bridge,
                 EdgeKind::Builtin}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  return std::nullopt;
}

std::string builtin_node(std::string_view name) {
  return "<Builtin: " + std::string(name) + ">";
}

void CallGraph::add_node(Node node) {
  auto id = node.id;
  nodes_.emplace(std::move(id), std::move(node));
}

void CallGraph::add_edge(Edge edge) {
  if (!nodes_.contains(edge.from) || !nodes_.contains(edge.to)) {
    throw Error(ErrorCode::SchemaViolation,
                "edge " + edge.from + " -> " + edge.to + " has an unknown endpoint");
  }
  if (edges_.insert(edge).second) {
    auto& out = out_[edge.from];
    out.insert(std::upper_bound(out.begin(), out.end(), edge), edge);
  }
}

void CallGraph::add_root(std::string id) {
  if (!nodes_.contains(id)) {
    throw Error(ErrorCode::UnknownRoot, "root " + id + " is not a node");
  }
  roots_.insert(std::move(id));
}

const Node* CallGraph::node(std::string_view id) const {
  auto it = nodes_.find(std::string(id));
  return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<Edge> CallGraph::out_edges(std::string_view id) const {
  auto it = out_.find(id);
  return it == out_.end() ? std::vector<Edge>{} : it->second;
}

std::set<std::string> reachable(const CallGraph& graph) {
  std::set<std::string> seen(graph.roots().begin(), graph.roots().end());
  std::deque<std::string> work(seen.begin(), seen.end());
  while (!work.empty()) {
    const auto id = std::move(work.front());
    work.pop_front();
    for (const auto& e : graph.out_edges(id)) {
      if (seen.insert(e.to).second) {
        work.push_back(e.to);
      }
    }
  }
  return seen;
}

CallGraph build_callgraph(const lift::LiftResult& lifted,
                          const java::ClassModel& model,
                          const std::vector<bridge::CrossLangEdge>& crossEdges,
                          const BuildOptions& options,
                          CoverageReport* coverage) {
  // The whole program first; reachability trims it afterwards.
  CallGraph full;
  for (const auto& m : lifted.program.methods()) {
    full.add_node({m.sig.to_string(), Side::Js, false});
  }
  for (const auto& [name, cls] : model.classes()) {
    for (const auto& m : cls.methods) {
      full.add_node({java::method_signature(name, m).to_string(), Side::Java,
                     false});
    }
  }
  for (const auto& [name, cls] : model.classes()) {
    for (const auto& m : cls.methods) {
      const auto from = java::method_signature(name, m).to_string();
      for (const auto& call : m.calls) {
        const auto to = normalized_signature(call);
        full.add_node({to, Side::Java, true});
        full.add_edge({from, to, EdgeKind::JavaIntra});
      }
    }
  }

  std::set<std::pair<std::string, std::size_t>> handled;
  for (const auto& site : lifted.callSites) {
    if (site.directTarget) {
      full.add_edge({site.callerSig.to_string(), site.directTarget->to_string(),
                     EdgeKind::JsIntra});
      handled.emplace(site.callerSig.to_string(), site.statementIndex);
    }
  }
  std::size_t bridged = 0;
  if (options.withBridge) {
    std::set<std::pair<std::string, std::size_t>> bridged_sites;
    for (const auto& e : crossEdges) {
      const auto to = e.target().to_string();
      full.add_node({to, Side::Java, model.find(e.to.implClass) == nullptr});
      full.add_edge({e.from.to_string(), to, EdgeKind::Bridge});
      bridged_sites.emplace(e.from.to_string(), e.atStatement);
    }
    for (const auto& key : bridged_sites) {
      bridged += handled.insert(key).second ? 1 : 0;
    }
  }
  std::size_t builtin = 0;
  for (const auto& r : bridge::recover_builtins(lifted.callSites, options.catalog)) {
    const auto key = std::make_pair(r.callSite.callerSig.to_string(),
                                    r.callSite.statementIndex);
    const auto id = builtin_node(r.builtinName);
    full.add_node({id, Side::Builtin, false});
    full.add_edge({key.first, id, EdgeKind::Builtin});
    builtin += handled.insert(key).second ? 1 : 0;
  }

  for (const auto& sig : lifted.globalMethods) {
    full.add_root(sig.to_string());
  }
  for (const auto& cls_name : options.javaEntryClasses) {
    const auto* cls = model.find(cls_name);
    if (cls == nullptr) {
      throw Error(ErrorCode::UnknownRoot,
                  "entry class " + cls_name + " is not in the class model");
    }
    for (const auto& m : cls->methods) {
      full.add_root(java::method_signature(cls_name, m).to_string());
    }
  }
  for (const auto& sig : options.rootSignatures) {
    const auto id = normalized_signature(sig);
    if (!full.has_node(id)) {
      throw Error(ErrorCode::UnknownRoot, "root " + sig + " is not a method");
    }
    full.add_root(id);
  }

  const auto keep = reachable(full);
  CallGraph graph;
  for (const auto& id : keep) {
    graph.add_node(*full.node(id));
  }
  for (const auto& e : full.edges()) {
    if (keep.contains(e.from)) {
      graph.add_edge(e);
    }
  }
  for (const auto& r : full.roots()) {
    graph.add_root(r);
  }

  if (coverage != nullptr) {
    coverage->callSites = lifted.callSites.size();
    coverage->direct = static_cast<std::size_t>(std::count_if(
        lifted.callSites.begin(), lifted.callSites.end(),
        [](const auto& s) { return s.directTarget.has_value(); }));
    coverage->bridged = bridged;
    coverage->builtin = builtin;
    coverage->unresolved = coverage->callSites - handled.size();
  }
  return graph;
}

DeltaStats diff_counts(std::size_t nodesBefore, std::size_t edgesBefore,
                       std::size_t nodesAfter, std::size_t edgesAfter) {
  DeltaStats d;
  d.nodesBefore = nodesBefore;
  d.edgesBefore = edgesBefore;
  d.nodesAfter = nodesAfter;
  d.edgesAfter = edgesAfter;
  d.addedNodes = static_cast<long long>(nodesAfter) -
                 static_cast<long long>(nodesBefore);
  d.addedEdges = static_cast<long long>(edgesAfter) -
                 static_cast<long long>(edgesBefore);
  d.addedNodesPct = percent(nodesBefore, d.addedNodes);
  d.addedEdgesPct = percent(edgesBefore, d.addedEdges);
  return d;
}

DeltaStats diff_callgraphs(const CallGraph& before, const CallGraph& after) {
  return diff_counts(before.node_count(), before.edge_count(),
                     after.node_count(), after.edge_count());
}

std::optional<Format> format_from_string(std::string_view name) {
  if (name == "dot") {
    return Format::Dot;
  }
  if (name == "json") {
    return Format::Json;
  }
  return std::nullopt;
}

std::string export_graph(const CallGraph& graph, Format format) {
  if (format == Format::Json) {
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    for (const auto& [id, n] : graph.nodes()) {
      doc["nodes"].push_back(
          {{"id", id}, {"side", to_string(n.side)}, {"external", n.external}});
    }
    doc["edges"] = nlohmann::json::array();
    for (const auto& e : graph.edges()) {
      doc["edges"].push_back(
          {{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
    }
    doc["roots"] = graph.roots();
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "digraph callgraph {\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n";
  for (const auto& [id, n] : graph.nodes()) {
    const char* shape = n.side == Side::Js     ? "ellipse"
                        : n.side == Side::Java ? "box"
                                               : "diamond";
    os << "  " << dot_quote(id) << " [shape=" << shape;
    if (n.external) {
      os << ", style=dashed";
    }
    if (graph.roots().contains(id)) {
      os << ", peripheries=2";
    }
    os << "];\n";
  }
  for (const auto& e : graph.edges()) {
    const char* color = e.kind == EdgeKind::JsIntra     ? "black"
                        : e.kind == EdgeKind::JavaIntra ? "blue"
                        : e.kind == EdgeKind::Bridge    ? "red"
                                                        : "gray";
    os << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to)
       << " [color=" << color << ", label=\"" << to_string(e.kind) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

CallGraph graph_from_json(std::string_view text) {
  using nlohmann::json;
  auto fail = [](const std::string& what) -> void {
    throw Error(ErrorCode::SchemaViolation, "call graph JSON: " + what);
  };
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  CallGraph graph;
  try {
    for (const auto& n : doc.at("nodes")) {
      auto side = side_from_string(n.at("side").get<std::string>());
      if (!side) {
        fail("unknown side " + n.at("side").dump());
      }
      graph.add_node({n.at("id").get<std::string>(), *side,
                      n.at("external").get<bool>()});
    }
    for (const auto& e : doc.at("edges")) {
      auto kind = edge_kind_from_string(e.at("kind").get<std::string>());
      if (!kind) {
        fail("unknown edge kind " + e.at("kind").dump());
      }
      graph.add_edge({e.at("from").get<std::string>(),
                      e.at("to").get<std::string>(), *kind});
    }
    for (const auto& r : doc.at("roots")) {
      graph.add_root(r.get<std::string>());
    }
  } catch (const json::exception& e) {
    fail(e.what());
  }
  return graph;
}

}  // namespace hbcunify::cg
