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

#include "hbcunify/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "hbcunify/error.hpp"
#include "json.hpp"

namespace hbcunify::pipeline {

namespace {

using nlohmann::ordered_json;

ordered_json header(std::string_view report, const ConfigEcho& echo) {
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : echo) {
    config[k] = v;
  }
  return ordered_json{{"report", report},
                      {"toolVersion", tool_version()},
                      {"config", config}};
}

std::string finish(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json pct(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json coverage_json(const cg::CoverageReport& c) {
  return {{"callSites", c.callSites},
          {"direct", c.direct},
          {"bridged", c.bridged},
          {"builtin", c.builtin},
          {"unresolved", c.unresolved}};
}

}  // namespace

std::string_view tool_version() { return HBCUNIFY_VERSION; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot read " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size()))) {
    throw Error(ErrorCode::Io, "cannot write " + path.string());
  }
}

RootConfig parse_roots(std::string_view text) {
  RootConfig roots;
  for (const auto& entry : bridge::BuiltinCatalog::parse(text).entries) {
    (entry.front() == '<' ? roots.signatures : roots.entryClasses).push_back(entry);
  }
  return roots;
}

LiftOutput lift_document(std::string_view text,
                         std::optional<hasm::Dialect> variant) {
  LiftOutput out;
  out.program = variant ? hasm::parse_disassembly(hasm::normalize_variant(text, variant))
                        : hasm::parse_disassembly(text);
  out.lifted = lift::lift_program(out.program);
  out.truncations = hasm::detect_truncated_literals(out.program);
  for (const auto& m : out.lifted.program.methods()) {
    const auto report = ir::validate_body(m);
    if (!report.ok()) {
      out.validationFailures.emplace_back(m.sig.to_string(),
                                          report.violations.front().message);
    }
  }
  return out;
}

AppAnalysis analyze_app(std::string_view hasmText, std::string_view modelText,
                        const AnalysisOptions& options,
                        std::optional<hasm::Dialect> variant) {
  AppAnalysis a;
  a.lift = lift_document(hasmText, variant);
  a.model = java::load_class_model(modelText);
  a.bindings = java::extract_bindings(a.model);
  a.crossEdges = bridge::match_invocations(a.lift.lifted.callSites, a.bindings.bindings);
  a.unlinked = bridge::find_unlinked_bridge_calls(a.lift.lifted.callSites, a.crossEdges);
  cg::BuildOptions o;
  o.javaEntryClasses = options.roots.entryClasses;
  o.rootSignatures = options.roots.signatures;
  o.catalog = options.catalog;
  a.withoutBridge = cg::build_callgraph(a.lift.lifted, a.model, a.crossEdges, o,
                                        &a.coverageWithout);
  o.withBridge = true;
  a.withBridge = cg::build_callgraph(a.lift.lifted, a.model, a.crossEdges, o,
                                     &a.coverageWith);
  a.delta = cg::diff_callgraphs(a.withoutBridge, a.withBridge);
  return a;
}

std::string detect_report(hasm::BundleKind kind, const ConfigEcho& echo) {
  auto doc = header("detect", echo);
  doc["kind"] = hasm::to_string(kind);
  return finish(doc);
}

std::string lift_stats_report(const LiftOutput& out, const ConfigEcho& echo) {
  auto doc = header("lift", echo);
  doc["methods"] = out.lifted.program.methods().size();
  doc["statements"] = out.lifted.program.statement_count();
  doc["validationFailures"] = out.validationFailures.size();
  doc["callSites"] = out.lifted.callSites.size();
  doc["truncatedLiterals"] = out.truncations.size();
  ordered_json failures = ordered_json::array();
  for (const auto& [sig, msg] : out.validationFailures) {
    failures.push_back({{"method", sig}, {"violation", msg}});
  }
  doc["failures"] = failures;
  return finish(doc);
}

std::string truncation_report(const LiftOutput& out, const ConfigEcho& echo) {
  auto doc = header("truncation", echo);
  ordered_json list = ordered_json::array();
  for (const auto& w : out.truncations) {
    const auto* fn = [&]() -> const hasm::Function* {
      for (const auto& f : out.program.functions) {
        if (f.id == w.functionId) {
          return &f;
        }
      }
      return nullptr;
    }();
    ordered_json item{{"functionId", w.functionId},
                      {"instructionIndex", w.instructionIndex},
                      {"kind", hasm::to_string(w.literalKind)},
                      {"raw", w.rawText}};
    if (fn != nullptr && w.instructionIndex < fn->instructions.size()) {
      item["line"] = fn->instructions[w.instructionIndex].line;
    }
    list.push_back(item);
  }
  doc["count"] = out.truncations.size();
  doc["warnings"] = list;
  return finish(doc);
}

std::string descriptor_report(const LiftOutput& out, const ConfigEcho& echo) {
  auto doc = header("descriptors", echo);
  ordered_json list = ordered_json::array();
  for (const auto& s : lift::record_call_sites(out.lifted)) {
    ordered_json args = ordered_json::array();
    for (const auto& d : s.argDescriptors) {
      args.push_back(d.annotated());
    }
    list.push_back({{"caller", s.callerSig.to_string()},
                    {"statement", s.statementIndex},
                    {"opcode", s.opcode},
                    {"callee", s.calleeDescriptor.annotated()},
                    {"origin", lift::to_string(s.calleeDescriptor.origin)},
                    {"argCount", s.argCount},
                    {"args", args},
                    {"directTarget", s.directTarget ? ordered_json(s.directTarget->to_string())
                                                    : ordered_json(nullptr)}});
  }
  doc["callSites"] = list;
  return finish(doc);
}

std::string bindings_report(const java::BindingReport& report,
                            const ConfigEcho& echo) {
  auto doc = header("bindings", echo);
  const auto counts = java::count_bindings(report.bindings);
  doc["moduleApiCount"] = counts.moduleApiCount;
  doc["moduleMethodCount"] = counts.moduleMethodCount;
  doc["componentCount"] = counts.componentCount;
  doc["componentMethodCount"] = counts.componentMethodCount;
  ordered_json list = ordered_json::array();
  for (const auto& b : report.bindings) {
    ordered_json methods = ordered_json::object();
    for (const auto& [key, target] : b.methodMap) {
      methods[key] = target.signature().to_string();
    }
    list.push_back({{"kind", java::to_string(b.kind)},
                    {"exposedName", b.exposedName},
                    {"implClass", b.implClass},
                    {"specClass", b.specClass},
                    {"methods", methods}});
  }
  doc["bindings"] = list;
  ordered_json warnings = ordered_json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"kind", java::to_string(w.kind)},
                        {"class", w.className},
                        {"message", w.message}});
  }
  doc["warnings"] = warnings;
  return finish(doc);
}

std::string cross_edges_report(const std::vector<bridge::CrossLangEdge>& edges,
                               const std::vector<bridge::UnlinkedBridgeCall>& unlinked,
                               const ConfigEcho& echo) {
  auto doc = header("crossEdges", echo);
  ordered_json list = ordered_json::array();
  for (const auto& e : edges) {
    list.push_back({{"from", e.from.to_string()},
                    {"atStatement", e.atStatement},
                    {"to", e.target().to_string()},
                    {"module", e.viaName},
                    {"method", e.methodKey},
                    {"kind", java::to_string(e.viaKind)},
                    {"pattern", bridge::to_string(e.pattern)},
                    {"confidence", bridge::to_string(e.confidence)},
                    {"argCount", e.argCount},
                    {"descriptor", e.descriptor}});
  }
  doc["edges"] = list;
  ordered_json missed = ordered_json::array();
  for (const auto& u : unlinked) {
    missed.push_back({{"from", u.from.to_string()},
                      {"atStatement", u.atStatement},
                      {"descriptor", u.descriptor}});
  }
  doc["unlinkedBridgeCalls"] = missed;
  return finish(doc);
}

std::string delta_report(const AppAnalysis& a, const ConfigEcho& echo) {
  auto doc = header("callgraphDelta", echo);
  const auto& d = a.delta;
  doc["nodesBefore"] = d.nodesBefore;
  doc["edgesBefore"] = d.edgesBefore;
  doc["nodesAfter"] = d.nodesAfter;
  doc["edgesAfter"] = d.edgesAfter;
  doc["addedNodes"] = d.addedNodes;
  doc["addedEdges"] = d.addedEdges;
  doc["addedNodesPct"] = pct(d.addedNodesPct);
  doc["addedEdgesPct"] = pct(d.addedEdgesPct);
  doc["coverageWithoutBridge"] = coverage_json(a.coverageWithout);
  doc["coverageWithBridge"] = coverage_json(a.coverageWith);
  return finish(doc);
}

std::string taint_report(const taint::TaintResult& result, const ConfigEcho& echo) {
  auto doc = header("taint", echo);
  const auto body = nlohmann::ordered_json::parse(taint::findings_json(result));
  for (const auto& [k, v] : body.items()) {
    doc[k] = v;
  }
  return finish(doc);
}

std::string sankey_report(const taint::TaintResult& result, const ConfigEcho& echo) {
  auto doc = header("sankey", echo);
  const auto body = nlohmann::ordered_json::parse(
      taint::sankey_json(taint::categorize_findings(result.findings)));
  for (const auto& [k, v] : body.items()) {
    doc[k] = v;
  }
  return finish(doc);
}

}  // namespace hbcunify::pipeline
