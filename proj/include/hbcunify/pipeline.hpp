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

// End-to-end pipeline steps shared by the command-line tool, the acceptance
// suite and the Python module, plus their JSON report renderings.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbcunify/bridge.hpp"
#include "hbcunify/callgraph.hpp"
#include "hbcunify/hasm.hpp"
#include "hbcunify/java_model.hpp"
#include "hbcunify/lifter.hpp"
#include "hbcunify/taint.hpp"

namespace hbcunify::pipeline {

std::string_view tool_version();

/// Throws Error(Io) when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Ordered key/value pairs echoed into every report.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct RootConfig {
  std::vector<std::string> entryClasses;
  std::vector<std::string> signatures;
};

/// One root per line: `<...>` lines are method signatures, anything else a
/// Java entry class. Blank lines and `#` comments are skipped.
RootConfig parse_roots(std::string_view text);

struct LiftOutput {
  hasm::Program program;
  lift::LiftResult lifted;
  std::vector<hasm::TruncationWarning> truncations;
  /// Methods whose body failed validation, with the first violation.
  std::vector<std::pair<std::string, std::string>> validationFailures;
};

/// Parses (after normalizing when `variant` is set), lifts and validates.
LiftOutput lift_document(std::string_view text,
                         std::optional<hasm::Dialect> variant = std::nullopt);

struct AnalysisOptions {
  RootConfig roots;
  bridge::BuiltinCatalog catalog = bridge::BuiltinCatalog::defaults();
};

struct AppAnalysis {
  LiftOutput lift;
  java::ClassModel model;
  java::BindingReport bindings;
  std::vector<bridge::CrossLangEdge> crossEdges;
  std::vector<bridge::UnlinkedBridgeCall> unlinked;
  cg::CallGraph withoutBridge;
  cg::CallGraph withBridge;
  cg::CoverageReport coverageWithout;
  cg::CoverageReport coverageWith;
  cg::DeltaStats delta;
};

AppAnalysis analyze_app(std::string_view hasmText, std::string_view modelText,
                        const AnalysisOptions& options = {},
                        std::optional<hasm::Dialect> variant = std::nullopt);

// Reports. Every rendering is deterministic and ends with a newline.

std::string detect_report(hasm::BundleKind kind, const ConfigEcho& echo);
std::string lift_stats_report(const LiftOutput& out, const ConfigEcho& echo);
std::string truncation_report(const LiftOutput& out, const ConfigEcho& echo);
std::string descriptor_report(const LiftOutput& out, const ConfigEcho& echo);
std::string bindings_report(const java::BindingReport& report,
                            const ConfigEcho& echo);
std::string cross_edges_report(const std::vector<bridge::CrossLangEdge>& edges,
                               const std::vector<bridge::UnlinkedBridgeCall>& unlinked,
                               const ConfigEcho& echo);
std::string delta_report(const AppAnalysis& analysis, const ConfigEcho& echo);
std::string taint_report(const taint::TaintResult& result, const ConfigEcho& echo);
std::string sankey_report(const taint::TaintResult& result, const ConfigEcho& echo);

}  // namespace hbcunify::pipeline
