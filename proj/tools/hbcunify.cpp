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

// Command-line front end. Exit codes: 0 success, 2 input error,
// 3 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "hbcunify/error.hpp"
#include "hbcunify/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hbcunify;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kInvariantViolation = 3;

// Raised for broken internal invariants, as opposed to bad input.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("hbcunify");
  logger->set_pattern("hbcunify: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("HBC_UNIFY_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

fs::path prepare_out(const std::string& dir) {
  fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw Error(ErrorCode::Io, "cannot create output directory " + dir);
  }
  return out;
}

void emit(const fs::path& dir, const std::string& name, const std::string& content) {
  pipeline::write_file(dir / name, content);
  spdlog::info("wrote {}", (dir / name).string());
}

std::optional<hasm::Dialect> variant_of(const std::string& name) {
  if (name.empty()) {
    return std::nullopt;
  }
  auto d = hasm::dialect_from_string(name);
  if (!d) {
    throw Error(ErrorCode::UnsupportedVariant, "unknown variant '" + name + "'");
  }
  return d;
}

pipeline::RootConfig roots_of(const std::string& path) {
  return path.empty() ? pipeline::RootConfig{}
                      : pipeline::parse_roots(pipeline::read_file(path));
}

struct Args {
  std::string bundle;
  std::string hasm;
  std::string model;
  std::string out;
  std::string variant;
  std::string spec;
  std::string roots;
  std::string catalog;
  std::string format = "dot";
  bool dumpDescriptors = false;
  bool withBridge = true;
  double timeoutMinutes = 30;
};

pipeline::AnalysisOptions analysis_options(const Args& a) {
  pipeline::AnalysisOptions o;
  o.roots = roots_of(a.roots);
  if (!a.catalog.empty()) {
    o.catalog = bridge::BuiltinCatalog::parse(pipeline::read_file(a.catalog));
  }
  return o;
}

int cmd_detect(const Args& a) {
  const auto bytes = pipeline::read_file(a.bundle);
  const auto report = pipeline::detect_report(hasm::detect_bundle_kind(bytes),
                                              {{"bundle", a.bundle}});
  if (a.out.empty()) {
    std::cout << report;
  } else {
    emit(prepare_out(a.out), "detect.json", report);
  }
  return kOk;
}

int cmd_lift(const Args& a) {
  const auto out = pipeline::lift_document(pipeline::read_file(a.hasm), variant_of(a.variant));
  const auto dir = prepare_out(a.out);
  const pipeline::ConfigEcho echo{{"hasm", a.hasm}, {"variant", a.variant}};
  emit(dir, fs::path(a.hasm).stem().string() + ".uir", ir::print_ir(out.lifted.program));
  emit(dir, "lift_stats.json", pipeline::lift_stats_report(out, echo));
  emit(dir, "truncation.json", pipeline::truncation_report(out, echo));
  if (a.dumpDescriptors) {
    emit(dir, "descriptors.json", pipeline::descriptor_report(out, echo));
  }
  for (const auto& w : out.truncations) {
    spdlog::warn("function {} instruction {}: literal {} looks truncated",
                 w.functionId, w.instructionIndex, w.rawText);
  }
  if (!out.validationFailures.empty()) {
    for (const auto& [sig, msg] : out.validationFailures) {
      spdlog::error("{} failed validation: {}", sig, msg);
    }
    return kInvariantViolation;
  }
  return kOk;
}

int cmd_bindings(const Args& a) {
  const auto model = java::load_class_model(pipeline::read_file(a.model));
  const auto report = pipeline::bindings_report(java::extract_bindings(model),
                                                {{"model", a.model}});
  if (a.out.empty()) {
    std::cout << report;
  } else {
    emit(prepare_out(a.out), "bindings.json", report);
  }
  return kOk;
}

int cmd_callgraph(const Args& a) {
  const auto format = cg::format_from_string(a.format);
  if (!format) {
    throw Error(ErrorCode::SchemaViolation, "unknown format '" + a.format + "'");
  }
  const auto analysis = pipeline::analyze_app(pipeline::read_file(a.hasm),
                                              pipeline::read_file(a.model),
                                              analysis_options(a), variant_of(a.variant));
  if (!analysis.lift.validationFailures.empty()) {
    throw InvariantViolation("lifted methods failed validation");
  }
  const auto dir = prepare_out(a.out);
  const pipeline::ConfigEcho echo{{"hasm", a.hasm},       {"model", a.model},
                                  {"roots", a.roots},     {"format", a.format},
                                  {"catalog", a.catalog}, {"variant", a.variant}};
  emit(dir, "callgraph_without_bridge." + a.format,
       cg::export_graph(analysis.withoutBridge, *format));
  emit(dir, "callgraph_with_bridge." + a.format,
       cg::export_graph(analysis.withBridge, *format));
  emit(dir, "delta.json", pipeline::delta_report(analysis, echo));
  emit(dir, "cross_edges.json",
       pipeline::cross_edges_report(analysis.crossEdges, analysis.unlinked, echo));
  emit(dir, "bindings.json", pipeline::bindings_report(analysis.bindings, echo));
  for (const auto& u : analysis.unlinked) {
    spdlog::warn("unlinked bridge call in {}: {}", u.from.to_string(), u.descriptor);
  }
  if (analysis.delta.addedNodes < 0 || analysis.delta.addedEdges < 0) {
    throw InvariantViolation("bridging removed nodes or edges");
  }
  return kOk;
}

int cmd_taint(const Args& a) {
  const auto spec = a.spec.empty() ? taint::SourceSinkSpec::defaults()
                                   : taint::load_sources_sinks(pipeline::read_file(a.spec));
  const auto analysis = pipeline::analyze_app(pipeline::read_file(a.hasm),
                                              pipeline::read_file(a.model),
                                              analysis_options(a), variant_of(a.variant));
  taint::TaintOptions options;
  options.timeout = std::chrono::milliseconds(
      static_cast<long long>(a.timeoutMinutes * 60.0 * 1000.0));
  const auto result = taint::run_taint(
      a.withBridge ? analysis.withBridge : analysis.withoutBridge, spec, options);
  if (result.timedOut) {
    spdlog::warn("taint budget exhausted; findings are partial");
  }
  const auto dir = prepare_out(a.out);
  const pipeline::ConfigEcho echo{
      {"hasm", a.hasm},
      {"model", a.model},
      {"spec", a.spec.empty() ? std::string("<defaults>") : a.spec},
      {"roots", a.roots},
      {"withBridge", a.withBridge ? "true" : "false"},
      {"timeoutMinutes", CLI::detail::to_string(a.timeoutMinutes)}};
  emit(dir, "findings.json", pipeline::taint_report(result, echo));
  emit(dir, "findings.txt", taint::findings_table(result.findings));
  emit(dir, "sankey.json", pipeline::sankey_report(result, echo));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Lift Hermes disassembly, link it to a Java class model, and "
               "analyze the unified call graph."};
  app.set_version_flag("--version", std::string(pipeline::tool_version()));
  app.require_subcommand(1);
  Args a;

  auto* detect = app.add_subcommand("detect", "Classify a bundle file");
  detect->add_option("bundle", a.bundle, "Bundle file")->required();
  detect->add_option("--out", a.out, "Write detect.json here instead of stdout");

  auto* lift = app.add_subcommand("lift", "Lift a disassembly to IR");
  lift->add_option("hasm", a.hasm, "Disassembly file")->required();
  lift->add_option("--out", a.out, "Output directory")->required();
  lift->add_option("--variant", a.variant, "Normalize from this dialect first");
  lift->add_flag("--dump-descriptors", a.dumpDescriptors, "Also write descriptors.json");

  auto* bindings = app.add_subcommand("bindings", "Extract Native Module and Component bindings");
  bindings->add_option("model", a.model, "Class-model document")->required();
  bindings->add_option("--out", a.out, "Write bindings.json here instead of stdout");

  auto add_app_inputs = [&](CLI::App* sub) {
    sub->add_option("hasm", a.hasm, "Disassembly file")->required();
    sub->add_option("model", a.model, "Class-model document")->required();
    sub->add_option("--out", a.out, "Output directory")->required();
    sub->add_option("--roots", a.roots, "Root list file");
    sub->add_option("--catalog", a.catalog, "Builtin catalog file");
    sub->add_option("--variant", a.variant, "Normalize from this dialect first");
  };
  auto* callgraph = app.add_subcommand("callgraph", "Build call graphs with and without the bridge");
  add_app_inputs(callgraph);
  callgraph->add_option("--format", a.format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));

  auto* taint = app.add_subcommand("taint", "Report source-to-sink flows");
  add_app_inputs(taint);
  taint->add_option("--spec", a.spec, "Source/sink document (default: bundled)");
  taint->add_flag("--with-bridge,!--no-bridge", a.withBridge, "Analyze the bridged graph");
  taint->add_option("--timeout-minutes", a.timeoutMinutes, "Analysis budget")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*detect) return cmd_detect(a);
    if (*lift) return cmd_lift(a);
    if (*bindings) return cmd_bindings(a);
    if (*callgraph) return cmd_callgraph(a);
    return cmd_taint(a);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const InvariantViolation& e) {
    spdlog::error("invariant violated: {}", e.what());
    return kInvariantViolation;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kInvariantViolation;
  }
}
