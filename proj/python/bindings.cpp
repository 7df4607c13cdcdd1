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


// Python bindings. Reports cross the boundary as JSON text; the package
// wrapper decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <optional>
#include <string>

#include "hbcunify/callgraph.hpp"
#include "hbcunify/error.hpp"
#include "hbcunify/hasm.hpp"
#include "hbcunify/ir.hpp"
#include "hbcunify/pipeline.hpp"
#include "hbcunify/taint.hpp"

namespace py = pybind11;
using namespace hbcunify;

namespace {

std::optional<hasm::Dialect> dialect(const std::optional<std::string>& name) {
  if (!name) {
    return std::nullopt;
  }
  const auto d = hasm::dialect_from_string(*name);
  if (!d) {
    throw Error(ErrorCode::UnsupportedVariant, "unknown variant " + *name);
  }
  return d;
}

pipeline::AnalysisOptions analysis_options(const std::string& roots) {
  pipeline::AnalysisOptions o;
  o.roots = pipeline::parse_roots(roots);
  return o;
}

py::dict lift_text(const std::string& text, const std::optional<std::string>& variant) {
  const auto out = pipeline::lift_document(text, dialect(variant));
  const pipeline::ConfigEcho echo{{"variant", variant.value_or("")}};
  py::dict d;
  d["ir"] = ir::print_ir(out.lifted.program);
  d["stats"] = pipeline::lift_stats_report(out, echo);
  d["truncation"] = pipeline::truncation_report(out, echo);
  d["descriptors"] = pipeline::descriptor_report(out, echo);
  return d;
}

std::string bindings_text(const std::string& model) {
  return pipeline::bindings_report(
      java::extract_bindings(java::load_class_model(model)), {});
}

py::dict callgraph(const std::string& hasmText, const std::string& model,
                   const std::string& roots, const std::string& format) {
  const auto fmt = cg::format_from_string(format);
  if (!fmt) {
    throw Error(ErrorCode::SchemaViolation, "unknown format " + format);
  }
  const auto a = pipeline::analyze_app(hasmText, model, analysis_options(roots));
  py::dict d;
  d["without_bridge"] = cg::export_graph(a.withoutBridge, *fmt);
  d["with_bridge"] = cg::export_graph(a.withBridge, *fmt);
  d["delta"] = pipeline::delta_report(a, {});
  d["cross_edges"] = pipeline::cross_edges_report(a.crossEdges, a.unlinked, {});
  return d;
}

py::dict run_taint(const std::string& hasmText, const std::string& model,
                   const std::optional<std::string>& spec, const std::string& roots,
                   bool withBridge, double timeoutMinutes) {
  const auto rules =
      spec ? taint::load_sources_sinks(*spec) : taint::SourceSinkSpec::defaults();
  const auto a = pipeline::analyze_app(hasmText, model, analysis_options(roots));
  taint::TaintOptions options;
  options.timeout = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::duration<double, std::ratio<60>>(timeoutMinutes));
  const auto result = taint::run_taint(withBridge ? a.withBridge : a.withoutBridge,
                                       rules, options);
  py::dict d;
  d["findings"] = pipeline::taint_report(result, {});
  d["sankey"] = pipeline::sankey_report(result, {});
  d["table"] = taint::findings_table(result.findings);
  return d;
}

py::dict diff_counts(std::size_t nb, std::size_t eb, std::size_t na, std::size_t ea) {
  const auto s = cg::diff_counts(nb, eb, na, ea);
  py::dict d;
  d["added_nodes"] = s.addedNodes;
  d["added_edges"] = s.addedEdges;
  d["added_nodes_pct"] = s.addedNodesPct;
  d["added_edges_pct"] = s.addedEdgesPct;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of hbcunify.";
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> storage;
  storage.call_once_and_store_result([&]() {
    return py::object(py::exception<Error>(m, "Error", PyExc_ValueError));
  });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const Error& e) {
      // args carry the message and the error code name.
      PyErr_SetObject(storage.get_stored().ptr(),
                      py::make_tuple(e.what(), std::string(to_string(e.code()))).ptr());
    }
  });

  m.def("version", [] { return std::string(pipeline::tool_version()); });
  m.def("detect", [](const py::bytes& data) {
    return std::string(hasm::to_string(
        hasm::detect_bundle_kind(std::string_view(static_cast<std::string>(data)))));
  });
  m.def("lift", &lift_text, py::arg("text"), py::arg("variant") = py::none());
  m.def("bindings", &bindings_text, py::arg("model"));
  m.def("callgraph", &callgraph, py::arg("hasm"), py::arg("model"),
        py::arg("roots") = "", py::arg("format") = "json");
  m.def("taint", &run_taint, py::arg("hasm"), py::arg("model"),
        py::arg("spec") = py::none(), py::arg("roots") = "",
        py::arg("with_bridge") = true, py::arg("timeout_minutes") = 30.0);
  m.def("diff_counts", &diff_counts, py::arg("nodes_before"), py::arg("edges_before"),
        py::arg("nodes_after"), py::arg("edges_after"));
}
