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


// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "generator.hpp"
#include "hbcunify/bridge.hpp"
#include "hbcunify/callgraph.hpp"
#include "hbcunify/hasm.hpp"
#include "hbcunify/ir.hpp"
#include "hbcunify/java_model.hpp"
#include "hbcunify/lifter.hpp"
#include "hbcunify/pipeline.hpp"
#include "hbcunify/taint.hpp"
#include "oracles.hpp"

using namespace hbcunify;
using hbcunify::testing::read_file;
using hbcunify::testing::read_fixture;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Failed checks are collected rather than aborting, so a FAIL line lists
// everything that went wrong.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 8) {
      failures.push_back(what);
    }
  }
};

std::string strip_ws(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  return s;
}

std::vector<std::string> hasm_fixtures() {
  std::vector<std::string> out;
  for (const auto& p : testing::list_fixtures("hasm", ".hasm")) {
    out.push_back(p.string());
  }
  for (const auto& p : testing::list_fixtures("corpus", ".hasm")) {
    out.push_back(p.string());
  }
  return out;
}

std::vector<std::string> model_fixtures() {
  std::vector<std::string> out;
  for (const auto& p : testing::list_fixtures("models", ".json")) {
    out.push_back(p.string());
  }
  return out;
}

// Activities are the Java entry points of a fixture app.
pipeline::AnalysisOptions entry_options(const java::ClassModel& model) {
  pipeline::AnalysisOptions o;
  for (const auto& [name, cls] : model.classes()) {
    if (name.ends_with("Activity")) {
      o.roots.entryClasses.push_back(name);
    }
  }
  return o;
}

pipeline::AppAnalysis analyze(const std::string& hasmText, const std::string& modelText) {
  return pipeline::analyze_app(hasmText, modelText,
                               entry_options(java::load_class_model(modelText)));
}

bool is_subgraph(const cg::CallGraph& small, const cg::CallGraph& big) {
  for (const auto& [id, n] : small.nodes()) {
    if (!big.has_node(id)) {
      return false;
    }
  }
  return std::includes(big.edges().begin(), big.edges().end(),
                       small.edges().begin(), small.edges().end());
}

std::vector<std::pair<std::string, std::string>> pairs(const cg::CallGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges()) {
    out.emplace_back(e.from, e.to);
  }
  return out;
}

std::vector<std::string> patterns(const std::vector<taint::PatternRule>& rules) {
  std::vector<std::string> out;
  for (const auto& r : rules) {
    out.push_back(r.pattern);
  }
  return out;
}

std::set<testing::MatchKey> match_keys(const std::vector<bridge::CrossLangEdge>& edges) {
  std::set<testing::MatchKey> out;
  for (const auto& e : edges) {
    out.emplace(e.from.to_string(), e.atStatement, e.viaName, e.methodKey);
  }
  return out;
}

// 1. The console.log listing lifts to the expected five invokes.
void golden_lift(Check& c) {
  const auto text = read_fixture("hasm/console_log.hasm");
  const auto start = Clock::now();
  const auto lifted = lift::lift_program(hasm::parse_disassembly(text));
  const double took = seconds_since(start);

  struct Expected {
    const char* cls;
    const char* method;
    const char* args;
  };
  // The literal is the disassembler's (truncated) rendering of the string.
  const std::vector<Expected> expected = {
      {"Hbc.Opcod", "GetGlobalObject", "()"},
      {"Hbc.Opcod", "hbcGet", "(r0, 1, \"console\")"},
      {"Hbc.Opcod", "hbcGet", "(r2, 2, \"log\")"},
      {"Hbc.Opcod", "LoadConstString", "(\"the String value \")"},
      {"Hbc.GlobalObject.console", "log", "(r2, r0)"},
  };
  c.expect(lifted.program.methods().size() == 1, "expected one method");
  if (lifted.program.methods().size() != 1) {
    return;
  }
  std::vector<const ir::Statement*> invokes;
  for (const auto& s : lifted.program.methods()[0].statements) {
    if (s.is_invoke()) {
      invokes.push_back(&s);
    }
  }
  c.expect(invokes.size() == expected.size(),
           "invoke count " + std::to_string(invokes.size()));
  for (std::size_t i = 0; i < std::min(invokes.size(), expected.size()); ++i) {
    const auto& s = *invokes[i];
    std::string args = "(";
    for (std::size_t a = 0; a < s.args.size(); ++a) {
      args += (a ? "," : "") + ir::render(s.args[a]);
    }
    args += ")";
    c.expect(s.callee.className == expected[i].cls &&
                 s.callee.methodName == expected[i].method &&
                 strip_ws(args) == strip_ws(expected[i].args),
             "invoke " + std::to_string(i) + " is " + s.callee.to_string() + args);
  }
  c.expect(ir::print_ir(lifted.program) == read_fixture("golden/console_log.uir"),
           "IR differs from golden/console_log.uir");
  c.expect(took < 1.0, "took " + std::to_string(took) + " s");
  std::ostringstream d;
  d << invokes.size() << " invokes, " << took * 1000 << " ms";
  c.detail = d.str();
}

// 2. The calendar model yields one Turbo binding through the five sub-steps.
void golden_binding(Check& c) {
  const auto model = java::load_class_model(read_fixture("models/calendar.json"));
  const auto specs = java::find_module_specs(model);
  c.expect(specs.size() == 1 && specs[0].className == "CalendarModuleSpec" &&
               specs[0].kind == java::BindingKind::TurboNativeModule,
           "step 1: spec classes");
  const auto* spec = model.find("CalendarModuleSpec");
  const auto methods = spec ? java::collect_react_methods(*spec)
                            : std::vector<const java::JavaMethod*>{};
  c.expect(methods.size() == 1 && methods[0]->name == "createCalendarEvent",
           "step 2: react methods");
  const auto impls = java::find_impl_classes(model, specs);
  c.expect(impls.contains("CalendarModuleSpec") &&
               impls.at("CalendarModuleSpec") == std::vector<std::string>{"CalendarModule"},
           "step 3: impl classes");
  const auto* impl = model.find("CalendarModule");
  if (impl) {
    const auto overrides =
        java::collect_overrides(model, *impl, "CalendarModuleSpec", methods);
    c.expect(overrides.size() == 1 && overrides[0].implOwner == "CalendarModule" &&
                 overrides[0].implMethod->name == "createCalendarEvent",
             "step 4: overrides");
    const auto name = java::resolve_module_name(model, *impl);
    c.expect(name.name == std::optional<std::string>("Calendar"), "step 5: getName");
  } else {
    c.expect(false, "CalendarModule missing");
  }
  const auto report = java::extract_bindings(model);
  const bool one = report.bindings.size() == 1;
  c.expect(one, "binding count " + std::to_string(report.bindings.size()));
  if (one) {
    const auto& b = report.bindings[0];
    c.expect(b.kind == java::BindingKind::TurboNativeModule, "kind");
    c.expect(b.exposedName == "Calendar", "exposed name " + b.exposedName);
    c.expect(b.implClass == "CalendarModule", "impl " + b.implClass);
    c.expect(b.methodMap.size() == 1 && b.methodMap.contains("createCalendarEvent") &&
                 b.methodMap.at("createCalendarEvent").signature().to_string() ==
                     "<CalendarModule: void createCalendarEvent(int,int,java.lang.String)>",
             "method map");
    c.detail = std::string(java::to_string(b.kind)) + " " + b.exposedName +
               "." + b.methodMap.begin()->first + " -> " + b.implClass;
  }
}

// 3. Delta arithmetic on the "Popular Apps" reference counts.
void golden_delta(Check& c) {
  const auto d = cg::diff_counts(9206, 70344, 16940, 102830);
  c.expect(d.addedNodes == 7734, "addedNodes " + std::to_string(d.addedNodes));
  c.expect(d.addedEdges == 32486, "addedEdges " + std::to_string(d.addedEdges));
  c.expect(d.addedNodesPct && std::fabs(*d.addedNodesPct - 84.01) < 0.005,
           "nodes pct");
  c.expect(d.addedEdgesPct && std::fabs(*d.addedEdgesPct - 46.18) < 0.005,
           "edges pct");
  std::ostringstream s;
  s.precision(4);
  s << "+" << d.addedNodesPct.value_or(-1) << "% nodes, +"
    << d.addedEdgesPct.value_or(-1) << "% edges";
  c.detail = s.str();
}

// 4. Every lifted method of the fixture corpus passes body validation.
void validation_gate(Check& c) {
  const auto handWritten = testing::list_fixtures("hasm", ".hasm").size();
  const auto files = hasm_fixtures();
  std::size_t functions = 0;
  std::size_t failures = 0;
  const auto start = Clock::now();
  for (const auto& f : files) {
    const auto lifted = lift::lift_program(hasm::parse_disassembly(read_file(f)));
    for (const auto& m : lifted.program.methods()) {
      ++functions;
      const auto report = ir::validate_body(m);
      if (!report.ok()) {
        ++failures;
        c.expect(false, f + ": " + m.sig.to_string() + ": " +
                            report.violations.front().message);
      }
    }
  }
  const double took = seconds_since(start);
  c.expect(handWritten >= 30, "hand-written fixtures " + std::to_string(handWritten));
  c.expect(functions >= 200, "functions " + std::to_string(functions));
  c.expect(took < 10.0, "took " + std::to_string(took) + " s");
  std::ostringstream d;
  d << functions - failures << "/" << functions << " methods valid across "
    << files.size() << " files (" << handWritten << " hand-written), "
    << static_cast<int>(took * 1000) << " ms";
  c.detail = d.str();
}

void monotone(Check& c, const std::string& label, const pipeline::AppAnalysis& a,
              const taint::SourceSinkSpec& spec) {
  c.expect(is_subgraph(a.withoutBridge, a.withBridge), label + ": graph shrank");
  const auto before = taint::run_taint(a.withoutBridge, spec).findings.size();
  const auto after = taint::run_taint(a.withBridge, spec).findings.size();
  c.expect(after >= before, label + ": findings " + std::to_string(before) +
                                " -> " + std::to_string(after));
}

// 5. The bridge never removes nodes, edges or findings.
void bridge_monotonicity(Check& c) {
  const auto spec = taint::SourceSinkSpec::defaults();
  std::size_t pairsChecked = 0;
  std::size_t grew = 0;
  for (const auto& h : hasm_fixtures()) {
    const auto hasmText = read_file(h);
    for (const auto& m : model_fixtures()) {
      const auto a = analyze(hasmText, read_file(m));
      monotone(c, h + " x " + m, a, spec);
      ++pairsChecked;
      grew += a.delta.addedEdges > 0 ? 1 : 0;
    }
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto gen = testing::generate_app(seed);
    const auto a = analyze(gen.hasm, gen.model);
    monotone(c, "generated seed " + std::to_string(seed), a, spec);
    ++pairsChecked;
    grew += a.delta.addedEdges > 0 ? 1 : 0;
  }
  c.expect(grew > 0, "no pair gained edges");
  c.detail = std::to_string(pairsChecked) + " pairs, " + std::to_string(grew) +
             " gained edges";
}

// 6. Small inputs agree with brute-force oracles.
void oracle_equivalence(Check& c) {
  std::size_t cfgs = 0, classes = 0, matchings = 0, taints = 0;

  std::vector<std::string> documents;
  for (const auto& f : hasm_fixtures()) {
    documents.push_back(read_file(f));
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    documents.push_back(testing::generate_document(seed));
  }
  for (const auto& text : documents) {
    const auto program = hasm::parse_disassembly(text);
    const auto lifted = lift::lift_program(program);
    for (std::size_t f = 0; f < program.functions.size(); ++f) {
      const auto& fn = program.functions[f];
      if (fn.instructions.size() > 50) {
        continue;
      }
      const auto expected = testing::brute_force_cfg(fn);
      const auto actual = testing::ir_cfg(lifted.program.methods()[f]);
      c.expect(actual.blocks.size() == expected.blocks.size() &&
                   actual.edges == expected.edges && actual.exits == expected.exits,
               "CFG of function at line " + std::to_string(fn.line));
      ++cfgs;
    }
  }

  std::vector<std::string> models;
  for (const auto& m : model_fixtures()) {
    models.push_back(read_file(m));
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    models.push_back(testing::generate_hierarchy(seed));
  }
  for (const auto& text : models) {
    const auto model = java::load_class_model(text);
    std::map<std::string, std::vector<std::string>> parents;
    for (const auto& [name, cls] : model.classes()) {
      auto& ps = parents[name];
      if (cls.superclass) {
        ps.push_back(*cls.superclass);
      }
      ps.insert(ps.end(), cls.interfaces.begin(), cls.interfaces.end());
    }
    const auto oracle = testing::closure_supertypes(parents);
    for (const auto& [name, cls] : model.classes()) {
      c.expect(java::supertypes(model, name) == oracle.at(name), "supertypes of " + name);
      ++classes;
    }
  }

  const auto spec = taint::SourceSinkSpec::defaults();
  const auto check_app = [&](const std::string& label, const pipeline::AppAnalysis& a) {
    if (a.lift.lifted.callSites.size() <= 50) {
      c.expect(match_keys(a.crossEdges) ==
                   testing::naive_matches(a.lift.lifted.callSites, a.bindings.bindings),
               label + ": matching");
      ++matchings;
    }
    for (const auto* g : {&a.withoutBridge, &a.withBridge}) {
      if (g->node_count() > 30) {
        continue;
      }
      std::set<testing::TaintKey> got;
      for (const auto& f : taint::run_taint(*g, spec).findings) {
        got.emplace(f.source.node, f.source.signature, f.sink.node, f.sink.signature);
      }
      c.expect(got == testing::enumerate_taint(pairs(*g), patterns(spec.sources),
                                               patterns(spec.sinks)),
               label + ": taint");
      ++taints;
    }
  };
  for (const auto& h : hasm_fixtures()) {
    const auto hasmText = read_file(h);
    for (const auto& m : model_fixtures()) {
      check_app(h + " x " + m, analyze(hasmText, read_file(m)));
    }
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto gen = testing::generate_app(seed);
    check_app("generated seed " + std::to_string(seed), analyze(gen.hasm, gen.model));
  }
  std::ostringstream d;
  d << cfgs << " CFGs, " << classes << " hierarchy queries, " << matchings
    << " matchings, " << taints << " taint graphs";
  c.detail = d.str();
}

// 7. Three planted flows, two of them across the bridge.
void planted_leaks(Check& c) {
  const auto a = pipeline::analyze_app(
      read_fixture("hasm/leak_app.hasm"), read_fixture("models/leak_app.json"),
      {pipeline::parse_roots("com.leaky.MainActivity\n")});
  const auto spec = taint::SourceSinkSpec::defaults();
  const auto with = taint::run_taint(a.withBridge, spec);
  const auto without = taint::run_taint(a.withoutBridge, spec);
  const auto crossing = std::count_if(with.findings.begin(), with.findings.end(),
                                      [](const auto& f) { return f.crossesBridge; });
  c.expect(with.findings.size() == 3,
           "with bridge " + std::to_string(with.findings.size()));
  c.expect(crossing == 2, "crossing " + std::to_string(crossing));
  c.expect(without.findings.size() == 1,
           "without bridge " + std::to_string(without.findings.size()));
  const auto summary = taint::categorize_findings(with.findings);
  std::size_t sum = 0;
  for (const auto& [k, v] : summary.flows) {
    sum += v;
  }
  c.expect(sum == with.findings.size() && summary.total == with.findings.size(),
           "summary sums to " + std::to_string(sum));
  c.detail = std::to_string(with.findings.size()) + " with bridge (" +
             std::to_string(crossing) + " crossing), " +
             std::to_string(without.findings.size()) + " without";
}

// Every artifact of one pipeline run over the corpus.
std::vector<std::string> full_run() {
  std::vector<std::string> out;
  const pipeline::ConfigEcho echo = {{"run", "acceptance"}};
  const auto spec = taint::SourceSinkSpec::defaults();
  for (const auto& h : hasm_fixtures()) {
    const auto hasmText = read_file(h);
    const auto lifted = pipeline::lift_document(hasmText);
    out.push_back(ir::print_ir(lifted.lifted.program));
    out.push_back(pipeline::lift_stats_report(lifted, echo));
    out.push_back(pipeline::truncation_report(lifted, echo));
    out.push_back(pipeline::descriptor_report(lifted, echo));
    for (const auto& m : model_fixtures()) {
      const auto a = analyze(hasmText, read_file(m));
      out.push_back(pipeline::bindings_report(a.bindings, echo));
      out.push_back(pipeline::cross_edges_report(a.crossEdges, a.unlinked, echo));
      out.push_back(pipeline::delta_report(a, echo));
      for (const auto* g : {&a.withoutBridge, &a.withBridge}) {
        out.push_back(cg::export_graph(*g, cg::Format::Dot));
        out.push_back(cg::export_graph(*g, cg::Format::Json));
        const auto r = taint::run_taint(*g, spec);
        out.push_back(pipeline::taint_report(r, echo));
        out.push_back(pipeline::sankey_report(r, echo));
        out.push_back(taint::findings_table(r.findings));
      }
    }
  }
  return out;
}

// 8. Two runs produce identical bytes.
void determinism(Check& c) {
  const auto first = full_run();
  const auto second = full_run();
  c.expect(first.size() == second.size(), "artifact counts differ");
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i) {
    c.expect(first[i] == second[i], "artifact " + std::to_string(i) + " differs");
    bytes += first[i].size();
  }
  c.detail = std::to_string(first.size()) + " artifacts, " + std::to_string(bytes) +
             " bytes";
}

// 9. Four planted truncated literals give four warnings.
void truncation(Check& c) {
  const auto out = pipeline::lift_document(read_fixture("hasm/truncated_literals.hasm"));
  c.expect(out.truncations.size() == 4,
           "warnings " + std::to_string(out.truncations.size()));
  c.detail = std::to_string(out.truncations.size()) + " warnings";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"golden lift", golden_lift},
      {"golden binding", golden_binding},
      {"golden delta arithmetic", golden_delta},
      {"validation gate", validation_gate},
      {"bridge monotonicity", bridge_monotonicity},
      {"oracle equivalence", oracle_equivalence},
      {"planted-leak end-to-end", planted_leaks},
      {"determinism", determinism},
      {"truncation detection", truncation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s %zu %s: %s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), c.detail.c_str());
    for (const auto& f : c.failures) {
      std::printf("    %s\n", f.c_str());
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
