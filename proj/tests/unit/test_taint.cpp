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

#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"
#include "hbcunify/error.hpp"
#include "hbcunify/taint.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace hbcunify;
using namespace hbcunify::taint;
using hbcunify::testing::read_fixture;

namespace {

cg::CallGraph app_graph(const std::string& hasmText, const std::string& modelText,
                        bool withBridge,
                        std::vector<std::string> entries = {}) {
  const auto lifted = lift::lift_program(hasm::parse_disassembly(hasmText));
  const auto model = java::load_class_model(modelText);
  const auto edges = bridge::match_invocations(
      lifted.callSites, java::extract_bindings(model).bindings);
  cg::BuildOptions o;
  o.withBridge = withBridge;
  o.javaEntryClasses = std::move(entries);
  return cg::build_callgraph(lifted, model, edges, o);
}

cg::CallGraph leak_graph(bool withBridge) {
  return app_graph(read_fixture("hasm/leak_app.hasm"),
                   read_fixture("models/leak_app.json"), withBridge,
                   {"com.leaky.MainActivity"});
}

std::vector<std::pair<std::string, std::string>> pairs(const cg::CallGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges()) {
    out.emplace_back(e.from, e.to);
  }
  return out;
}

std::vector<std::string> patterns(const std::vector<PatternRule>& rules) {
  std::vector<std::string> out;
  for (const auto& r : rules) {
    out.push_back(r.pattern);
  }
  return out;
}

bool has_edge(const cg::CallGraph& g, const std::string& a, const std::string& b) {
  const auto out = g.out_edges(a);
  return std::any_of(out.begin(), out.end(),
                     [&](const cg::Edge& e) { return e.to == b; });
}

TaintFinding finding(const std::string& src, const std::string& snk) {
  TaintFinding f;
  f.source = {"n", "s", src};
  f.sink = {"n", "k", snk};
  return f;
}

}  // namespace

TEST_CASE("source and sink documents") {
  const auto defaults = SourceSinkSpec::defaults();
  const auto replace = std::find_if(defaults.sinks.begin(), defaults.sinks.end(),
                                    [](const PatternRule& r) { return r.category == "Replace"; });
  REQUIRE(replace != defaults.sinks.end());
  CHECK(pattern_matches(replace->pattern,
                        "<java.lang.String: java.lang.String replace(java.lang.CharSequence,"
                        "java.lang.CharSequence)>"));
  std::set<std::string> sourceCats;
  for (const auto& r : defaults.sources) {
    sourceCats.insert(r.category);
  }
  CHECK(sourceCats == std::set<std::string>{"Database", "Location", "Telephony", "Wi-Fi"});
  std::set<std::string> sinkCats;
  for (const auto& r : defaults.sinks) {
    sinkCats.insert(r.category);
  }
  for (const auto* c : {"SharedPreferences", "ContentResolver", "Activity", "Replace"}) {
    CHECK(sinkCats.contains(c));
  }

  CHECK(load_sources_sinks("").sources.empty());
  CHECK(load_sources_sinks(read_fixture("specs/empty.json")).sinks.empty());
  const auto parsed = load_sources_sinks(read_fixture("specs/telephony_only.json"));
  REQUIRE(parsed.sources.size() == 1);
  CHECK(parsed.sources[0].category == "Telephony");
  CHECK(load_sources_sinks(dump_sources_sinks(defaults)).sinks == defaults.sinks);

  for (const auto* bad : {"[]", "{\"sources\": 1}", "{\"sources\": [{\"pattern\": \"x\"}]}",
                          "{\"sinks\": [{\"pattern\": \"x\", \"category\": \"\"}]}",
                          "{\"other\": []}", "{"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(load_sources_sinks(bad), Error);
  }
}

TEST_CASE("signature patterns") {
  const std::string id = "<android.telephony.TelephonyManager: java.lang.String getDeviceId()>";
  CHECK(pattern_matches("android.telephony.*getDeviceId*", id));
  CHECK(pattern_matches("android.telephony.TelephonyManager.getDeviceId", id));
  CHECK(pattern_matches("android.telephony.TelephonyManager.getDeviceId()", id));
  CHECK(pattern_matches(id, id));
  CHECK(pattern_matches("*", id));
  CHECK_FALSE(pattern_matches("android.telephony.TelephonyManager.getDevice", id));
  CHECK_FALSE(pattern_matches("android.location.*", id));
  CHECK(pattern_matches("android.util.Log.*", "<android.util.Log: int d(java.lang.String,java.lang.String)>"));
  CHECK(pattern_matches("console.*", "<Builtin: console.log>") == false);
  CHECK(pattern_matches("Builtin: console.log", "<Builtin: console.log>"));

  // Random patterns carved out of real ids agree with the regex oracle.
  const std::vector<std::string> ids = {
      id, "<android.util.Log: int d(java.lang.String,java.lang.String)>",
      "<a.B: void c()>", "<x.y$Z: x.y$Z put(int)>", "<Builtin: JSON.parse>"};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 3000; ++i) {
    const auto& src = ids[rng() % ids.size()];
    std::string pat;
    for (char c : src) {
      const auto roll = rng() % 10;
      if (roll == 0) {
        pat += '*';
      } else if (roll == 1) {
        continue;
      } else {
        pat += c;
      }
    }
    for (const auto& target : ids) {
      CAPTURE(pat);
      CAPTURE(target);
      CHECK(pattern_matches(pat, target) == testing::oracle_pattern_matches(pat, target));
    }
  }
}

TEST_CASE("a bridge-crossing telephony leak") {
  const auto spec = load_sources_sinks(read_fixture("specs/telephony_only.json"));
  const auto result = run_taint(leak_graph(true), spec);
  CHECK_FALSE(result.timedOut);
  REQUIRE(result.findings.size() == 1);
  const auto& f = result.findings[0];
  CHECK(f.source.node == "<com.leaky.DeviceInfoModule: void cacheDeviceId(com.facebook.react.bridge.Promise)>");
  CHECK(f.source.category == "Telephony");
  CHECK(f.sink.category == "SharedPreferences");
  CHECK(f.path == std::vector<std::string>{f.source.node});
  CHECK(f.crossesBridge);
  REQUIRE(f.entryPath.size() == 3);
  CHECK(f.entryPath.back() == f.source.node);

  CHECK(run_taint(leak_graph(false), spec).findings.empty());
  CHECK(run_taint(leak_graph(true), SourceSinkSpec{}).findings.empty());
}

TEST_CASE("planted flows in the leak app") {
  const auto with = run_taint(leak_graph(true), SourceSinkSpec::defaults());
  const auto without = run_taint(leak_graph(false), SourceSinkSpec::defaults());
  REQUIRE(with.findings.size() == 3);
  CHECK(std::count_if(with.findings.begin(), with.findings.end(),
                      [](const TaintFinding& f) { return f.crossesBridge; }) == 2);
  REQUIRE(without.findings.size() == 1);
  CHECK_FALSE(without.findings[0].crossesBridge);
  CHECK(without.findings[0].source.category == "Database");
  CHECK(without.findings[0].sink.category == "Log");

  const auto summary = categorize_findings(with.findings);
  CHECK(summary.total == 3);
  std::size_t sum = 0;
  for (const auto& [k, v] : summary.flows) {
    sum += v;
  }
  CHECK(sum == 3);
  const auto sankey = nlohmann::json::parse(sankey_json(summary));
  CHECK(sankey["total"] == 3);
  CHECK(sankey["links"].size() == 3);

  const auto table = findings_table(with.findings);
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);
  const auto report = nlohmann::json::parse(findings_json(with));
  CHECK(report["count"] == 3);
  CHECK(report["timedOut"] == false);
}

TEST_CASE("two flows, one across the bridge") {
  cg::CallGraph g;
  for (const auto* id : {"js", "j1", "j2", "main", "<p.T: java.lang.String getDeviceId()>",
                         "<p.S: void put(int)>"}) {
    g.add_node({id, cg::Side::Java, false});
  }
  g.add_edge({"js", "j1", cg::EdgeKind::Bridge});
  g.add_edge({"j1", "<p.T: java.lang.String getDeviceId()>", cg::EdgeKind::JavaIntra});
  g.add_edge({"j1", "j2", cg::EdgeKind::JavaIntra});
  g.add_edge({"j2", "<p.S: void put(int)>", cg::EdgeKind::JavaIntra});
  g.add_edge({"main", "<p.T: java.lang.String getDeviceId()>", cg::EdgeKind::JavaIntra});
  g.add_edge({"main", "<p.S: void put(int)>", cg::EdgeKind::JavaIntra});
  g.add_root("js");
  g.add_root("main");
  SourceSinkSpec spec{{{"p.T.getDeviceId", "Telephony"}}, {{"p.S.put", "Sink"}}};
  const auto r = run_taint(g, spec);
  REQUIRE(r.findings.size() == 2);
  CHECK(r.findings[0].source.node == "j1");
  CHECK(r.findings[0].path == std::vector<std::string>{"j1", "j2"});
  CHECK(r.findings[0].crossesBridge);
  CHECK(r.findings[1].source.node == "main");
  CHECK_FALSE(r.findings[1].crossesBridge);
  CHECK(categorize_findings(r.findings).total == 2);
}

TEST_CASE("category summaries") {
  const std::vector<TaintFinding> three(3, finding("Telephony", "SharedPreferences"));
  const auto s3 = categorize_findings(three);
  REQUIRE(s3.flows.size() == 1);
  CHECK(s3.flows.begin()->second == 3);
  CHECK(categorize_findings({}).flows.empty());
  CHECK(sankey_json(categorize_findings({})).find("\"total\": 0") != std::string::npos);

  const std::vector<TaintFinding> mixed = {
      finding("Database", "Log"), finding("Location", "Intent"), finding("Database", "Log"),
      finding("Telephony", "Log"), finding("Location", "Intent")};
  const auto s5 = categorize_findings(mixed);
  CHECK(s5.flows.size() == 3);
  std::size_t sum = 0;
  for (const auto& [k, v] : s5.flows) {
    sum += v;
  }
  CHECK(sum == 5);
  CHECK(s5.total == 5);
}

TEST_CASE("shortest witness paths") {
  const std::vector<std::pair<std::string, std::string>> rel = {
      {"a", "c"}, {"a", "b"}, {"b", "d"}, {"c", "d"}, {"d", "e"}, {"a", "e2"}, {"e2", "f"}};
  cg::CallGraph g;
  for (const auto* n : {"a", "b", "c", "d", "e", "e2", "f"}) {
    g.add_node({n, cg::Side::Js, false});
  }
  for (const auto& [x, y] : rel) {
    g.add_edge({x, y, cg::EdgeKind::JsIntra});
  }
  CHECK(shortest_path(g, "a", "e") == std::vector<std::string>{"a", "b", "d", "e"});
  CHECK(shortest_path(g, "a", "a") == std::vector<std::string>{"a"});
  CHECK(shortest_path(g, "e", "a").empty());
  CHECK(testing::dp_shortest_path(rel, "a", "e") == shortest_path(g, "a", "e"));
}

TEST_CASE("taint agrees with the enumeration oracle on generated apps") {
  const auto spec = SourceSinkSpec::defaults();
  std::size_t withFindings = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    CAPTURE(seed);
    const auto gen = testing::generate_app(seed);
    std::size_t counts[2] = {0, 0};
    for (bool withBridge : {false, true}) {
      const auto g = app_graph(gen.hasm, gen.model, withBridge, {"app.MainActivity"});
      const auto r = run_taint(g, spec);
      counts[withBridge ? 1 : 0] = r.findings.size();
      CHECK(r.findings == run_taint(g, spec).findings);
      if (g.node_count() > 30) {
        continue;
      }
      const auto rel = pairs(g);
      const auto expected = testing::enumerate_taint(rel, patterns(spec.sources),
                                                     patterns(spec.sinks));
      std::set<testing::TaintKey> got;
      for (const auto& f : r.findings) {
        got.emplace(f.source.node, f.source.signature, f.sink.node, f.sink.signature);
        REQUIRE_FALSE(f.path.empty());
        CHECK(f.path.front() == f.source.node);
        CHECK(f.path.back() == f.sink.node);
        for (std::size_t i = 1; i < f.path.size(); ++i) {
          CHECK(has_edge(g, f.path[i - 1], f.path[i]));
        }
        CHECK(f.path == testing::dp_shortest_path(rel, f.source.node, f.sink.node));
        CHECK(has_edge(g, f.source.node, f.source.signature));
        CHECK(has_edge(g, f.sink.node, f.sink.signature));
        CHECK(g.roots().contains(f.entryPath.front()));
        CHECK(f.entryPath.back() == f.source.node);
        CHECK(f.crossesBridge == (path_crosses_bridge(g, f.entryPath) ||
                                  path_crosses_bridge(g, f.path)));
      }
      CHECK(got == expected);
      withFindings += r.findings.empty() ? 0 : 1;
    }
    CHECK(counts[1] >= counts[0]);
  }
  CHECK(withFindings > 50);
}

TEST_CASE("an exhausted budget is reported") {
  TaintOptions none;
  none.timeout = std::chrono::milliseconds(-1);
  const auto r = run_taint(leak_graph(true), SourceSinkSpec::defaults(), none);
  CHECK(r.timedOut);
  CHECK(r.findings.size() < 3);
  CHECK(TaintOptions{}.timeout == std::chrono::minutes(30));
}
