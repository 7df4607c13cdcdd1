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

#include "hbcunify/taint.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hbcunify/error.hpp"
#include "json.hpp"

namespace hbcunify::taint {

namespace {

using nlohmann::json;

bool glob(std::string_view pattern, std::string_view text) {
  std::size_t p = 0;
  std::size_t t = 0;
  std::size_t star = std::string_view::npos;
  std::size_t mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (p < pattern.size() && pattern[p] == text[t]) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') {
    ++p;
  }
  return p == pattern.size();
}

std::string_view strip_brackets(std::string_view s) {
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::string join_params(const std::vector<std::string>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    out += (i ? "," : "") + params[i];
  }
  return out;
}

std::vector<PatternRule> parse_rules(const json& doc, const char* key) {
  std::vector<PatternRule> rules;
  if (!doc.contains(key)) {
    return rules;
  }
  const auto& list = doc.at(key);
  if (!list.is_array()) {
    throw Error(ErrorCode::SchemaViolation,
                std::string("$.") + key + " must be an array");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = std::string("$.") + key + "[" + std::to_string(i) + "]";
    const auto& r = list[i];
    if (!r.is_object() || !r.contains("pattern") || !r.contains("category") ||
        !r["pattern"].is_string() || !r["category"].is_string()) {
      throw Error(ErrorCode::SchemaViolation,
                  where + " needs string fields pattern and category");
    }
    PatternRule rule{r["pattern"].get<std::string>(),
                     r["category"].get<std::string>()};
    if (rule.pattern.empty() || rule.category.empty()) {
      throw Error(ErrorCode::SchemaViolation,
                  where + " has an empty pattern or category");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

json rules_to_json(const std::vector<PatternRule>& rules) {
  json out = json::array();
  for (const auto& r : rules) {
    out.push_back({{"pattern", r.pattern}, {"category", r.category}});
  }
  return out;
}

// Distances to `target` over reversed edges.
std::unordered_map<std::string, std::size_t> distances_to(
    const std::string& target,
    const std::map<std::string, std::vector<std::string>>& preds) {
  std::unordered_map<std::string, std::size_t> dist{{target, 0}};
  std::deque<std::string> work{target};
  while (!work.empty()) {
    const auto n = work.front();
    work.pop_front();
    auto it = preds.find(n);
    if (it == preds.end()) {
      continue;
    }
    for (const auto& p : it->second) {
      if (dist.emplace(p, dist[n] + 1).second) {
        work.push_back(p);
      }
    }
  }
  return dist;
}

// Greedy walk along strictly decreasing distance, smallest id first.
std::vector<std::string> walk(
    const cg::CallGraph& graph, std::string from,
    const std::unordered_map<std::string, std::size_t>& dist) {
  std::vector<std::string> path{from};
  while (dist.at(from) > 0) {
    const auto want = dist.at(from) - 1;
    for (const auto& e : graph.out_edges(from)) {
      auto it = dist.find(e.to);
      if (it != dist.end() && it->second == want) {
        from = e.to;
        break;
      }
    }
    path.push_back(from);
  }
  return path;
}

std::map<std::string, std::vector<std::string>> predecessors(
    const cg::CallGraph& graph) {
  std::map<std::string, std::vector<std::string>> preds;
  for (const auto& e : graph.edges()) {
    auto& v = preds[e.to];
    if (v.empty() || v.back() != e.from) {
      v.push_back(e.from);
    }
  }
  return preds;
}

}  // namespace

SourceSinkSpec SourceSinkSpec::defaults() {
  SourceSinkSpec s;
  s.sources = {
      {"<android.telephony.TelephonyManager: java.lang.String getDeviceId()>", "Telephony"},
      {"<android.telephony.TelephonyManager: java.lang.String getLine1Number()>", "Telephony"},
      {"<android.telephony.TelephonyManager: java.lang.String getSubscriberId()>", "Telephony"},
      {"<android.telephony.TelephonyManager: java.lang.String getSimSerialNumber()>", "Telephony"},
      {"<android.location.Location: double getLatitude()>", "Location"},
      {"<android.location.Location: double getLongitude()>", "Location"},
      {"android.location.LocationManager.getLastKnownLocation", "Location"},
      {"android.database.Cursor.getString", "Database"},
      {"android.database.sqlite.SQLiteDatabase.query", "Database"},
      {"android.database.sqlite.SQLiteDatabase.rawQuery", "Database"},
      {"<android.net.wifi.WifiInfo: java.lang.String getSSID()>", "Wi-Fi"},
      {"<android.net.wifi.WifiInfo: java.lang.String getMacAddress()>", "Wi-Fi"},
  };
  s.sinks = {
      {"<java.lang.String: java.lang.String replace(java.lang.CharSequence,java.lang.CharSequence)>", "Replace"},
      {"android.content.SharedPreferences*Editor.put*", "SharedPreferences"},
      {"android.content.ContentResolver.insert", "ContentResolver"},
      {"android.content.ContentResolver.update", "ContentResolver"},
      {"android.app.Activity.startActivity*", "Activity"},
      {"android.content.Context.startActivity*", "Activity"},
      {"android.content.Intent.putExtra", "Intent"},
      {"android.util.Log.*", "Log"},
  };
  return s;
}

SourceSinkSpec load_sources_sinks(std::string_view document) {
  if (std::all_of(document.begin(), document.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; })) {
    return {};
  }
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation,
                std::string("source/sink document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::SchemaViolation, "$ must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "sources" && key != "sinks") {
      throw Error(ErrorCode::SchemaViolation, "unknown key $." + key);
    }
  }
  return {parse_rules(doc, "sources"), parse_rules(doc, "sinks")};
}

std::string dump_sources_sinks(const SourceSinkSpec& spec) {
  json doc{{"sources", rules_to_json(spec.sources)},
           {"sinks", rules_to_json(spec.sinks)}};
  return doc.dump(2) + "\n";
}

bool pattern_matches(std::string_view pattern, std::string_view nodeId) {
  pattern = strip_brackets(pattern);
  if (glob(pattern, strip_brackets(nodeId))) {
    return true;
  }
  const auto sig = ir::parse_signature(nodeId);
  if (!sig) {
    return false;
  }
  const auto dotted = sig->className + "." + sig->methodName;
  return glob(pattern, dotted) ||
         glob(pattern, dotted + "(" + join_params(sig->paramTypes) + ")");
}

std::string match_category(const std::vector<PatternRule>& rules,
                           std::string_view nodeId) {
  for (const auto& r : rules) {
    if (pattern_matches(r.pattern, nodeId)) {
      return r.category;
    }
  }
  return {};
}

std::vector<std::string> shortest_path(const cg::CallGraph& graph,
                                       const std::string& from,
                                       const std::string& to) {
  const auto dist = distances_to(to, predecessors(graph));
  if (!dist.contains(from)) {
    return {};
  }
  return walk(graph, from, dist);
}

bool path_crosses_bridge(const cg::CallGraph& graph,
                         const std::vector<std::string>& path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    for (const auto& e : graph.out_edges(path[i - 1])) {
      if (e.to == path[i] && e.kind == cg::EdgeKind::Bridge) {
        return true;
      }
    }
  }
  return false;
}

TaintResult run_taint(const cg::CallGraph& graph, const SourceSinkSpec& spec,
                      const TaintOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + options.timeout;

  const auto preds = predecessors(graph);
  std::vector<Endpoint> sources;
  std::vector<Endpoint> sinks;
  for (const auto& [id, node] : preds) {
    const auto src = match_category(spec.sources, id);
    const auto snk = match_category(spec.sinks, id);
    for (const auto& invoker : node) {
      if (!src.empty()) {
        sources.push_back({invoker, id, src});
      }
      if (!snk.empty()) {
        sinks.push_back({invoker, id, snk});
      }
    }
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::sort(sinks.begin(), sinks.end());
  sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());

  TaintResult result;
  if (sources.empty() || sinks.empty()) {
    return result;
  }
  std::map<std::string, std::unordered_map<std::string, std::size_t>> toSink;
  std::map<std::string, std::vector<std::string>> entryPaths;

  auto entry_path = [&](const std::string& node) -> const std::vector<std::string>& {
    auto it = entryPaths.find(node);
    if (it != entryPaths.end()) {
      return it->second;
    }
    const auto dist = distances_to(node, preds);
    const std::string* best = nullptr;
    for (const auto& r : graph.roots()) {
      auto d = dist.find(r);
      if (d != dist.end() && (best == nullptr || d->second < dist.at(*best))) {
        best = &r;
      }
    }
    std::vector<std::string> path;
    if (best != nullptr) {
      path = walk(graph, *best, dist);
    }
    return entryPaths.emplace(node, std::move(path)).first->second;
  };

  for (const auto& sink : sinks) {
    if (!toSink.contains(sink.node)) {
      toSink.emplace(sink.node, distances_to(sink.node, preds));
    }
  }
  for (const auto& source : sources) {
    if (Clock::now() > deadline) {
      result.timedOut = true;
      break;
    }
    for (const auto& sink : sinks) {
      const auto& dist = toSink.at(sink.node);
      if (!dist.contains(source.node)) {
        continue;
      }
      TaintFinding f;
      f.source = source;
      f.sink = sink;
      f.entryPath = entry_path(source.node);
      f.path = walk(graph, source.node, dist);
      f.crossesBridge = path_crosses_bridge(graph, f.entryPath) ||
                        path_crosses_bridge(graph, f.path);
      result.findings.push_back(std::move(f));
    }
  }
  std::sort(result.findings.begin(), result.findings.end());
  return result;
}

CategorySummary categorize_findings(const std::vector<TaintFinding>& findings) {
  CategorySummary summary;
  for (const auto& f : findings) {
    ++summary.flows[{f.source.category, f.sink.category}];
    ++summary.total;
  }
  return summary;
}

std::string sankey_json(const CategorySummary& summary) {
  json links = json::array();
  for (const auto& [key, count] : summary.flows) {
    links.push_back(
        {{"source", key.first}, {"target", key.second}, {"value", count}});
  }
  return json{{"links", links}, {"total", summary.total}}.dump(2) + "\n";
}

std::string findings_json(const TaintResult& result) {
  json list = json::array();
  for (const auto& f : result.findings) {
    auto endpoint = [](const Endpoint& e) {
      return json{{"node", e.node}, {"signature", e.signature},
                  {"category", e.category}};
    };
    list.push_back({{"source", endpoint(f.source)},
                    {"sink", endpoint(f.sink)},
                    {"entryPath", f.entryPath},
                    {"path", f.path},
                    {"crossesBridge", f.crossesBridge}});
  }
  return json{{"findings", list},
              {"count", result.findings.size()},
              {"timedOut", result.timedOut},
              {"countedAs", "distinct (source invoker, source, sink invoker, sink)"}}
             .dump(2) +
         "\n";
}

std::string findings_table(const std::vector<TaintFinding>& findings) {
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"SOURCE", "SINK", "CATEGORY", "BRIDGE", "PATH"});
  for (const auto& f : findings) {
    std::string path;
    for (std::size_t i = 0; i < f.path.size(); ++i) {
      path += (i ? " -> " : "") + f.path[i];
    }
    rows.push_back({f.source.signature, f.sink.signature,
                    f.source.category + " -> " + f.sink.category,
                    f.crossesBridge ? "yes" : "no", path});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      os << r[c] << std::string(width[c] - r[c].size() + 2, ' ');
    }
    os << r[4] << "\n";
  }
  return os.str();
}

}  // namespace hbcunify::taint
