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

#include "hbcunify/bridge.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace hbcunify::bridge {

namespace {

std::vector<std::string> split_dots(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto dot = s.find('.', start);
    out.emplace_back(s.substr(start, dot - start));
    if (dot == std::string_view::npos) {
      return out;
    }
    start = dot + 1;
  }
}

struct Hit {
  std::string method;
  MatchPattern pattern;
};

std::vector<Hit> matches(const lift::RegisterDescriptor& callee,
                         const java::ModuleBinding& binding) {
  std::vector<Hit> hits;
  const auto& chain = callee.chain;
  auto add = [&](const std::string& method, MatchPattern pattern) {
    if (!binding.methodMap.contains(method)) {
      return;
    }
    for (const auto& h : hits) {
      if (h.method == method) {
        return;
      }
    }
    hits.push_back({method, pattern});
  };
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i] == binding.exposedName) {
      add(chain[i + 1], MatchPattern::ChainAdjacency);
    }
  }
  for (std::size_t i = 1; i + 2 < chain.size(); ++i) {
    if (chain[i - 1] != "TurboModuleRegistry" ||
        (chain[i] != "get" && chain[i] != "getEnforcing") ||
        chain[i + 1] != lift::kFunctionOutput) {
      continue;
    }
    auto lit = callee.callLiterals.find(i + 1);
    if (lit != callee.callLiterals.end() && lit->second == binding.exposedName) {
      add(chain[i + 2], MatchPattern::TurboRegistry);
    }
  }
  return hits;
}

}  // namespace

std::string_view to_string(Confidence confidence) {
  return confidence == Confidence::Exact ? "Exact" : "NameOnly";
}

std::string_view to_string(MatchPattern pattern) {
  return pattern == MatchPattern::ChainAdjacency ? "ChainAdjacency"
                                                 : "TurboRegistry";
}

Confidence arity_confidence(std::size_t jsArgCount,
                            const std::vector<std::string>& javaParams) {
  const std::size_t visible = jsArgCount == 0 ? 0 : jsArgCount - 1;
  if (javaParams.size() == visible) {
    return Confidence::Exact;
  }
  if (javaParams.size() == visible + 1 &&
      java::simple_name(javaParams.back()) == "Promise") {
    return Confidence::Exact;
  }
  return Confidence::NameOnly;
}

std::vector<CrossLangEdge> match_invocations(
    const std::vector<lift::CallSiteRecord>& callSites,
    const std::vector<java::ModuleBinding>& bindings) {
  std::vector<CrossLangEdge> edges;
  for (const auto& site : callSites) {
    for (const auto& binding : bindings) {
      for (const auto& hit : matches(site.calleeDescriptor, binding)) {
        const auto& target = binding.methodMap.at(hit.method);
        CrossLangEdge e;
        e.from = site.callerSig;
        e.atStatement = site.statementIndex;
        e.argCount = site.argCount;
        e.descriptor = hit.pattern == MatchPattern::TurboRegistry
                           ? site.calleeDescriptor.annotated()
                           : site.calleeDescriptor.render();
        e.to = target;
        e.methodKey = hit.method;
        e.viaKind = binding.kind;
        e.viaName = binding.exposedName;
        e.viaImpl = binding.implClass;
        e.confidence = arity_confidence(site.argCount, target.method.paramTypes);
        e.pattern = hit.pattern;
        edges.push_back(std::move(e));
      }
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const CrossLangEdge& a, const CrossLangEdge& b) {
              const auto fa = a.from.to_string();
              const auto fb = b.from.to_string();
              return std::tie(fa, a.atStatement, a.viaName, a.methodKey,
                              a.viaImpl, a.viaKind) <
                     std::tie(fb, b.atStatement, b.viaName, b.methodKey,
                              b.viaImpl, b.viaKind);
            });
  return edges;
}

std::vector<UnlinkedBridgeCall> find_unlinked_bridge_calls(
    const std::vector<lift::CallSiteRecord>& callSites,
    const std::vector<CrossLangEdge>& edges) {
  std::set<std::pair<std::string, std::size_t>> linked;
  for (const auto& e : edges) {
    linked.emplace(e.from.to_string(), e.atStatement);
  }
  std::vector<UnlinkedBridgeCall> out;
  for (const auto& site : callSites) {
    const auto& chain = site.calleeDescriptor.chain;
    if (std::find(chain.begin(), chain.end(), "NativeModules") == chain.end() ||
        linked.contains({site.callerSig.to_string(), site.statementIndex})) {
      continue;
    }
    out.push_back({site.callerSig, site.statementIndex,
                   site.calleeDescriptor.render()});
  }
  return out;
}

BuiltinCatalog BuiltinCatalog::defaults() {
  return {{"console.log", "console.warn", "console.error", "alert",
           "JSON.parse", "JSON.stringify", "setTimeout", "setInterval",
           "Promise.then", "fetch"}};
}

BuiltinCatalog BuiltinCatalog::parse(std::string_view text) {
  BuiltinCatalog catalog;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    auto line = text.substr(start, end == std::string_view::npos
                                       ? std::string_view::npos
                                       : end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const auto last = line.find_last_not_of(" \t\r");
      catalog.entries.emplace_back(line.substr(first, last - first + 1));
    }
    if (end == std::string_view::npos) {
      break;
    }
    start = end + 1;
  }
  return catalog;
}

std::vector<BuiltinResolution> recover_builtins(
    const std::vector<lift::CallSiteRecord>& callSites,
    const BuiltinCatalog& catalog) {
  std::vector<std::vector<std::string>> entries;
  for (const auto& e : catalog.entries) {
    entries.push_back(split_dots(e));
  }
  std::vector<BuiltinResolution> out;
  for (const auto& site : callSites) {
    if (site.calleeDescriptor.origin != lift::Origin::PropertyAccess) {
      continue;
    }
    const auto segments = split_dots(site.calleeDescriptor.render());
    std::size_t best = entries.size();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& e = entries[k];
      if (e.size() > segments.size() ||
          !std::equal(e.rbegin(), e.rend(), segments.rbegin())) {
        continue;
      }
      if (best == entries.size() || e.size() > entries[best].size()) {
        best = k;
      }
    }
    if (best != entries.size()) {
      out.push_back({site, catalog.entries[best]});
    }
  }
  return out;
}

}  // namespace hbcunify::bridge
