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

// Links JavaScript call sites to Java bindings and recognizes calls of
// built-in JavaScript APIs.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hbcunify/ir.hpp"
#include "hbcunify/java_model.hpp"
#include "hbcunify/lifter.hpp"

namespace hbcunify::bridge {

enum class Confidence { Exact, NameOnly };
std::string_view to_string(Confidence confidence);

enum class MatchPattern {
  /// `... <exposedName> <method>` in the callee chain.
  ChainAdjacency,
  /// `TurboModuleRegistry.get[Enforcing]("<exposedName>").<method>`.
  TurboRegistry,
};
std::string_view to_string(MatchPattern pattern);

struct CrossLangEdge {
  ir::MethodSig from;
  std::size_t atStatement = 0;
  std::size_t argCount = 0;
  /// Rendered callee descriptor of the call site.
  std::string descriptor;
  java::MethodTarget to;
  std::string methodKey;
  java::BindingKind viaKind = java::BindingKind::NativeModule;
  std::string viaName;
  std::string viaImpl;
  Confidence confidence = Confidence::NameOnly;
  MatchPattern pattern = MatchPattern::ChainAdjacency;

  ir::MethodSig target() const { return to.signature(); }
};

/// Exact when the Java arity equals the JavaScript argument count minus the
/// receiver slot, or exceeds it by one trailing Promise parameter.
Confidence arity_confidence(std::size_t jsArgCount,
                            const std::vector<std::string>& javaParams);

/// One edge per (call site, binding, method); sorted by caller, statement,
/// exposed name, method key, then impl class.
std::vector<CrossLangEdge> match_invocations(
    const std::vector<lift::CallSiteRecord>& callSites,
    const std::vector<java::ModuleBinding>& bindings);

struct UnlinkedBridgeCall {
  ir::MethodSig from;
  std::size_t atStatement = 0;
  std::string descriptor;
};

/// Call sites reading through `NativeModules` that matched no binding.
std::vector<UnlinkedBridgeCall> find_unlinked_bridge_calls(
    const std::vector<lift::CallSiteRecord>& callSites,
    const std::vector<CrossLangEdge>& edges);

struct BuiltinCatalog {
  std::vector<std::string> entries;

  static BuiltinCatalog defaults();
  /// One dotted name per line; blank lines and `#` comments are skipped.
  static BuiltinCatalog parse(std::string_view text);
};

struct BuiltinResolution {
  lift::CallSiteRecord callSite;
  std::string builtinName;
};

/// Property-access callees whose dotted chain ends with a catalog entry; the
/// longest matching entry wins.
std::vector<BuiltinResolution> recover_builtins(
    const std::vector<lift::CallSiteRecord>& callSites,
    const BuiltinCatalog& catalog = BuiltinCatalog::defaults());

}  // namespace hbcunify::bridge
