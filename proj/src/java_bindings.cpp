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
#include <deque>
#include <tuple>

#include "hbcunify/java_model.hpp"

namespace hbcunify::java {

namespace {

bool is_string_type(std::string_view type) {
  return type == "java.lang.String" || type == "String";
}

// The class itself followed by its in-model superclasses.
std::vector<const JavaClass*> lineage(const ClassModel& model,
                                      const JavaClass& cls) {
  std::vector<const JavaClass*> out{&cls};
  for (const auto& name : superclass_chain(model, cls.name)) {
    if (const auto* c = model.find(name)) {
      out.push_back(c);
    }
  }
  return out;
}

bool inherits_any(const ClassModel& model, std::string_view className,
                  const std::vector<std::string>& roots) {
  for (const auto& root : roots) {
    if (inherits_from(model, className, simple_name(root))) {
      return true;
    }
  }
  return false;
}

bool is_turbo_shape(const ClassModel& model, std::string_view name,
                    const Markers& markers) {
  return inherits_from(model, name, simple_name(markers.turboModule)) &&
         inherits_from(model, name, simple_name(markers.moduleWithSpec));
}

struct Visible {
  std::string owner;
  const JavaMethod* method = nullptr;
  /// Most-derived declaration carrying each annotation, by simple name.
  std::map<std::string, const Annotation*, std::less<>> annotations;
};

// Methods callable on `cls`, most-derived definition first by (name, params),
// with annotations merged across the override chain.
std::vector<Visible> visible_methods(const ClassModel& model,
                                     const JavaClass& cls) {
  std::vector<Visible> out;
  for (const auto* c : lineage(model, cls)) {
    for (const auto& m : c->methods) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Visible& v) {
        return v.method->same_shape(m);
      });
      if (it == out.end()) {
        out.push_back({c->name, &m, {}});
        it = std::prev(out.end());
      }
      for (const auto& a : m.annotations) {
        it->annotations.emplace(std::string(simple_name(a.name)), &a);
      }
    }
  }
  return out;
}

void warn(BindingReport& report, WarningKind kind, std::string className,
          std::string message) {
  report.warnings.push_back({kind, std::move(className), std::move(message)});
}

// Resolves the exposed name, reporting why when it cannot.
std::optional<std::string> exposed_name(const ClassModel& model,
                                        const JavaClass& cls,
                                        BindingReport& report) {
  auto resolution = resolve_module_name(model, cls);
  switch (resolution.status) {
    case NameResolution::Status::Resolved:
      return resolution.name;
    case NameResolution::Status::NoGetName:
      warn(report, WarningKind::NoGetName, cls.name,
           "no String getName() on " + cls.name + " or its superclasses");
      return std::nullopt;
    case NameResolution::Status::Unresolved:
      warn(report, WarningKind::UnresolvedName, cls.name, resolution.detail);
      return std::nullopt;
  }
  return std::nullopt;
}

void add_method(ModuleBinding& binding, BindingReport& report,
                const std::string& key, std::string owner,
                const JavaMethod& method) {
  if (binding.methodMap.contains(key)) {
    warn(report, WarningKind::NameCollision, binding.implClass,
         "method name " + key + " exposed twice by " + binding.implClass +
             "; keeping the first");
    return;
  }
  binding.methodMap.emplace(key, MethodTarget{std::move(owner), method});
}

void finish(BindingReport& report, std::optional<ModuleBinding> binding) {
  if (binding) {
    report.bindings.push_back(std::move(*binding));
  }
}

std::optional<ModuleBinding> named_binding(const ClassModel& model,
                                           const JavaClass& impl,
                                           BindingKind kind,
                                           std::string specClass,
                                           BindingReport& report) {
  auto name = exposed_name(model, impl, report);
  if (!name) {
    return std::nullopt;
  }
  ModuleBinding b;
  b.kind = kind;
  b.exposedName = std::move(*name);
  b.implClass = impl.name;
  b.specClass = std::move(specClass);
  return b;
}

bool keep_nonempty(BindingReport& report, const ModuleBinding& binding) {
  if (binding.methodMap.empty()) {
    warn(report, WarningKind::EmptyMethodMap, binding.implClass,
         binding.implClass + " exposes \"" + binding.exposedName +
             "\" without any methods");
    return false;
  }
  return true;
}

void sort_report(BindingReport& report) {
  std::sort(report.bindings.begin(), report.bindings.end(),
            [](const ModuleBinding& a, const ModuleBinding& b) {
              return std::tie(a.exposedName, a.kind, a.implClass) <
                     std::tie(b.exposedName, b.kind, b.implClass);
            });
  std::stable_sort(report.warnings.begin(), report.warnings.end(),
                   [](const BindingWarning& a, const BindingWarning& b) {
                     return std::tie(a.className, a.kind, a.message) <
                            std::tie(b.className, b.kind, b.message);
                   });
}

}  // namespace

std::string_view to_string(BindingKind kind) {
  switch (kind) {
    case BindingKind::NativeModule: return "NativeModule";
    case BindingKind::TurboNativeModule: return "TurboNativeModule";
    case BindingKind::NativeComponent: return "NativeComponent";
    case BindingKind::FabricNativeComponent: return "FabricNativeComponent";
  }
  return "NativeModule";
}

bool is_module(BindingKind kind) {
  return kind == BindingKind::NativeModule ||
         kind == BindingKind::TurboNativeModule;
}

std::string_view to_string(WarningKind kind) {
  switch (kind) {
    case WarningKind::UnresolvedName: return "UnresolvedName";
    case WarningKind::NoGetName: return "NoGetName";
    case WarningKind::NameCollision: return "NameCollision";
    case WarningKind::EmptyMethodMap: return "EmptyMethodMap";
    case WarningKind::MissingPropName: return "MissingPropName";
  }
  return "UnresolvedName";
}

std::vector<std::string> superclass_chain(const ClassModel& model,
                                          std::string_view className) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen{std::string(className)};
  const JavaClass* cur = model.find(className);
  while (cur != nullptr && cur->superclass &&
         seen.insert(*cur->superclass).second) {
    out.push_back(*cur->superclass);
    cur = model.find(*cur->superclass);
  }
  return out;
}

std::set<std::string> supertypes(const ClassModel& model,
                                 std::string_view className) {
  std::set<std::string> out;
  std::deque<std::string> queue{std::string(className)};
  while (!queue.empty()) {
    const auto name = std::move(queue.front());
    queue.pop_front();
    const JavaClass* cls = model.find(name);
    if (cls == nullptr) {
      continue;
    }
    auto visit = [&](const std::string& t) {
      if (t != className && out.insert(t).second) {
        queue.push_back(t);
      }
    };
    if (cls->superclass) {
      visit(*cls->superclass);
    }
    for (const auto& i : cls->interfaces) {
      visit(i);
    }
  }
  return out;
}

bool inherits_from(const ClassModel& model, std::string_view className,
                   std::string_view simpleName) {
  for (const auto& t : supertypes(model, className)) {
    if (simple_name(t) == simpleName) {
      return true;
    }
  }
  return false;
}

std::vector<ModuleSpec> find_module_specs(const ClassModel& model,
                                          const Markers& markers) {
  const auto base = simple_name(markers.baseModule);
  std::vector<ModuleSpec> out;
  for (const auto& [name, cls] : model.classes()) {
    if (!inherits_from(model, name, base)) {
      continue;
    }
    const bool turbo = is_turbo_shape(model, name, markers);
    // Only the topmost class of each shape is reported; its subclasses are
    // implementations.
    if (cls.superclass && model.find(*cls.superclass) != nullptr &&
        inherits_from(model, *cls.superclass, base) &&
        is_turbo_shape(model, *cls.superclass, markers) == turbo) {
      continue;
    }
    out.push_back({name, turbo ? BindingKind::TurboNativeModule
                               : BindingKind::NativeModule});
  }
  return out;
}

std::vector<const JavaMethod*> collect_react_methods(const JavaClass& spec,
                                                     const Markers& markers) {
  std::vector<const JavaMethod*> out;
  for (const auto& m : spec.methods) {
    if (m.annotation(simple_name(markers.reactMethod)) != nullptr) {
      out.push_back(&m);
    }
  }
  return out;
}

std::map<std::string, std::vector<std::string>> find_impl_classes(
    const ClassModel& model, const std::vector<ModuleSpec>& specs) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& spec : specs) {
    auto& impls = out[spec.className];
    for (const auto& [name, cls] : model.classes()) {
      if (cls.isAbstract) {
        continue;
      }
      const auto chain = superclass_chain(model, name);
      if (std::find(chain.begin(), chain.end(), spec.className) != chain.end()) {
        impls.push_back(name);
      }
    }
  }
  return out;
}

std::vector<OverridePair> collect_overrides(
    const ClassModel& model, const JavaClass& impl, std::string_view specClass,
    const std::vector<const JavaMethod*>& specMethods) {
  std::vector<const JavaClass*> chain;
  for (const auto* c : lineage(model, impl)) {
    if (c->name == specClass) {
      break;
    }
    chain.push_back(c);
  }
  std::vector<OverridePair> out;
  for (const auto* sm : specMethods) {
    for (const auto* c : chain) {
      if (const auto* m = c->find_method(sm->name, sm->paramTypes)) {
        out.push_back({sm, m, c->name});
        break;
      }
    }
  }
  return out;
}

NameResolution resolve_module_name(const ClassModel& model,
                                   const JavaClass& impl) {
  NameResolution r;
  const JavaMethod* getter = nullptr;
  std::string owner;
  for (const auto* c : lineage(model, impl)) {
    if (const auto* m = c->find_method("getName", {});
        m != nullptr && is_string_type(m->returnType)) {
      getter = m;
      owner = c->name;
      break;
    }
  }
  if (getter == nullptr) {
    r.status = NameResolution::Status::NoGetName;
    return r;
  }
  r.status = NameResolution::Status::Unresolved;
  const auto where = owner + ".getName()";
  if (!getter->constantReturn) {
    r.detail = where + " does not return a constant";
    return r;
  }
  const auto& c = *getter->constantReturn;
  switch (c.kind) {
    case ConstantReturn::Kind::Literal:
      if (c.value.empty()) {
        r.detail = where + " returns an empty string";
        return r;
      }
      r.status = NameResolution::Status::Resolved;
      r.name = c.value;
      return r;
    case ConstantReturn::Kind::Field: {
      // A qualified field names its declaring class; otherwise search the
      // impl's lineage.
      const auto field = std::string(simple_name(c.value));
      const JavaClass* start = &impl;
      if (field.size() != c.value.size()) {
        start = model.find(c.value.substr(0, c.value.size() - field.size() - 1));
      }
      if (start != nullptr) {
        for (const auto* k : lineage(model, *start)) {
          if (auto it = k->stringConstants.find(field);
              it != k->stringConstants.end() && !it->second.empty()) {
            r.status = NameResolution::Status::Resolved;
            r.name = it->second;
            return r;
          }
        }
      }
      r.detail = where + " returns field " + c.value +
                 " with no known string value";
      return r;
    }
    case ConstantReturn::Kind::Expression:
      r.detail = where + " returns a non-constant expression '" + c.value + "'";
      return r;
  }
  return r;
}

BindingReport extract_component_bindings(const ClassModel& model,
                                         const Markers& markers) {
  BindingReport report;
  const auto prop = simple_name(markers.reactProp);
  const auto group = simple_name(markers.reactPropGroup);
  for (const auto& [name, cls] : model.classes()) {
    if (cls.isAbstract) {
      continue;
    }
    const bool fabric = inherits_any(model, name, markers.fabricRoots);
    if (!fabric && !inherits_any(model, name, markers.componentRoots)) {
      continue;
    }
    BindingReport local;
    ModuleBinding draft;
    draft.implClass = name;
    for (const auto& v : visible_methods(model, cls)) {
      std::vector<std::string> keys;
      if (auto it = v.annotations.find(prop); it != v.annotations.end()) {
        auto arg = it->second->args.find("name");
        if (arg == it->second->args.end() || arg->second.empty() ||
            arg->second.front().empty()) {
          warn(local, WarningKind::MissingPropName, name,
               v.owner + "." + v.method->name + " has ReactProp without a name");
        } else {
          keys.push_back(arg->second.front());
        }
      }
      if (auto it = v.annotations.find(group); it != v.annotations.end()) {
        auto arg = it->second->args.find("names");
        if (arg == it->second->args.end() || arg->second.empty()) {
          warn(local, WarningKind::MissingPropName, name,
               v.owner + "." + v.method->name +
                   " has ReactPropGroup without names");
        } else {
          keys.insert(keys.end(), arg->second.begin(), arg->second.end());
        }
      }
      for (const auto& key : keys) {
        add_method(draft, local, key, v.owner, *v.method);
      }
    }
    report.warnings.insert(report.warnings.end(), local.warnings.begin(),
                           local.warnings.end());
    if (draft.methodMap.empty()) {
      continue;
    }
    auto binding = named_binding(
        model, cls,
        fabric ? BindingKind::FabricNativeComponent : BindingKind::NativeComponent,
        name, report);
    if (binding) {
      binding->methodMap = std::move(draft.methodMap);
      finish(report, std::move(binding));
    }
  }
  sort_report(report);
  return report;
}

BindingReport extract_bindings(const ClassModel& model,
                               const Markers& markers) {
  BindingReport report;
  const auto specs = find_module_specs(model, markers);
  const auto impls = find_impl_classes(model, specs);
  const auto react_method = simple_name(markers.reactMethod);

  for (const auto& spec : specs) {
    const JavaClass& spec_cls = *model.find(spec.className);
    if (spec.kind == BindingKind::TurboNativeModule) {
      const auto spec_methods = collect_react_methods(spec_cls, markers);
      for (const auto& impl_name : impls.at(spec.className)) {
        const JavaClass& impl = *model.find(impl_name);
        auto binding = named_binding(model, impl, spec.kind, spec.className,
                                     report);
        if (!binding) {
          continue;
        }
        for (const auto& pair :
             collect_overrides(model, impl, spec.className, spec_methods)) {
          add_method(*binding, report, pair.specMethod->name, pair.implOwner,
                     *pair.implMethod);
        }
        if (keep_nonempty(report, *binding)) {
          finish(report, std::move(binding));
        }
      }
      continue;
    }

    std::vector<std::string> candidates;
    if (!spec_cls.isAbstract) {
      candidates.push_back(spec.className);
    }
    const auto& sub = impls.at(spec.className);
    candidates.insert(candidates.end(), sub.begin(), sub.end());
    for (const auto& impl_name : candidates) {
      const JavaClass& impl = *model.find(impl_name);
      auto binding = named_binding(model, impl, spec.kind, impl_name, report);
      if (!binding) {
        continue;
      }
      for (const auto& v : visible_methods(model, impl)) {
        if (v.annotations.contains(react_method)) {
          add_method(*binding, report, v.method->name, v.owner, *v.method);
        }
      }
      if (keep_nonempty(report, *binding)) {
        finish(report, std::move(binding));
      }
    }
  }

  auto components = extract_component_bindings(model, markers);
  report.bindings.insert(report.bindings.end(),
                         std::make_move_iterator(components.bindings.begin()),
                         std::make_move_iterator(components.bindings.end()));
  report.warnings.insert(report.warnings.end(), components.warnings.begin(),
                         components.warnings.end());

  std::map<std::pair<bool, std::string>, std::vector<std::string>> owners;
  for (const auto& b : report.bindings) {
    owners[{is_module(b.kind), b.exposedName}].push_back(b.implClass);
  }
  for (const auto& [key, classes] : owners) {
    if (classes.size() > 1) {
      for (const auto& c : classes) {
        warn(report, WarningKind::NameCollision, c,
             "\"" + key.second + "\" is exposed by " +
                 std::to_string(classes.size()) + " classes");
      }
    }
  }
  sort_report(report);
  return report;
}

BindingCounts count_bindings(const std::vector<ModuleBinding>& bindings) {
  BindingCounts counts;
  for (const auto& b : bindings) {
    if (is_module(b.kind)) {
      ++counts.moduleApiCount;
      counts.moduleMethodCount += b.methodMap.size();
    } else {
      ++counts.componentCount;
      counts.componentMethodCount += b.methodMap.size();
    }
  }
  return counts;
}

}  // namespace hbcunify::java
