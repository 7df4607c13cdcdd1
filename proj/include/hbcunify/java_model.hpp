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

// Java-side class model and the Native Module / Component binding
// extraction that runs over it.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hbcunify/ir.hpp"

namespace hbcunify::java {

struct Annotation {
  std::string name;
  /// Every argument as a list of strings; scalar values have one element,
  /// non-string scalars are kept in their JSON spelling.
  std::map<std::string, std::vector<std::string>> args;
};

struct ConstantReturn {
  enum class Kind { Literal, Field, Expression };
  Kind kind = Kind::Literal;
  /// Literal value, field name, or expression text.
  std::string value;
};

struct JavaMethod {
  std::string name;
  std::vector<std::string> paramTypes;
  std::string returnType;
  std::vector<Annotation> annotations;
  std::optional<ConstantReturn> constantReturn;
  /// Full signatures of invoked methods, `<Class: Ret name(P)>`.
  std::vector<std::string> calls;

  /// Annotation whose simple name equals `simpleName`.
  const Annotation* annotation(std::string_view simpleName) const;
  bool same_shape(const JavaMethod& other) const {
    return name == other.name && paramTypes == other.paramTypes;
  }
};

struct JavaClass {
  std::string name;
  std::optional<std::string> superclass;
  std::vector<std::string> interfaces;
  bool isAbstract = false;
  std::vector<JavaMethod> methods;
  std::map<std::string, std::string> stringConstants;

  const JavaMethod* find_method(std::string_view name,
                                const std::vector<std::string>& params) const;
};

class ClassModel {
 public:
  /// Throws SchemaViolation on a repeated class name.
  void add(JavaClass cls);
  const JavaClass* find(std::string_view name) const;
  const std::map<std::string, JavaClass, std::less<>>& classes() const {
    return classes_;
  }
  /// Referenced supertypes that are not part of the model.
  const std::set<std::string, std::less<>>& external() const {
    return external_;
  }
  bool is_external(std::string_view name) const {
    return external_.contains(name);
  }
  /// Recomputes the external set; called by the loader after the last add.
  void link();

 private:
  std::map<std::string, JavaClass, std::less<>> classes_;
  std::set<std::string, std::less<>> external_;
};

/// Parses a schema v1 class-model document. Throws SchemaViolation with the
/// JSON path of the offending field.
ClassModel load_class_model(std::string_view document);

/// `<Class: Ret name(P1,P2)>` for a method of `className`.
ir::MethodSig method_signature(std::string_view className,
                               const JavaMethod& method);

/// Last dot- or dollar-separated segment of a type name.
std::string_view simple_name(std::string_view typeName);

/// Framework names the extraction keys on, compared by simple name so both
/// qualified and unqualified references match.
struct Markers {
  std::string baseModule = "ReactContextBaseJavaModule";
  std::string turboModule = "TurboModule";
  std::string moduleWithSpec = "ReactModuleWithSpec";
  std::string reactMethod = "ReactMethod";
  std::string reactProp = "ReactProp";
  std::string reactPropGroup = "ReactPropGroup";
  std::vector<std::string> componentRoots = {"ViewManager", "SimpleViewManager",
                                             "ViewGroupManager",
                                             "BaseViewManager"};
  std::vector<std::string> fabricRoots = {"ViewManagerWithGeneratedInterface"};
};

// Hierarchy --------------------------------------------------------------------

/// Transitive superclasses of `className`, nearest first. External names end
/// the walk.
std::vector<std::string> superclass_chain(const ClassModel& model,
                                          std::string_view className);

/// Every transitive supertype: superclasses, their interfaces, and the
/// interfaces those extend.
std::set<std::string> supertypes(const ClassModel& model,
                                 std::string_view className);

/// True when some strict supertype of `className` has the given simple name.
bool inherits_from(const ClassModel& model, std::string_view className,
                   std::string_view simpleName);

// Binding extraction -------------------------------------------------------------

enum class BindingKind {
  NativeModule,
  TurboNativeModule,
  NativeComponent,
  FabricNativeComponent,
};

std::string_view to_string(BindingKind kind);
bool is_module(BindingKind kind);

struct ModuleSpec {
  std::string className;
  BindingKind kind = BindingKind::NativeModule;

  bool operator==(const ModuleSpec&) const = default;
};

/// Topmost classes of each module shape. A TurboNativeModule spec reaches
/// the base module class and implements both the spec and turbo interfaces;
/// a NativeModule reaches the base without both. Sorted by class name.
std::vector<ModuleSpec> find_module_specs(const ClassModel& model,
                                          const Markers& markers = {});

/// Methods declared in `spec` with the ReactMethod annotation, in
/// declaration order.
std::vector<const JavaMethod*> collect_react_methods(
    const JavaClass& spec, const Markers& markers = {});

/// Non-abstract strict subclasses of each spec, sorted.
std::map<std::string, std::vector<std::string>> find_impl_classes(
    const ClassModel& model, const std::vector<ModuleSpec>& specs);

struct OverridePair {
  const JavaMethod* specMethod = nullptr;
  const JavaMethod* implMethod = nullptr;
  /// Class declaring implMethod: the impl or an intermediate superclass.
  std::string implOwner;
};

/// For each spec method, the most-derived redefinition by (name, params)
/// found walking from `impl` up to, but excluding, `specClass`.
std::vector<OverridePair> collect_overrides(
    const ClassModel& model, const JavaClass& impl, std::string_view specClass,
    const std::vector<const JavaMethod*>& specMethods);

struct NameResolution {
  enum class Status { Resolved, NoGetName, Unresolved };
  Status status = Status::NoGetName;
  std::optional<std::string> name;
  std::string detail;
};

/// Finds `String getName()` on the class or its ancestors and folds its
/// constant return, following at most one field through stringConstants.
NameResolution resolve_module_name(const ClassModel& model,
                                   const JavaClass& impl);

struct MethodTarget {
  std::string implClass;
  JavaMethod method;

  ir::MethodSig signature() const { return method_signature(implClass, method); }
};

struct ModuleBinding {
  BindingKind kind = BindingKind::NativeModule;
  std::string exposedName;
  std::map<std::string, MethodTarget> methodMap;
  std::string implClass;
  /// Spec class for TurboNativeModule, else the impl class itself.
  std::string specClass;
};

enum class WarningKind {
  UnresolvedName,
  NoGetName,
  NameCollision,
  EmptyMethodMap,
  MissingPropName,
};

std::string_view to_string(WarningKind kind);

struct BindingWarning {
  WarningKind kind = WarningKind::UnresolvedName;
  std::string className;
  std::string message;
};

struct BindingReport {
  /// Sorted by exposedName, then kind, then impl class.
  std::vector<ModuleBinding> bindings;
  std::vector<BindingWarning> warnings;
};

/// View managers: non-abstract classes inheriting a component root. Prop
/// names come from ReactProp `name` and ReactPropGroup `names`.
BindingReport extract_component_bindings(const ClassModel& model,
                                         const Markers& markers = {});

/// Module bindings of both architectures plus component bindings.
BindingReport extract_bindings(const ClassModel& model,
                               const Markers& markers = {});

struct BindingCounts {
  std::size_t moduleApiCount = 0;
  std::size_t moduleMethodCount = 0;
  std::size_t componentCount = 0;
  std::size_t componentMethodCount = 0;
};

BindingCounts count_bindings(const std::vector<ModuleBinding>& bindings);

}  // namespace hbcunify::java
