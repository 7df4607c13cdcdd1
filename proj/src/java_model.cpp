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

#include "hbcunify/error.hpp"
#include "hbcunify/java_model.hpp"
#include "json.hpp"

namespace hbcunify::java {

namespace {

using nlohmann::json;

[[noreturn]] void violation(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    violation(path, std::string("missing required field '") + key + "'");
  }
  return *it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    violation(path, "expected a string");
  }
  return v.get<std::string>();
}

std::string non_empty(const json& v, const std::string& path) {
  auto s = as_string(v, path);
  if (s.empty()) {
    violation(path, "must not be empty");
  }
  return s;
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
  if (!v.is_array()) {
    violation(path, "expected an array");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(non_empty(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

bool is_string_type(std::string_view type) {
  return type == "java.lang.String" || type == "String";
}

Annotation parse_annotation(const json& v, const std::string& path) {
  Annotation a;
  if (v.is_string()) {
    a.name = non_empty(v, path);
    return a;
  }
  if (!v.is_object()) {
    violation(path, "expected an annotation name or object");
  }
  a.name = non_empty(require(v, "name", path), path + ".name");
  if (auto it = v.find("args"); it != v.end()) {
    if (!it->is_object()) {
      violation(path + ".args", "expected an object");
    }
    for (const auto& [key, value] : it->items()) {
      auto& slot = a.args[key];
      auto scalar = [](const json& x) {
        return x.is_string() ? x.get<std::string>() : x.dump();
      };
      if (value.is_array()) {
        for (const auto& x : value) {
          slot.push_back(scalar(x));
        }
      } else {
        slot.push_back(scalar(value));
      }
    }
  }
  return a;
}

JavaMethod parse_method(const json& v, const std::string& path) {
  if (!v.is_object()) {
    violation(path, "expected an object");
  }
  JavaMethod m;
  m.name = non_empty(require(v, "name", path), path + ".name");
  m.returnType = non_empty(require(v, "return", path), path + ".return");
  if (auto it = v.find("params"); it != v.end()) {
    m.paramTypes = string_list(*it, path + ".params");
  }
  if (auto it = v.find("annotations"); it != v.end()) {
    if (!it->is_array()) {
      violation(path + ".annotations", "expected an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      m.annotations.push_back(parse_annotation(
          (*it)[i], path + ".annotations[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = v.find("constantReturn"); it != v.end() && !it->is_null()) {
    const auto cpath = path + ".constantReturn";
    if (!is_string_type(m.returnType)) {
      violation(cpath, "only allowed on methods returning a string");
    }
    ConstantReturn c;
    if (it->is_string()) {
      c.kind = ConstantReturn::Kind::Literal;
      c.value = it->get<std::string>();
    } else if (it->is_object() && it->contains("field")) {
      c.kind = ConstantReturn::Kind::Field;
      c.value = non_empty((*it)["field"], cpath + ".field");
    } else if (it->is_object() && it->contains("expr")) {
      c.kind = ConstantReturn::Kind::Expression;
      c.value = as_string((*it)["expr"], cpath + ".expr");
    } else {
      violation(cpath, "expected a string, {\"field\": ...} or {\"expr\": ...}");
    }
    m.constantReturn = std::move(c);
  }
  if (auto it = v.find("calls"); it != v.end()) {
    m.calls = string_list(*it, path + ".calls");
    for (std::size_t i = 0; i < m.calls.size(); ++i) {
      if (!ir::parse_signature(m.calls[i])) {
        violation(path + ".calls[" + std::to_string(i) + "]",
                  "not a method signature: " + m.calls[i]);
      }
    }
  }
  return m;
}

JavaClass parse_class(const json& v, const std::string& path) {
  if (!v.is_object()) {
    violation(path, "expected an object");
  }
  JavaClass c;
  c.name = non_empty(require(v, "name", path), path + ".name");
  if (auto it = v.find("super"); it != v.end() && !it->is_null()) {
    c.superclass = non_empty(*it, path + ".super");
  }
  if (auto it = v.find("interfaces"); it != v.end()) {
    c.interfaces = string_list(*it, path + ".interfaces");
  }
  if (auto it = v.find("abstract"); it != v.end()) {
    if (!it->is_boolean()) {
      violation(path + ".abstract", "expected a boolean");
    }
    c.isAbstract = it->get<bool>();
  }
  if (auto it = v.find("stringConstants"); it != v.end()) {
    if (!it->is_object()) {
      violation(path + ".stringConstants", "expected an object");
    }
    for (const auto& [key, value] : it->items()) {
      c.stringConstants[key] =
          as_string(value, path + ".stringConstants." + key);
    }
  }
  if (auto it = v.find("methods"); it != v.end()) {
    if (!it->is_array()) {
      violation(path + ".methods", "expected an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto mpath = path + ".methods[" + std::to_string(i) + "]";
      auto m = parse_method((*it)[i], mpath);
      if (c.find_method(m.name, m.paramTypes) != nullptr) {
        violation(mpath, "duplicate method " + m.name);
      }
      c.methods.push_back(std::move(m));
    }
  }
  return c;
}

}  // namespace

const Annotation* JavaMethod::annotation(std::string_view simpleName) const {
  for (const auto& a : annotations) {
    if (simple_name(a.name) == simpleName) {
      return &a;
    }
  }
  return nullptr;
}

const JavaMethod* JavaClass::find_method(
    std::string_view methodName, const std::vector<std::string>& params) const {
  for (const auto& m : methods) {
    if (m.name == methodName && m.paramTypes == params) {
      return &m;
    }
  }
  return nullptr;
}

void ClassModel::add(JavaClass cls) {
  if (classes_.contains(cls.name)) {
    throw Error(ErrorCode::SchemaViolation, "duplicate class " + cls.name);
  }
  auto name = cls.name;
  classes_.emplace(std::move(name), std::move(cls));
}

const JavaClass* ClassModel::find(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

void ClassModel::link() {
  external_.clear();
  for (const auto& [name, cls] : classes_) {
    if (cls.superclass && !classes_.contains(*cls.superclass)) {
      external_.insert(*cls.superclass);
    }
    for (const auto& i : cls.interfaces) {
      if (!classes_.contains(i)) {
        external_.insert(i);
      }
    }
  }
}

ClassModel load_class_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation,
                std::string("$: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    violation("$", "expected an object");
  }
  if (auto it = doc.find("schemaVersion"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() != 1) {
      violation("$.schemaVersion", "unsupported version " + it->dump());
    }
  }
  const auto& classes = require(doc, "classes", "$");
  if (!classes.is_array()) {
    violation("$.classes", "expected an array");
  }
  ClassModel model;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto path = "$.classes[" + std::to_string(i) + "]";
    auto cls = parse_class(classes[i], path);
    if (model.find(cls.name) != nullptr) {
      violation(path + ".name", "duplicate class " + cls.name);
    }
    model.add(std::move(cls));
  }
  model.link();
  return model;
}

ir::MethodSig method_signature(std::string_view className,
                               const JavaMethod& method) {
  return ir::make_signature(className, method.name, method.paramTypes,
                            method.returnType);
}

std::string_view simple_name(std::string_view typeName) {
  const auto cut = typeName.find_last_of(".$");
  return cut == std::string_view::npos ? typeName : typeName.substr(cut + 1);
}

}  // namespace hbcunify::java
