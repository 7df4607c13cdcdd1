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

#include <stdexcept>
#include <string>
#include <string_view>

namespace hbcunify {

enum class ErrorCode {
  // Disassembly frontend.
  MalformedHeader,
  UnknownOperandShape,
  DanglingLabel,
  RegisterOutOfRange,
  DanglingStringRef,
  UnsupportedVariant,
  // IR.
  EmptyName,
  InvalidName,
  DuplicateSignature,
  // Lifter.
  UnliftableOperand,
  // Java side and configuration documents.
  SchemaViolation,
  // Call graph.
  UnknownRoot,
  // Generic I/O.
  Io,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every recoverable input error. `line` is 1-based and
/// zero when the error has no source position.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, int line = 0);

  ErrorCode code() const noexcept { return code_; }
  int line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

}  // namespace hbcunify
