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

#include "hbcunify/error.hpp"

namespace hbcunify {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnknownOperandShape: return "UnknownOperandShape";
    case ErrorCode::DanglingLabel: return "DanglingLabel";
    case ErrorCode::RegisterOutOfRange: return "RegisterOutOfRange";
    case ErrorCode::DanglingStringRef: return "DanglingStringRef";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::DuplicateSignature: return "DuplicateSignature";
    case ErrorCode::UnliftableOperand: return "UnliftableOperand";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnknownRoot: return "UnknownRoot";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           int line) {
  std::string out(to_string(code));
  if (line > 0) {
    out += " at line " + std::to_string(line);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, int line)
    : std::runtime_error(format_message(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace hbcunify
