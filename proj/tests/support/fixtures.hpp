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

#include <filesystem>
#include <string>
#include <vector>

namespace hbcunify::testing {

std::filesystem::path fixture_path(const std::string& relative);
std::string read_fixture(const std::string& relative);
std::string read_file(const std::filesystem::path& path);
/// Files under `relative` with the given extension, sorted by name.
std::vector<std::filesystem::path> list_fixtures(const std::string& relative,
                                                 const std::string& extension);

}  // namespace hbcunify::testing
