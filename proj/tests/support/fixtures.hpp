// Copyright 2026 The sempol Authors.
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

#include "sempol/model.hpp"
#include "sempol/validate.hpp"

namespace sempol::testing {

std::filesystem::path fixture_path(const std::string& name);
std::filesystem::path golden_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);

ServiceModel travel_agency();

inline const std::string kSecurityNs = "http://emi/ws-semanticsecuritypolicy.xsd";
inline const std::string kAcmeNs = "http://example.org/acme-security";

inline QName sec(const std::string& local) { return {kSecurityNs, local}; }
inline QName acme(const std::string& local) { return {kAcmeNs, local}; }

/// Security domain of the TravelAgency model plus the acme alias schema.
Vocabulary fixture_vocabulary();

/// Fresh empty directory under the system temp directory.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace sempol::testing
