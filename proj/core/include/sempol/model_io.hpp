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

#include <string>
#include <string_view>

#include "sempol/model.hpp"

namespace sempol {

inline constexpr std::string_view kModelFormatVersion = "1.0";

/// Parses a model document (JSON, format 1.0; see docs/model-format.md).
///
/// The result is canonical: collections are sorted by name. Throws
/// SyntaxError for malformed JSON and SchemaError for structural problems
/// (unknown key, missing field, bad URI, duplicate attachment subject).
ServiceModel parse_model(std::string_view text);

/// Canonical model document: fixed key order, 2-space indentation, sorted
/// collections, empty collections and default flags omitted.
std::string serialize_model(const ServiceModel& model);

}  // namespace sempol
