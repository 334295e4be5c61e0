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

namespace sempol {

/// True for a syntactically valid URI (RFC 3986) that has a scheme. A
/// fragment is permitted, so ontology references such as
/// "http://example.org/onto#Concept" qualify.
bool is_absolute_uri(std::string_view text);

/// RFC 3986 syntax-based normalization: lower-cases the scheme and host,
/// upper-cases percent-encoding hex digits, decodes percent-encoded unreserved
/// characters and removes dot segments from the path. Input that is not an
/// absolute URI is returned unchanged.
std::string normalize_uri(std::string_view text);

}  // namespace sempol
