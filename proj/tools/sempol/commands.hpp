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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sempol/intersect.hpp"
#include "sempol/policy.hpp"

namespace sempol::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalid = 1,     // validation or input format failure
  kUnresolved = 2,  // I/O, usage or vocabulary resolution failure
  kEmpty = 3,       // empty or unsatisfiable result
};

enum class OutputFormat { Text, Xml };

/// Namespace URI -> display prefix.
using PrefixMap = std::map<std::string, std::string>;

/// Text rendering of a normal form: one alternative per line, instances
/// space-separated; nested forms follow their alternative, indented.
std::string format_normal_form(const NormalForm& form, const PrefixMap& prefixes);

int cmd_validate(const std::string& modelPath, std::ostream& out, std::ostream& err);

int cmd_generate(const std::string& modelPath, const std::string& outputDir,
                 std::ostream& out, std::ostream& err);

int cmd_normalize(const std::string& source, OutputFormat format, std::ostream& out,
                  std::ostream& err);

struct IntersectOptions {
  MatchMode mode = MatchMode::Strict;
  std::vector<std::string> vocabPaths;
  bool explain = false;
};

int cmd_intersect(const std::string& sourceA, const std::string& sourceB,
                  const IntersectOptions& options, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sempol::cli
