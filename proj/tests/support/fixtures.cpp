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

#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sempol/model_io.hpp"
#include "sempol/reader.hpp"

#ifndef SEMPOL_TEST_DATA_DIR
#error "SEMPOL_TEST_DATA_DIR must point at the tests directory"
#endif

namespace fs = std::filesystem;

namespace sempol::testing {

fs::path fixture_path(const std::string& name) {
  return fs::path(SEMPOL_TEST_DATA_DIR) / "fixtures" / name;
}

fs::path golden_path(const std::string& name) {
  return fs::path(SEMPOL_TEST_DATA_DIR) / "golden" / name;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ServiceModel travel_agency() { return parse_model(read_file(fixture_path("travel_agency.json"))); }

Vocabulary fixture_vocabulary() {
  std::vector<DomainSchema> domains = travel_agency().domains;
  domains.push_back(parse_domain_xsd(read_file(fixture_path("acme-security.xsd"))));
  return assertion_vocabulary(domains);
}

fs::path scratch_dir(const std::string& tag) {
  std::random_device rd;
  fs::path dir = fs::temp_directory_path() /
                 ("sempol-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace sempol::testing
