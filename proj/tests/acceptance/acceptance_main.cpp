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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "sempol/emit.hpp"
#include "sempol/error.hpp"
#include "sempol/intersect.hpp"
#include "sempol/model_io.hpp"
#include "sempol/normalize.hpp"
#include "sempol/reader.hpp"
#include "sempol/xml.hpp"

namespace sempol::acceptance {
namespace {

namespace fs = std::filesystem;
using testing::acme;
using testing::sec;

struct Result {
  bool pass = false;
  std::string detail;
};

Result fail(std::string why) { return {false, std::move(why)}; }

struct Criterion {
  int id;
  std::string title;
  double budgetSeconds;  // 0 means no budget
  std::function<Result()> run;
};

std::string rendered(const EmittedFile& f) { return xml::write_canonical(f.document); }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b);
}

// Trimmed lines strictly inside the first element whose start tag begins
// with `open`.
std::vector<std::string> lines_inside(const std::string& text, const std::string& open,
                                      const std::string& close) {
  std::vector<std::string> out;
  std::istringstream in(text);
  bool inside = false;
  for (std::string line; std::getline(in, line);) {
    std::string t = trim(line);
    if (!inside) {
      inside = t.rfind(open, 0) == 0;
      continue;
    }
    if (t == close) break;
    out.push_back(t);
  }
  return out;
}

NormalForm hash_requirement() {
  return make_normal_form({{instance(sec("HashPassword")), instance(sec("WssUsernameToken10"))}});
}

NormalForm password_choices() {
  return make_normal_form({{instance(sec("NoPassword")), instance(sec("WssUsernameToken10"))},
                           {instance(sec("HashPassword")), instance(sec("WssUsernameToken10"))}});
}

NormalForm endpoint_policy(const ServiceModel& model) {
  std::vector<std::string> schemas;
  auto files = emit_wsdl(model);
  for (std::size_t i = 1; i < files.size(); ++i) schemas.push_back(rendered(files[i]));
  ParsedArtifacts parsed = parse_wsdl(rendered(files[0]), schemas);
  if (parsed.attachments.size() != 1) throw std::runtime_error("expected one attachment");
  return normalize(parsed.attachments[0].policy);
}

Result travel_agency_wsdl() {
  auto files = emit_wsdl(testing::travel_agency());
  if (files.empty() || files[0].fileName != "TravelAgency.wsdl")
    return fail("unexpected file set");
  std::string wsdl = rendered(files[0]);
  if (wsdl != testing::read_file(testing::golden_path("TravelAgency.wsdl")))
    return fail("WSDL differs from golden file");

  const std::vector<std::string> strings = {
      "targetNamespace=\"http://emi/TravelAgency.wsdl20\"",
      "xmlns:wsdl=\"http://www.w3.org/ns/wsdl\"",
      "xmlns:xs=\"http://www.w3.org/2001/XMLSchema\"",
      "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"",
      "xsi:schemaLocation=\"http://www.w3.org/ns/wsdl http://www.w3.org/2007/06/wsdl/wsdl20.xsd\"",
      "xmlns:wsp=\"http://www.w3.org/ns/ws-policy\"",
      "schemaLocation=\"ws-semanticsecuritypolicy.xsd\"",
      "namespace=\"http://emi/ws-semanticsecuritypolicy.xsd\"",
      "name=\"TravelAgencyEndpoint\"",
      "binding=\"TravelAgencyBinding\"",
      "address=\"http://emi/TravelAgencyService\"",
  };
  for (const auto& s : strings)
    if (wsdl.find(s) == std::string::npos) return fail("missing " + s);

  const std::vector<std::string> nesting = {
      "<wsp:Policy>",        "<sp:UsernameToken>",         "<wsp:Policy>",
      "<wsp:ExactlyOne>",    "<wsp:All>",                  "<sp:NoPassword/>",
      "<sp:WssUsernameToken10/>", "</wsp:All>",            "<wsp:All>",
      "<sp:HashPassword/>",  "<sp:WssUsernameToken10/>",   "</wsp:All>",
      "</wsp:ExactlyOne>",   "</wsp:Policy>",              "</sp:UsernameToken>",
      "</wsp:Policy>",
  };
  if (lines_inside(wsdl, "<wsdl:endpoint ", "</wsdl:endpoint>") != nesting)
    return fail("endpoint policy nesting differs from the listing");
  return {true, "golden bytes match; " + std::to_string(strings.size()) +
                    " listing strings and " + std::to_string(nesting.size()) +
                    "-line policy nesting found"};
}

Result security_domain_xsd() {
  auto files = emit_wsdl(testing::travel_agency());
  if (files.size() != 2 || files[1].fileName != "ws-semanticsecuritypolicy.xsd")
    return fail("unexpected file set");
  if (rendered(files[1]) != testing::read_file(testing::golden_path(files[1].fileName)))
    return fail("XSD differs from golden file");
  const xml::Element& root = files[1].document.root;
  if (root.name != QName{std::string(ns::kXsd), "schema"}) return fail("root is not xs:schema");
  std::set<std::string> names;
  const QName modelReference{std::string(ns::kSawsdl), "modelReference"};
  for (const auto& c : root.children) {
    if (c.name != QName{std::string(ns::kXsd), "element"}) continue;
    auto name = c.attribute("name");
    if (!name) return fail("unnamed element");
    auto ref = c.attribute(modelReference);
    if (!ref || ref->empty()) return fail(*name + " lacks sawsdl:modelReference");
    names.insert(*name);
  }
  const std::set<std::string> expected = {"UsernameToken", "NoPassword", "HashPassword",
                                          "WssUsernameToken10"};
  if (names != expected) return fail("element set differs");
  return {true, "4 annotated top-level elements"};
}

constexpr int kTrees = 1000;
constexpr std::uint64_t kTreeSeed = 20261016;

Result normalization_oracle() {
  testing::Rng rng(kTreeSeed);
  int checked = 0;
  for (int n = 0; n < kTrees; ++n) {
    PolicyExpr e = testing::random_policy(rng);
    testing::OracleForm expected;
    try {
      expected = testing::enumerate_oracle_form(e);
    } catch (const testing::OracleRefused& r) {
      return fail(std::string("oracle refused a tree: ") + r.what());
    }
    if (testing::to_oracle_form(normalize(e)) != expected)
      return fail("mismatch on " + testing::describe(e));
    ++checked;
  }
  return {true, std::to_string(checked) + " trees agree with the enumeration oracle"};
}

Result normalization_round_trip() {
  testing::Rng rng(kTreeSeed);
  int roundTrips = 0;
  int refused = 0;
  for (int n = 0; n < kTrees; ++n) {
    PolicyExpr e = testing::random_policy(rng);
    NormalForm nf = normalize(e);
    if (normalize(denormalize(nf)) != nf) return fail("not idempotent on " + testing::describe(e));
    if (nf.unsatisfiable()) {
      // The emitter refuses policies with no alternatives.
      try {
        emit_policy_element(e);
        return fail("unsatisfiable policy was emitted: " + testing::describe(e));
      } catch (const GenerationError&) {
        ++refused;
      }
      continue;
    }
    PolicyExpr back = parse_policy_element(emit_policy_element(e));
    if (normalize(back) != nf) return fail("round trip changed " + testing::describe(e));
    ++roundTrips;
  }
  return {true, std::to_string(kTrees) + " idempotent; " + std::to_string(roundTrips) +
                    " emit/parse round trips; " + std::to_string(refused) +
                    " unsatisfiable trees refused by the emitter"};
}

testing::FormShape fixture_shape() {
  testing::FormShape shape;
  shape.names = {sec("UsernameToken"), sec("NoPassword"), sec("HashPassword"),
                 sec("WssUsernameToken10"), acme("UserToken"), acme("HashedPwd"),
                 acme("UsernameToken10")};
  shape.maxInstances = 3;
  return shape;
}

Result intersection_properties() {
  Vocabulary vocab = testing::fixture_vocabulary();
  testing::Rng rng(77);
  constexpr int kPairs = 1000;
  for (int n = 0; n < kPairs; ++n) {
    bool fixtureNames = n % 2 == 1;
    testing::FormShape shape = fixtureNames ? fixture_shape() : testing::FormShape{};
    NormalForm p = testing::random_normal_form(rng, shape);
    NormalForm q = testing::random_normal_form(rng, shape);
    std::vector<MatchMode> modes{MatchMode::Strict};
    if (fixtureNames) modes.push_back(MatchMode::Semantic);
    for (MatchMode mode : modes) {
      NormalForm pq = intersect(p, q, mode, vocab);
      if (!normal_forms_equal(pq, intersect(q, p, mode, vocab)))
        return fail("not commutative on " + testing::describe(p) + " x " + testing::describe(q));
      for (const auto& alt : pq.alternatives) {
        bool fromP = false;
        bool fromQ = false;
        for (const auto& x : p.alternatives) fromP = fromP || testing::covers(alt, x);
        for (const auto& y : q.alternatives) fromQ = fromQ || testing::covers(alt, y);
        if (!fromP || !fromQ)
          return fail("unsound on " + testing::describe(p) + " x " + testing::describe(q));
      }
    }
  }

  if (intersect(password_choices(), hash_requirement(), MatchMode::Strict, {}) != hash_requirement())
    return fail("flat example differs");
  NormalForm provider = endpoint_policy(testing::travel_agency());
  NormalForm requester = normalize(
      parse_policy_document(testing::read_file(testing::fixture_path("requester_hash.xml"))));
  NormalForm result = intersect(provider, requester, MatchMode::Strict, {});
  NormalForm expected = make_normal_form({{instance(sec("UsernameToken"), hash_requirement())}});
  if (result != expected) return fail("example gave " + testing::describe(result));
  return {true, std::to_string(kPairs) +
                    " pairs commutative and sound; example yields {{HashPassword, "
                    "WssUsernameToken10}}"};
}

Result semantic_widening() {
  Vocabulary vocab = testing::fixture_vocabulary();
  NormalForm provider = endpoint_policy(testing::travel_agency());
  NormalForm alias = normalize(
      parse_policy_document(testing::read_file(testing::fixture_path("requester_alias.xml"))));
  if (!intersect(provider, alias, MatchMode::Strict, vocab).unsatisfiable())
    return fail("strict intersection with the alias requester is not empty");
  if (intersect(provider, alias, MatchMode::Semantic, vocab).unsatisfiable())
    return fail("semantic intersection with the alias requester is empty");

  testing::Rng rng(4321);
  constexpr int kPairs = 1000;
  int widened = 0;
  for (int n = 0; n < kPairs; ++n) {
    NormalForm p = testing::random_normal_form(rng, fixture_shape());
    NormalForm q = testing::random_normal_form(rng, fixture_shape());
    IntersectionReport strict = intersect_explained(p, q, MatchMode::Strict, vocab);
    IntersectionReport semantic = intersect_explained(p, q, MatchMode::Semantic, vocab);
    for (const auto& m : strict.matches) {
      bool found = false;
      for (const auto& s : semantic.matches) found = found || (s.left == m.left && s.right == m.right);
      if (!found)
        return fail("strict pair lost in semantic mode: " + testing::describe(p) + " x " +
                    testing::describe(q));
    }
    if (strict.result.unsatisfiable() && !semantic.result.unsatisfiable()) ++widened;
  }
  return {true, "alias fixture widened; strict implies semantic over " + std::to_string(kPairs) +
                    " pairs (" + std::to_string(widened) + " widened)"};
}

std::vector<std::string> rendered_set(const ServiceModel& m) {
  std::vector<std::string> out;
  for (const auto& f : emit_wsdl(m)) out.push_back(f.fileName + "\n" + rendered(f));
  return out;
}

Result model_round_trip() {
  std::vector<ServiceModel> corpus{testing::travel_agency()};
  testing::Rng rng(100);
  for (int n = 0; n < 150; ++n) corpus.push_back(testing::random_model(rng));
  int generated = 0;
  for (const auto& m : corpus) {
    std::string text = serialize_model(m);
    if (parse_model(text) != m) return fail("round trip changed model " + m.modelName);
    if (serialize_model(parse_model(text)) != text) return fail("serialization unstable");
    if (m.services.empty()) continue;
    if (rendered_set(m) != rendered_set(parse_model(text)))
      return fail("emitted files differ across runs for " + m.modelName);
    ++generated;
  }
  return {true, std::to_string(corpus.size()) + " models round-trip; " + std::to_string(generated) +
                    " file sets byte-identical across runs"};
}

Result external_conformance() {
  std::string python = SEMPOL_PYTHON;
  if (python.empty()) return fail("no Python interpreter found at configure time");
  fs::path dir = testing::scratch_dir("acceptance-conformance");
  std::vector<ServiceModel> corpus{testing::travel_agency()};
  testing::Rng rng(55);
  while (corpus.size() < 20) {
    ServiceModel m = testing::random_model(rng);
    if (!m.services.empty()) corpus.push_back(std::move(m));
  }
  std::string args;
  int files = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    fs::path sub = dir / std::to_string(i);
    fs::create_directories(sub);
    for (const auto& f : emit_wsdl(corpus[i])) {
      std::ofstream(sub / f.fileName, std::ios::binary) << rendered(f);
      args += " '" + (sub / f.fileName).string() + "'";
      ++files;
    }
  }
  fs::path log = dir / "validator.log";
  std::string cmd = "'" + python + "' '" + SEMPOL_CONFORMANCE_SCRIPT + "'" + args + " > '" +
                    log.string() + "' 2>&1";
  int status = std::system(cmd.c_str());
  if (status != 0) {
    std::string output = testing::read_file(log);
    return fail("external validator failed:\n" + output);
  }
  fs::remove_all(dir);
  return {true, std::to_string(files) + " files accepted by the external validator"};
}

}  // namespace
}  // namespace sempol::acceptance

int main() {
  using namespace sempol::acceptance;
  const std::vector<Criterion> criteria = {
      {1, "generated WSDL reproduces the TravelAgency listing", 1.0, travel_agency_wsdl},
      {2, "security domain XSD declares the four annotated assertions", 1.0, security_domain_xsd},
      {3, "normalize equals the enumeration oracle", 30.0, normalization_oracle},
      {4, "normalize is idempotent and survives emit/parse", 30.0, normalization_round_trip},
      {5, "intersection is commutative and sound", 30.0, intersection_properties},
      {6, "semantic matching widens strict matching", 0.0, semantic_widening},
      {7, "models round-trip and emission is deterministic", 0.0, model_round_trip},
      {8, "emitted files pass external schema validation", 0.0, external_conformance},
  };
  bool allPassed = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.pass && c.budgetSeconds > 0 && seconds >= c.budgetSeconds) {
      r.pass = false;
      r.detail += "; over the " + std::to_string(c.budgetSeconds) + " s budget";
    }
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << seconds;
    std::cout << "AC" << c.id << " " << (r.pass ? "PASS" : "FAIL") << " " << c.title << ": "
              << r.detail << " (" << time.str() << " s)" << std::endl;
    allPassed = allPassed && r.pass;
  }
  return allPassed ? 0 : 1;
}
