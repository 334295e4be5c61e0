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

#include "sempol/model.hpp"

#include <algorithm>
#include <array>

namespace sempol {

namespace {

constexpr std::array<std::pair<TypeKind, std::string_view>, 3> kTypeKinds{{
    {TypeKind::Empty, "empty"},
    {TypeKind::Simple, "simple"},
    {TypeKind::Complex, "complex"},
}};

constexpr std::array<std::pair<SubjectKind, std::string_view>, 5> kSubjectKinds{{
    {SubjectKind::Endpoint, "endpoint"},
    {SubjectKind::Binding, "binding"},
    {SubjectKind::Operation, "operation"},
    {SubjectKind::Interface, "interface"},
    {SubjectKind::Service, "service"},
}};

template <typename T>
void sort_by_name(std::vector<T>& items) {
  std::stable_sort(items.begin(), items.end(),
                   [](const T& a, const T& b) { return a.name < b.name; });
}

}  // namespace

std::string_view to_string(TypeKind kind) {
  for (auto [k, name] : kTypeKinds)
    if (k == kind) return name;
  return "empty";
}

std::optional<TypeKind> type_kind_from_string(std::string_view text) {
  for (auto [k, name] : kTypeKinds)
    if (name == text) return k;
  return std::nullopt;
}

std::string_view to_string(SubjectKind kind) {
  for (auto [k, name] : kSubjectKinds)
    if (k == kind) return name;
  return "endpoint";
}

std::optional<SubjectKind> subject_kind_from_string(std::string_view text) {
  for (auto [k, name] : kSubjectKinds)
    if (name == text) return k;
  return std::nullopt;
}

std::string SubjectRef::to_string() const {
  std::string out(sempol::to_string(kind));
  out += ':';
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '/';
    out += path[i];
  }
  return out;
}

std::optional<SubjectRef> SubjectRef::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto kind = subject_kind_from_string(text.substr(0, colon));
  if (!kind) return std::nullopt;
  SubjectRef ref{*kind, {}};
  std::string_view rest = text.substr(colon + 1);
  if (rest.empty()) return ref;
  while (true) {
    auto slash = rest.find('/');
    ref.path.emplace_back(rest.substr(0, slash));
    if (slash == std::string_view::npos) break;
    rest = rest.substr(slash + 1);
  }
  return ref;
}

void canonicalize(ServiceModel& model) {
  sort_by_name(model.domains);
  for (auto& domain : model.domains) {
    sort_by_name(domain.assertions);
    for (auto& decl : domain.assertions) sort_by_name(decl.attributes);
  }
  sort_by_name(model.interfaces);
  for (auto& iface : model.interfaces) {
    sort_by_name(iface.operations);
    sort_by_name(iface.faults);
    for (auto& op : iface.operations) {
      sort_by_name(op.inputs);
      sort_by_name(op.outputs);
    }
  }
  sort_by_name(model.bindings);
  sort_by_name(model.services);
  for (auto& service : model.services) sort_by_name(service.endpoints);
  std::stable_sort(model.namespaces.begin(), model.namespaces.end(),
                   [](const NamespaceBinding& a, const NamespaceBinding& b) {
                     return a.prefix < b.prefix;
                   });
  std::stable_sort(model.attachments.begin(), model.attachments.end(),
                   [](const PolicyAttachment& a, const PolicyAttachment& b) {
                     return a.subject < b.subject;
                   });
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

std::string Diagnostic::to_string() const {
  std::string out(sempol::to_string(severity));
  out += ' ';
  out += code;
  out += ' ';
  out += subjectPath;
  out += ": ";
  out += message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace sempol
