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

#include <compare>
#include <string>
#include <string_view>

namespace sempol {

namespace ns {
inline constexpr std::string_view kWsdl = "http://www.w3.org/ns/wsdl";
inline constexpr std::string_view kWsdlSoap = "http://www.w3.org/ns/wsdl/soap";
inline constexpr std::string_view kWsdlHttp = "http://www.w3.org/ns/wsdl/http";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema";
inline constexpr std::string_view kXsi =
    "http://www.w3.org/2001/XMLSchema-instance";
inline constexpr std::string_view kSawsdl = "http://www.w3.org/ns/sawsdl";
inline constexpr std::string_view kPolicy = "http://www.w3.org/ns/ws-policy";
inline constexpr std::string_view kXml = "http://www.w3.org/XML/1998/namespace";
inline constexpr std::string_view kXmlns = "http://www.w3.org/2000/xmlns/";
}  // namespace ns

/// A namespace-qualified name. Prefixes never take part in identity; they are
/// assigned when a document is written.
struct QName {
  std::string ns;
  std::string local;

  QName() = default;
  QName(std::string namespace_uri, std::string local_name)
      : ns(std::move(namespace_uri)), local(std::move(local_name)) {}

  auto operator<=>(const QName&) const = default;
  bool operator==(const QName&) const = default;

  /// "{ns}local", or just "local" when the namespace is empty.
  std::string clark() const;

  /// Inverse of clark(). Throws sempol::Error on malformed input.
  static QName from_clark(std::string_view text);
};

/// XML Namespaces NCName: no colon, no leading digit, dash or dot. Bytes above
/// 0x7F are accepted as name characters (UTF-8 continuation of non-ASCII
/// letters).
bool is_ncname(std::string_view text);

}  // namespace sempol
