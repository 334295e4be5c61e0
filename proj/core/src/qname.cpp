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

#include "sempol/qname.hpp"

#include "sempol/error.hpp"

namespace sempol {

namespace {

bool is_name_start(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

}  // namespace

bool is_ncname(std::string_view text) {
  if (text.empty() || !is_name_start(static_cast<unsigned char>(text[0])))
    return false;
  for (char c : text.substr(1)) {
    if (!is_name_char(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string QName::clark() const {
  if (ns.empty()) return local;
  std::string out;
  out.reserve(ns.size() + local.size() + 2);
  out += '{';
  out += ns;
  out += '}';
  out += local;
  return out;
}

QName QName::from_clark(std::string_view text) {
  if (text.empty()) throw Error("empty QName");
  if (text.front() != '{') {
    if (!is_ncname(text)) throw Error("invalid QName '" + std::string(text) + "'");
    return {"", std::string(text)};
  }
  auto close = text.find('}');
  if (close == std::string_view::npos)
    throw Error("unterminated namespace in QName '" + std::string(text) + "'");
  auto local = text.substr(close + 1);
  if (!is_ncname(local))
    throw Error("invalid local name in QName '" + std::string(text) + "'");
  return {std::string(text.substr(1, close - 1)), std::string(local)};
}

}  // namespace sempol
