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

#include "sempol/uri.hpp"

#include <cctype>
#include <vector>

namespace sempol {

namespace {

bool is_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
  return is_digit(c) || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f');
}
bool is_unreserved(char c) {
  return is_alpha(c) || is_digit(c) || c == '-' || c == '.' || c == '_' ||
         c == '~';
}
bool is_sub_delim(char c) {
  switch (c) {
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}
bool is_gen_delim(char c) {
  switch (c) {
    case ':': case '/': case '?': case '#': case '[': case ']': case '@':
      return true;
    default:
      return false;
  }
}

int hex_value(char c) {
  if (is_digit(c)) return c - '0';
  return std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
}

// Length of the scheme including ':', or 0 when there is none.
std::size_t scheme_length(std::string_view text) {
  if (text.empty() || !is_alpha(text[0])) return 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    char c = text[i];
    if (c == ':') return i + 1;
    if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.'))
      return 0;
  }
  return 0;
}

struct UriParts {
  std::string_view scheme;
  bool hasAuthority = false;
  std::string_view authority;
  std::string_view path;
  std::string_view query;     // includes '?'
  std::string_view fragment;  // includes '#'
};

UriParts split(std::string_view text, std::size_t schemeLen) {
  UriParts parts;
  parts.scheme = text.substr(0, schemeLen - 1);
  std::string_view rest = text.substr(schemeLen);
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    parts.fragment = rest.substr(hash);
    rest = rest.substr(0, hash);
  }
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    parts.query = rest.substr(q);
    rest = rest.substr(0, q);
  }
  if (rest.starts_with("//")) {
    parts.hasAuthority = true;
    rest.remove_prefix(2);
    auto slash = rest.find('/');
    parts.authority = rest.substr(0, slash);
    parts.path = slash == std::string_view::npos ? std::string_view{}
                                                 : rest.substr(slash);
  } else {
    parts.path = rest;
  }
  return parts;
}

// Upper-cases hex digits and decodes unreserved characters.
std::string normalize_percent(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size() && is_hex(text[i + 1]) &&
        is_hex(text[i + 2])) {
      char decoded = static_cast<char>(hex_value(text[i + 1]) * 16 +
                                       hex_value(text[i + 2]));
      if (is_unreserved(decoded)) {
        out += decoded;
      } else {
        out += '%';
        out += static_cast<char>(std::toupper(static_cast<unsigned char>(text[i + 1])));
        out += static_cast<char>(std::toupper(static_cast<unsigned char>(text[i + 2])));
      }
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view input) {
  std::vector<std::string_view> output;
  bool absolute = input.starts_with('/');
  std::string_view rest = input;
  if (absolute) rest.remove_prefix(1);
  bool trailingSlash = false;
  while (true) {
    auto slash = rest.find('/');
    std::string_view segment = rest.substr(0, slash);
    bool last = slash == std::string_view::npos;
    if (segment == ".") {
      trailingSlash = last;
    } else if (segment == "..") {
      if (!output.empty()) output.pop_back();
      trailingSlash = last;
    } else {
      output.push_back(segment);
      trailingSlash = false;
    }
    if (last) break;
    rest = rest.substr(slash + 1);
  }
  std::string out = absolute ? "/" : "";
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (i > 0) out += '/';
    out += output[i];
  }
  if (trailingSlash && !out.empty() && out.back() != '/') out += '/';
  return out;
}

}  // namespace

bool is_absolute_uri(std::string_view text) {
  std::size_t schemeLen = scheme_length(text);
  if (schemeLen == 0) return false;
  bool seenHash = false;
  for (std::size_t i = schemeLen; i < text.size(); ++i) {
    char c = text[i];
    if (c == '%') {
      if (i + 2 >= text.size() || !is_hex(text[i + 1]) || !is_hex(text[i + 2]))
        return false;
      i += 2;
      continue;
    }
    if (c == '#') {
      if (seenHash) return false;
      seenHash = true;
      continue;
    }
    if (c == '[' || c == ']') {
      // Only legal inside an IP-literal host; accept them anywhere in the
      // authority rather than parse IPv6.
      continue;
    }
    if (!(is_unreserved(c) || is_sub_delim(c) || is_gen_delim(c))) return false;
  }
  return true;
}

std::string normalize_uri(std::string_view text) {
  std::size_t schemeLen = scheme_length(text);
  if (schemeLen == 0 || !is_absolute_uri(text)) return std::string(text);
  UriParts parts = split(text, schemeLen);

  std::string out;
  out.reserve(text.size());
  for (char c : parts.scheme)
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  out += ':';
  if (parts.hasAuthority) {
    out += "//";
    std::string_view authority = parts.authority;
    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
      out += normalize_percent(authority.substr(0, at + 1));
      authority = authority.substr(at + 1);
    }
    for (char c : normalize_percent(authority))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  out += remove_dot_segments(normalize_percent(parts.path));
  out += normalize_percent(parts.query);
  out += normalize_percent(parts.fragment);
  return out;
}

}  // namespace sempol
