/*
 * Copyright 2026 The AltGen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "altgen/bcp47.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace altgen::bcp47 {

namespace {

constexpr std::array<std::string_view, 17> kIrregular = {
    "en-gb-oed", "i-ami",     "i-bnn",    "i-default", "i-enochian", "i-hak",
    "i-klingon", "i-lux",     "i-mingo",  "i-navajo",  "i-pwn",      "i-tao",
    "i-tay",     "i-tsu",     "sgn-be-fr", "sgn-be-nl", "sgn-ch-de"};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

bool all_of(std::string_view s, bool (*pred)(char)) {
  return !s.empty() && std::all_of(s.begin(), s.end(), pred);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view tag) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = tag.find('-', start);
    parts.push_back(tag.substr(start, dash == std::string_view::npos ? tag.npos : dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return parts;
}

bool private_use(const std::vector<std::string_view>& parts, std::size_t i) {
  // parts[i] is the "x" singleton
  if (i + 1 >= parts.size()) return false;
  for (std::size_t j = i + 1; j < parts.size(); ++j) {
    if (parts[j].size() > 8 || !all_of(parts[j], is_alnum)) return false;
  }
  return true;
}

}  // namespace

bool is_well_formed(std::string_view tag) {
  if (tag.empty()) return false;
  const std::string lowered = lower(tag);
  if (std::find(kIrregular.begin(), kIrregular.end(), lowered) != kIrregular.end()) return true;

  const std::vector<std::string_view> parts = split(tag);
  for (std::string_view p : parts) {
    if (p.empty() || p.size() > 8 || !all_of(p, is_alnum)) return false;
  }
  std::size_t i = 0;
  if (lower(parts[0]) == "x") return private_use(parts, 0);

  // language
  const std::string_view language = parts[i];
  if (!all_of(language, is_alpha) || language.size() < 2) return false;
  ++i;
  if (language.size() <= 3) {
    for (int ext = 0; ext < 3 && i < parts.size() && parts[i].size() == 3 && all_of(parts[i], is_alpha);
         ++ext) {
      ++i;
    }
  }
  // script
  if (i < parts.size() && parts[i].size() == 4 && all_of(parts[i], is_alpha)) ++i;
  // region
  if (i < parts.size() && ((parts[i].size() == 2 && all_of(parts[i], is_alpha)) ||
                           (parts[i].size() == 3 && all_of(parts[i], is_digit)))) {
    ++i;
  }
  // variants
  while (i < parts.size() && ((parts[i].size() >= 5) ||
                              (parts[i].size() == 4 && is_digit(parts[i][0])))) {
    ++i;
  }
  // extensions
  while (i < parts.size() && parts[i].size() == 1 && lower(parts[i]) != "x") {
    ++i;
    std::size_t n = 0;
    while (i < parts.size() && parts[i].size() >= 2) {
      ++i;
      ++n;
    }
    if (n == 0) return false;
  }
  if (i < parts.size() && lower(parts[i]) == "x") return private_use(parts, i);
  return i == parts.size();
}

std::string primary_subtag(std::string_view tag) {
  const std::size_t dash = tag.find_first_of("-_");
  return lower(tag.substr(0, dash));
}

}  // namespace altgen::bcp47
