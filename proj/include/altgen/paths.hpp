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

#pragma once

#include <optional>
#include <string>
#include <string_view>

// Container-relative path arithmetic. Container paths use `/`, never start
// with `/` and never contain `.` or `..` segments.
namespace altgen::paths {

// Collapses `.` and `..` segments; nullopt when the path escapes the root.
std::optional<std::string> normalize(std::string_view path);

bool is_valid_entry_path(std::string_view path);

std::string dirname(std::string_view path);
std::string filename(std::string_view path);
std::string stem(std::string_view path);
std::string extension(std::string_view path);

// True for hrefs carrying a URI scheme (`http:`, `data:`, ...).
bool is_external(std::string_view href);

std::string percent_decode(std::string_view s);
std::string percent_encode_path(std::string_view s);

// Resolves an href found in a document living in `base_dir`. Fragments and
// queries are dropped; nullopt for external or root-escaping hrefs.
std::optional<std::string> resolve(std::string_view base_dir, std::string_view href);

// Href that resolves to `target` from a document living in `base_dir`.
std::string relative_href(std::string_view base_dir, std::string_view target);

}  // namespace altgen::paths
