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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/ocf_container.hpp"
#include "altgen/package_doc.hpp"

// A small accessibility rule engine in the spirit of Ace-style checkers.
// The rule catalog is fixed:
//
//   ImgMissingAlt             Error    img without alt, not decorative
//   ImgEmptyAltNonDecorative  Warning  alt="" without role=presentation/none
//   MissingDcLanguage         Error    no dc:language
//   InvalidLanguageTag        Warning  dc:language is not a well-formed BCP 47 tag
//   MissingAccessibilityMetadata Warning no schema:accessMode
//   MissingDcTitle            Error    no dc:title
//   DanglingImageResource     Error    image source resolves to no archive entry
//   UnparseableDocument       Warning  content document could not be read
namespace altgen::audit {

inline constexpr std::string_view kPackageLocation = "package";

enum class IssueCode {
  ImgMissingAlt,
  ImgEmptyAltNonDecorative,
  MissingDcLanguage,
  InvalidLanguageTag,
  MissingAccessibilityMetadata,
  MissingDcTitle,
  DanglingImageResource,
  UnparseableDocument,
};

enum class Severity { Error, Warning };

std::string_view to_string(IssueCode code);
std::string_view to_string(Severity severity);
Severity severity_of(IssueCode code);

struct Location {
  std::string doc_path;  // container path, or "package"
  std::optional<std::size_t> element_index;
  bool operator==(const Location&) const = default;
};

struct Issue {
  IssueCode code;
  Severity severity;
  Location location;
  std::string message;
  bool operator==(const Issue&) const = default;
};

struct AuditReport {
  std::vector<Issue> issues;
  std::size_t error_count = 0;
  std::size_t warning_count = 0;
  std::size_t files_scanned = 0;
  bool operator==(const AuditReport&) const = default;
};

// Sorts by (doc_path, element_index, code) and fills the counters.
AuditReport make_report(std::vector<Issue> issues, std::size_t files_scanned);

AuditReport audit(const ocf::EpubArchive& archive, const opf::PackageDocument& pkg);

}  // namespace altgen::audit
