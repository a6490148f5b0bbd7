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

#include "altgen/a11y_audit.hpp"

#include <algorithm>
#include <tuple>

#include "altgen/bcp47.hpp"
#include "altgen/content_docs.hpp"
#include "altgen/text.hpp"

namespace altgen::audit {

std::string_view to_string(IssueCode code) {
  switch (code) {
    case IssueCode::ImgMissingAlt:
      return "ImgMissingAlt";
    case IssueCode::ImgEmptyAltNonDecorative:
      return "ImgEmptyAltNonDecorative";
    case IssueCode::MissingDcLanguage:
      return "MissingDcLanguage";
    case IssueCode::InvalidLanguageTag:
      return "InvalidLanguageTag";
    case IssueCode::MissingAccessibilityMetadata:
      return "MissingAccessibilityMetadata";
    case IssueCode::MissingDcTitle:
      return "MissingDcTitle";
    case IssueCode::DanglingImageResource:
      return "DanglingImageResource";
    case IssueCode::UnparseableDocument:
      return "UnparseableDocument";
  }
  return "Unknown";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "Error" : "Warning";
}

Severity severity_of(IssueCode code) {
  switch (code) {
    case IssueCode::ImgMissingAlt:
    case IssueCode::MissingDcLanguage:
    case IssueCode::DanglingImageResource:
    case IssueCode::MissingDcTitle:
      return Severity::Error;
    default:
      return Severity::Warning;
  }
}

AuditReport make_report(std::vector<Issue> issues, std::size_t files_scanned) {
  std::stable_sort(issues.begin(), issues.end(), [](const Issue& a, const Issue& b) {
    return std::tie(a.location.doc_path, a.location.element_index, a.code) <
           std::tie(b.location.doc_path, b.location.element_index, b.code);
  });
  AuditReport report;
  report.files_scanned = files_scanned;
  for (const Issue& issue : issues) {
    if (issue.severity == Severity::Error) {
      ++report.error_count;
    } else {
      ++report.warning_count;
    }
  }
  report.issues = std::move(issues);
  return report;
}

namespace {

Issue make_issue(IssueCode code, std::string doc_path, std::optional<std::size_t> index,
                 std::string message) {
  return Issue{code, severity_of(code), Location{std::move(doc_path), index}, std::move(message)};
}

void check_package(const opf::PackageDocument& pkg, std::vector<Issue>& issues) {
  const std::string package(kPackageLocation);
  if (!pkg.first_value(opf::MetaKind::DcTitle)) {
    issues.push_back(make_issue(IssueCode::MissingDcTitle, package, std::nullopt, "no dc:title"));
  }
  const std::vector<std::string> languages = pkg.values(opf::MetaKind::DcLanguage);
  if (languages.empty()) {
    issues.push_back(make_issue(IssueCode::MissingDcLanguage, package, std::nullopt, "no dc:language"));
  }
  for (const std::string& tag : languages) {
    if (!bcp47::is_well_formed(tag)) {
      issues.push_back(make_issue(IssueCode::InvalidLanguageTag, package, std::nullopt,
                                  "dc:language '" + tag + "' is not a well-formed BCP 47 tag"));
    }
  }
  if (!pkg.has_accessibility("accessMode")) {
    issues.push_back(make_issue(IssueCode::MissingAccessibilityMetadata, package, std::nullopt,
                                "no schema:accessMode metadata"));
  }
}

void check_document(const ocf::EpubArchive& archive, const std::string& path, const ocf::ArchiveEntry& entry,
                    std::vector<Issue>& issues) {
  std::vector<content::ImageOccurrence> images;
  try {
    images = content::find_images(entry, path);
  } catch (const content::ContentError& e) {
    issues.push_back(make_issue(IssueCode::UnparseableDocument, path, std::nullopt, e.what()));
    return;
  }
  for (const content::ImageOccurrence& img : images) {
    const std::string where = "image #" + std::to_string(img.element_index) + " (" + img.raw_src + ")";
    if (!img.decorative) {
      if (!img.existing_alt) {
        issues.push_back(make_issue(IssueCode::ImgMissingAlt, path, img.element_index, where + " has no alt"));
      } else if (text::normalize_whitespace(*img.existing_alt).empty()) {
        issues.push_back(make_issue(IssueCode::ImgEmptyAltNonDecorative, path, img.element_index,
                                    where + " has empty alt but is not marked decorative"));
      }
    }
    if (!img.external && (img.src.empty() || !archive.find(img.src))) {
      issues.push_back(make_issue(IssueCode::DanglingImageResource, path, img.element_index,
                                  where + " does not resolve to an archive entry"));
    }
  }
}

}  // namespace

AuditReport audit(const ocf::EpubArchive& archive, const opf::PackageDocument& pkg) {
  std::vector<Issue> issues;
  check_package(pkg, issues);
  std::size_t scanned = 0;
  for (const opf::ManifestItem& item : pkg.manifest) {
    if (!opf::is_content_document(item)) continue;
    const ocf::ArchiveEntry* entry = archive.find(item.href);
    if (!entry) continue;
    ++scanned;
    check_document(archive, item.href, *entry, issues);
  }
  return make_report(std::move(issues), scanned);
}

}  // namespace altgen::audit
