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

#include "altgen/enrichment.hpp"

#include <algorithm>

#include "altgen/bcp47.hpp"
#include "altgen/content_docs.hpp"
#include "altgen/text.hpp"

namespace altgen::enrich {

std::string_view to_string(FixReason reason) {
  switch (reason) {
    case FixReason::Detected:
      return "Detected";
    case FixReason::Default:
      return "Default";
    case FixReason::Skipped:
      return "Skipped";
  }
  return "Unknown";
}

std::string_view to_string(FixLevel level) { return level == FixLevel::Warning ? "Warning" : "Info"; }

std::string language_sample(const opf::PackageDocument& pkg, const ocf::EpubArchive& archive,
                            const EnrichOptions& options) {
  std::string joined;
  std::size_t used = 0;
  for (const std::string& path : pkg.spine_paths()) {
    if (used == options.sample_documents) break;
    const ocf::ArchiveEntry* entry = archive.find(path);
    if (!entry) continue;
    ++used;
    const std::string visible = content::visible_text(entry->data);
    if (visible.empty()) continue;
    if (!joined.empty()) joined += ' ';
    joined += visible;
    if (text::codepoint_count(joined) >= options.sample_chars) break;
  }
  std::u32string cps = text::decode_utf8(joined);
  if (cps.size() > options.sample_chars) cps.resize(options.sample_chars);
  return text::encode_utf8(cps);
}

namespace {

// Position just after the last Dublin Core entry, so new dc: elements stay
// grouped with the existing ones.
std::ptrdiff_t after_last_dc(const opf::PackageDocument& pkg) {
  std::ptrdiff_t pos = 0;
  for (std::size_t i = 0; i < pkg.metadata.size(); ++i) {
    const opf::MetaKind kind = pkg.metadata[i].kind;
    if (kind != opf::MetaKind::Other && kind != opf::MetaKind::SchemaAccessibility) {
      pos = static_cast<std::ptrdiff_t>(i + 1);
    }
  }
  return pos;
}

void fix_language(opf::PackageDocument& pkg, const ocf::EpubArchive& archive, const LanguageDetector& detector,
                  const EnrichOptions& options, std::vector<AppliedFix>& fixes) {
  const auto is_language = [](const opf::MetaEntry& m) { return m.kind == opf::MetaKind::DcLanguage; };
  std::vector<std::size_t> invalid;
  bool any = false;
  for (std::size_t i = 0; i < pkg.metadata.size(); ++i) {
    if (!is_language(pkg.metadata[i])) continue;
    any = true;
    if (!bcp47::is_well_formed(pkg.metadata[i].value)) invalid.push_back(i);
  }
  if (any && invalid.empty()) return;

  std::optional<std::string> detected;
  try {
    detected = detector(language_sample(pkg, archive, options)).lang;
  } catch (const lang::LangError&) {
  }

  if (!any) {
    if (!detected) {
      fixes.push_back({"dc:language", std::nullopt, std::nullopt, FixReason::Skipped, FixLevel::Warning});
      return;
    }
    pkg.metadata.insert(pkg.metadata.begin() + after_last_dc(pkg),
                        opf::MetaEntry{opf::MetaKind::DcLanguage, {}, *detected, {}});
    fixes.push_back({"dc:language", std::nullopt, *detected, FixReason::Detected, FixLevel::Info});
    return;
  }

  // Malformed tags: the first one takes the detected value, the rest go.
  if (!detected) {
    for (std::size_t i : invalid) {
      fixes.push_back({"dc:language", pkg.metadata[i].value, std::nullopt, FixReason::Skipped, FixLevel::Warning});
    }
    return;
  }
  fixes.push_back({"dc:language", pkg.metadata[invalid.front()].value, *detected, FixReason::Detected, FixLevel::Info});
  pkg.metadata[invalid.front()].value = *detected;
  for (auto it = invalid.rbegin(); it + 1 != invalid.rend(); ++it) {
    fixes.push_back({"dc:language", pkg.metadata[*it].value, std::nullopt, FixReason::Detected, FixLevel::Info});
    pkg.metadata.erase(pkg.metadata.begin() + static_cast<std::ptrdiff_t>(*it));
  }
}

void fix_accessibility(opf::PackageDocument& pkg, const EnrichOptions& options, std::vector<AppliedFix>& fixes) {
  if (pkg.has_accessibility("accessMode")) return;
  std::vector<std::pair<std::string, std::string>> added = {{"accessMode", "textual"}, {"accessMode", "visual"}};
  if (options.alt_text_repair && !pkg.has_accessibility("accessibilityFeature", "altText")) {
    added.emplace_back("accessibilityFeature", "altText");
  }
  for (auto& [property, value] : added) {
    fixes.push_back({"schema:" + property, std::nullopt, value, FixReason::Default, FixLevel::Info});
    pkg.metadata.push_back(opf::MetaEntry{opf::MetaKind::SchemaAccessibility, std::move(property),
                                          std::move(value), {}});
  }
}

void fix_title(opf::PackageDocument& pkg, const EnrichOptions& options, std::vector<AppliedFix>& fixes) {
  if (pkg.first_value(opf::MetaKind::DcTitle)) return;
  const std::string title = options.fallback_title.empty() ? "Untitled" : options.fallback_title;
  const auto first_dc = std::find_if(pkg.metadata.begin(), pkg.metadata.end(), [](const opf::MetaEntry& m) {
    return m.kind != opf::MetaKind::Other && m.kind != opf::MetaKind::SchemaAccessibility;
  });
  pkg.metadata.insert(first_dc, opf::MetaEntry{opf::MetaKind::DcTitle, {}, title, {}});
  fixes.push_back({"dc:title", std::nullopt, title, FixReason::Default, FixLevel::Warning});
}

}  // namespace

std::pair<opf::PackageDocument, std::vector<AppliedFix>> enrich_metadata(opf::PackageDocument pkg,
                                                                         const ocf::EpubArchive& archive,
                                                                         const LanguageDetector& detector,
                                                                         const EnrichOptions& options) {
  std::vector<AppliedFix> fixes;
  fix_language(pkg, archive, detector, options, fixes);
  fix_accessibility(pkg, options, fixes);
  fix_title(pkg, options, fixes);
  return {std::move(pkg), std::move(fixes)};
}

}  // namespace altgen::enrich
