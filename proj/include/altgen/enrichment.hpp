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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "altgen/lang_detect.hpp"
#include "altgen/ocf_container.hpp"
#include "altgen/package_doc.hpp"

// Metadata fixes applied to a package document before reconstruction.
namespace altgen::enrich {

enum class FixReason { Detected, Default, Skipped };
std::string_view to_string(FixReason reason);

enum class FixLevel { Info, Warning };
std::string_view to_string(FixLevel level);

struct AppliedFix {
  std::string field;  // "dc:language", "dc:title", "schema:accessMode", ...
  std::optional<std::string> old_value;
  std::optional<std::string> new_value;  // none for Skipped
  FixReason reason = FixReason::Default;
  FixLevel level = FixLevel::Info;
  bool operator==(const AppliedFix&) const = default;
};

// Throws lang::LangError when no language can be determined.
using LanguageDetector = std::function<lang::Detection(std::string_view)>;

struct EnrichOptions {
  // Adds accessibilityFeature=altText; set when the alt repair stage runs.
  bool alt_text_repair = true;
  // Title used when dc:title is missing, normally the EPUB filename stem.
  std::string fallback_title;
  std::size_t sample_documents = 5;
  std::size_t sample_chars = 10000;
};

// Visible text of the first spine documents, capped at sample_chars code
// points.
std::string language_sample(const opf::PackageDocument& pkg, const ocf::EpubArchive& archive,
                            const EnrichOptions& options = {});

std::pair<opf::PackageDocument, std::vector<AppliedFix>> enrich_metadata(opf::PackageDocument pkg,
                                                                         const ocf::EpubArchive& archive,
                                                                         const LanguageDetector& detector,
                                                                         const EnrichOptions& options = {});

}  // namespace altgen::enrich
