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

#include "altgen/error.hpp"
#include "altgen/ocf_container.hpp"
#include "altgen/package_doc.hpp"

// Image discovery, context extraction and alt attribute rewriting for XHTML
// content documents.
namespace altgen::content {

inline constexpr std::size_t kContextWindow = 500;

enum class ContentErrc { UnparseableDocument, StaleOccurrence, InvalidAlt };
std::string_view to_string(ContentErrc code);
using ContentError = CodedError<ContentErrc>;

struct ImageOccurrence {
  std::string doc_path;
  std::size_t element_index = 0;  // among img and SVG image elements, document order
  std::string src;       // container path, or the raw URL for external images
  std::string raw_src;   // attribute value as found
  std::optional<std::string> existing_alt;
  bool decorative = false;  // role="presentation" or role="none"
  bool svg = false;         // SVG <image>; its text alternative lives in aria-label
  bool external = false;

  bool operator==(const ImageOccurrence&) const = default;
};

struct ContextBundle {
  std::optional<std::string> figcaption;
  std::string preceding_text;
  std::string following_text;
  std::optional<std::string> nearest_heading;
  std::optional<std::string> doc_title;

  bool operator==(const ContextBundle&) const = default;
};

std::vector<ImageOccurrence> find_images(std::string_view source, std::string_view doc_path);
std::vector<ImageOccurrence> find_images(const ocf::ArchiveEntry& doc, std::string_view doc_path);

ContextBundle extract_context(const ocf::ArchiveEntry& doc, const ImageOccurrence& occurrence,
                              const opf::PackageDocument& pkg);

// Sets the text alternative of exactly the addressed element. Only the bytes
// of that attribute change; the returned entry is marked modified.
ocf::ArchiveEntry set_alt_text(const ocf::ArchiveEntry& doc, const ImageOccurrence& occurrence,
                               std::string_view alt);

// Whitespace-normalized text outside <head>, <script> and <style>.
std::string visible_text(std::string_view source);

bool is_well_formed(std::string_view source);

}  // namespace altgen::content
