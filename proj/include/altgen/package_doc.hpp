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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "altgen/error.hpp"
#include "altgen/ocf_container.hpp"

// OPF package document model: Dublin Core and accessibility metadata, the
// manifest and the spine. Anything the model does not interpret (unknown
// metadata, extra attributes, <guide>, <collection>) is carried along so a
// parse/serialize cycle does not drop publisher data.
namespace altgen::opf {

inline constexpr std::string_view kOpfNamespace = "http://www.idpf.org/2007/opf";
inline constexpr std::string_view kDcNamespace = "http://purl.org/dc/elements/1.1/";

inline constexpr std::array<std::string_view, 5> kAccessibilityProperties = {
    "accessMode", "accessModeSufficient", "accessibilityFeature", "accessibilityHazard",
    "accessibilitySummary"};

enum class PackageErrc { MalformedXml, DanglingSpineRef, DuplicateManifestId, InvariantViolation };
std::string_view to_string(PackageErrc code);
using PackageError = CodedError<PackageErrc>;

// Attribute with a normalized qualified name: unprefixed, `opf:`, `xml:` or
// the prefix recorded in PackageDocument::extra_namespaces.
struct Attr {
  std::string name;
  std::string value;
  bool operator==(const Attr&) const = default;
};

enum class MetaKind {
  DcTitle,
  DcLanguage,
  DcCreator,
  DcDate,
  DcIdentifier,
  SchemaAccessibility,
  Other,
};

struct MetaEntry {
  MetaKind kind = MetaKind::Other;
  // SchemaAccessibility: the schema.org property (e.g. "accessMode").
  // Other: normalized element name ("meta", "link", "dc:publisher", ...).
  std::string name;
  std::string value;
  std::vector<Attr> attributes;

  bool operator==(const MetaEntry&) const = default;
};

struct ManifestItem {
  std::string id;
  std::string href;  // container-relative path (external URLs kept verbatim)
  std::string media_type;
  std::vector<std::string> properties;
  std::vector<Attr> attributes;
  std::string raw_href;  // href as written; reused on output when still valid

  bool operator==(const ManifestItem& o) const {
    return id == o.id && href == o.href && media_type == o.media_type &&
           properties == o.properties && attributes == o.attributes;
  }
};

struct SpineItem {
  std::string idref;
  std::vector<Attr> attributes;
  bool operator==(const SpineItem&) const = default;
};

struct PackageDocument {
  std::string version;
  std::vector<Attr> package_attributes;
  std::vector<std::pair<std::string, std::string>> extra_namespaces;  // prefix -> URI
  std::vector<MetaEntry> metadata;
  std::vector<ManifestItem> manifest;
  std::vector<Attr> spine_attributes;
  std::vector<SpineItem> spine;
  std::vector<std::string> passthrough;  // raw XML of other package children
  std::string base_dir;                  // directory of the OPF inside the container

  bool operator==(const PackageDocument&) const = default;

  const ManifestItem* item_by_id(std::string_view id) const;
  const ManifestItem* item_by_href(std::string_view href) const;
  std::optional<std::string> first_value(MetaKind kind) const;
  std::vector<std::string> values(MetaKind kind) const;
  bool has_accessibility(std::string_view property, std::string_view value = {}) const;
  // Container paths of the spine documents, in reading order.
  std::vector<std::string> spine_paths() const;
};

bool is_content_document(const ManifestItem& item);

PackageDocument parse_opf(std::string_view data, std::string_view base_dir);
PackageDocument parse_opf(const ocf::ArchiveEntry& entry, std::string_view base_dir);

// Convenience: the package document referenced by the archive's rootfile.
PackageDocument load_package(const ocf::EpubArchive& archive);

std::string serialize_opf(const PackageDocument& doc);

std::optional<std::string> invariant_violation(const PackageDocument& doc);

}  // namespace altgen::opf
