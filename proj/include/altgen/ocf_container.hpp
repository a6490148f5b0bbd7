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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/error.hpp"

// EPUB Open Container Format: a ZIP archive whose first entry is an
// uncompressed `mimetype` file, plus META-INF/container.xml pointing at the
// package document. Only the Stored and Deflate methods are supported and
// ZIP64 archives are rejected.
namespace altgen::ocf {

inline constexpr std::string_view kMimetypePath = "mimetype";
inline constexpr std::string_view kMimetypeContent = "application/epub+zip";
inline constexpr std::string_view kContainerPath = "META-INF/container.xml";

enum class OcfErrc {
  NotZip,
  NotSupported,
  CorruptArchive,
  MissingMimetype,
  WrongMimetype,
  MissingContainerXml,
  MalformedContainerXml,
  InvalidEntryPath,
  DuplicateEntry,
  InvariantViolation,
};
std::string_view to_string(OcfErrc code);
using OcfError = CodedError<OcfErrc>;

enum class Compression { Stored, Deflated };

struct ArchiveEntry {
  std::string path;
  std::string data;  // decompressed bytes
  Compression compression = Compression::Deflated;
  bool modified = false;
  // MS-DOS timestamp carried over from the source archive so rewrites stay
  // deterministic. 0x0021 is 1980-01-01.
  std::uint16_t dos_time = 0;
  std::uint16_t dos_date = 0x0021;

  bool is_directory() const { return !path.empty() && path.back() == '/'; }
  bool operator==(const ArchiveEntry&) const = default;
};

struct EpubArchive {
  std::vector<ArchiveEntry> entries;
  std::string rootfile_path;

  const ArchiveEntry* find(std::string_view path) const;
  ArchiveEntry* find(std::string_view path);
  // Replaces the entry with the same path, keeping its position, and marks
  // it modified.
  void replace_data(std::string_view path, std::string data);
};

EpubArchive open_epub(std::string_view bytes);
std::string write_epub(const EpubArchive& archive);

// First OCF invariant the archive breaks, if any.
std::optional<std::string> invariant_violation(const EpubArchive& archive);

// `full-path` of the first rootfile in a container.xml document.
std::string rootfile_from_container(std::string_view container_xml);

}  // namespace altgen::ocf
