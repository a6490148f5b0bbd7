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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/error.hpp"
#include "altgen/ocf_container.hpp"
#include "altgen/package_doc.hpp"

// Structural integrity check and final assembly of a repaired EPUB.
namespace altgen::reconstruct {

enum class FindingCode {
  ManifestDanglingHref,
  SpineDanglingIdref,
  UnmanifestedContent,  // the only Warning
  MimetypeViolation,
  MalformedModifiedDoc,
};
std::string_view to_string(FindingCode code);

enum class FindingSeverity { Error, Warning };
std::string_view to_string(FindingSeverity severity);

struct IntegrityFinding {
  FindingCode code;
  FindingSeverity severity;
  std::string path;
  bool operator==(const IntegrityFinding&) const = default;
};

enum class ReconstructErrc { IntegrityErrors, AuditRegression, WriteFailed };
std::string_view to_string(ReconstructErrc code);
using ReconstructError = CodedError<ReconstructErrc>;

std::vector<IntegrityFinding> integrity_check(const ocf::EpubArchive& archive, const opf::PackageDocument& pkg);

bool has_errors(const std::vector<IntegrityFinding>& findings);

// Replaces the package document (only when the model changed) and every
// modified document, checks integrity and writes the archive. The result
// never carries more audit Errors than the input.
std::string rebuild(const ocf::EpubArchive& archive, const opf::PackageDocument& pkg,
                    const std::vector<ocf::ArchiveEntry>& modified_docs);

// Writes through a temporary file in the same directory, then renames.
void write_atomically(const std::filesystem::path& target, std::string_view bytes);

}  // namespace altgen::reconstruct
