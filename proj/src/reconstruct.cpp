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

#include "altgen/reconstruct.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <system_error>

#include "altgen/a11y_audit.hpp"
#include "altgen/content_docs.hpp"
#include "altgen/paths.hpp"

namespace altgen::reconstruct {

std::string_view to_string(FindingCode code) {
  switch (code) {
    case FindingCode::ManifestDanglingHref:
      return "ManifestDanglingHref";
    case FindingCode::SpineDanglingIdref:
      return "SpineDanglingIdref";
    case FindingCode::UnmanifestedContent:
      return "UnmanifestedContent";
    case FindingCode::MimetypeViolation:
      return "MimetypeViolation";
    case FindingCode::MalformedModifiedDoc:
      return "MalformedModifiedDoc";
  }
  return "Unknown";
}

std::string_view to_string(FindingSeverity severity) {
  return severity == FindingSeverity::Error ? "Error" : "Warning";
}

std::string_view to_string(ReconstructErrc code) {
  switch (code) {
    case ReconstructErrc::IntegrityErrors:
      return "IntegrityErrors";
    case ReconstructErrc::AuditRegression:
      return "AuditRegression";
    case ReconstructErrc::WriteFailed:
      return "WriteFailed";
  }
  return "ReconstructError";
}

namespace {

bool is_content_path(std::string_view path) {
  static const std::set<std::string, std::less<>> extensions = {"xhtml", "html", "htm", "jpg", "jpeg",
                                                                "png",   "gif",  "svg", "webp"};
  return extensions.count(paths::extension(path)) > 0;
}

IntegrityFinding error(FindingCode code, std::string path) {
  return {code, FindingSeverity::Error, std::move(path)};
}

}  // namespace

std::vector<IntegrityFinding> integrity_check(const ocf::EpubArchive& archive, const opf::PackageDocument& pkg) {
  std::vector<IntegrityFinding> findings;
  if (auto violation = ocf::invariant_violation(archive)) {
    findings.push_back(error(FindingCode::MimetypeViolation, std::string(ocf::kMimetypePath)));
  }
  std::set<std::string, std::less<>> ids;
  std::set<std::string, std::less<>> manifested;
  for (const opf::ManifestItem& item : pkg.manifest) {
    ids.insert(item.id);
    if (paths::is_external(item.href)) continue;
    manifested.insert(item.href);
    if (!archive.find(item.href)) findings.push_back(error(FindingCode::ManifestDanglingHref, item.href));
  }
  for (const opf::SpineItem& s : pkg.spine) {
    if (!ids.count(s.idref)) findings.push_back(error(FindingCode::SpineDanglingIdref, s.idref));
  }
  for (const ocf::ArchiveEntry& entry : archive.entries) {
    if (entry.is_directory() || entry.path.rfind("META-INF/", 0) == 0) continue;
    if (is_content_path(entry.path) && !manifested.count(entry.path)) {
      findings.push_back({FindingCode::UnmanifestedContent, FindingSeverity::Warning, entry.path});
    }
    const std::string ext = paths::extension(entry.path);
    if (entry.modified && (ext == "xhtml" || ext == "html" || ext == "htm") &&
        !content::is_well_formed(entry.data)) {
      findings.push_back(error(FindingCode::MalformedModifiedDoc, entry.path));
    }
  }
  return findings;
}

bool has_errors(const std::vector<IntegrityFinding>& findings) {
  for (const IntegrityFinding& f : findings) {
    if (f.severity == FindingSeverity::Error) return true;
  }
  return false;
}

std::string rebuild(const ocf::EpubArchive& archive, const opf::PackageDocument& pkg,
                    const std::vector<ocf::ArchiveEntry>& modified_docs) {
  ocf::EpubArchive out = archive;
  const ocf::ArchiveEntry* opf_entry = archive.find(archive.rootfile_path);
  if (!opf_entry) {
    throw ReconstructError(ReconstructErrc::IntegrityErrors, "no package document at " + archive.rootfile_path);
  }
  const opf::PackageDocument original = opf::parse_opf(*opf_entry, pkg.base_dir);
  for (const ocf::ArchiveEntry& doc : modified_docs) {
    if (!out.find(doc.path)) {
      throw ReconstructError(ReconstructErrc::IntegrityErrors, "modified document " + doc.path + " is not in the archive");
    }
    out.replace_data(doc.path, doc.data);
  }

  std::vector<IntegrityFinding> findings = integrity_check(out, pkg);
  if (has_errors(findings)) {
    std::string detail;
    for (const IntegrityFinding& f : findings) {
      if (f.severity != FindingSeverity::Error) continue;
      if (!detail.empty()) detail += ", ";
      detail += std::string(to_string(f.code)) + " " + f.path;
    }
    throw ReconstructError(ReconstructErrc::IntegrityErrors, detail);
  }
  // Untouched packages keep their original bytes.
  if (!(pkg == original)) out.replace_data(archive.rootfile_path, opf::serialize_opf(pkg));

  std::string bytes = ocf::write_epub(out);
  const ocf::EpubArchive reopened = ocf::open_epub(bytes);
  const std::size_t before = audit::audit(archive, original).error_count;
  const std::size_t after = audit::audit(reopened, opf::load_package(reopened)).error_count;
  if (after > before) {
    throw ReconstructError(ReconstructErrc::AuditRegression,
                           std::to_string(before) + " errors before, " + std::to_string(after) + " after");
  }
  return bytes;
}

void write_atomically(const std::filesystem::path& target, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = target;
  tmp += ".tmp" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ReconstructError(ReconstructErrc::WriteFailed, "cannot open " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw ReconstructError(ReconstructErrc::WriteFailed, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw ReconstructError(ReconstructErrc::WriteFailed, target.string() + ": " + ec.message());
  }
}

}  // namespace altgen::reconstruct
