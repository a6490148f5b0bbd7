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

#include <doctest.h>

#include "altgen/a11y_audit.hpp"
#include "altgen/content_docs.hpp"
#include "altgen/reconstruct.hpp"
#include "support.hpp"

using namespace altgen;
using namespace testsupport;

namespace {

struct Loaded {
  ocf::EpubArchive archive;
  opf::PackageDocument pkg;
};

Loaded load(std::string_view name) {
  Loaded l{ocf::open_epub(read_file(fixture(name))), {}};
  l.pkg = opf::load_package(l.archive);
  return l;
}

std::size_t count(const audit::AuditReport& r, audit::IssueCode code) {
  std::size_t n = 0;
  for (const auto& i : r.issues) n += i.code == code;
  return n;
}

bool python_well_formed(const std::string& data) {
  TempDir dir;
  write_file(dir / "doc.xhtml", data);
  return run("python3 -c \"import sys,xml.dom.minidom as m; m.parse(sys.argv[1])\" " + (dir / "doc.xhtml").string() +
             " 2>/dev/null") == 0;
}

}  // namespace

TEST_SUITE("reconstruct") {
  TEST_CASE("clean fixture has no findings") {
    const Loaded l = load("sample_book.epub");
    CHECK(reconstruct::integrity_check(l.archive, l.pkg).empty());
  }

  TEST_CASE("deleted image entry") {
    Loaded l = load("sample_book.epub");
    std::string image;
    for (const auto& m : l.pkg.manifest) {
      if (m.media_type.starts_with("image/")) image = m.href;
    }
    REQUIRE_FALSE(image.empty());
    std::erase_if(l.archive.entries, [&](const ocf::ArchiveEntry& e) { return e.path == image; });
    const auto findings = reconstruct::integrity_check(l.archive, l.pkg);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0] == reconstruct::IntegrityFinding{reconstruct::FindingCode::ManifestDanglingHref,
                                                       reconstruct::FindingSeverity::Error, image});
  }

  TEST_CASE("unmanifested content is a warning") {
    Loaded l = load("sample_book.epub");
    l.archive.entries.push_back(entry("OEBPS/stray.xhtml", xhtml("")));
    const auto findings = reconstruct::integrity_check(l.archive, l.pkg);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].code == reconstruct::FindingCode::UnmanifestedContent);
    CHECK(findings[0].severity == reconstruct::FindingSeverity::Warning);
    CHECK_FALSE(reconstruct::has_errors(findings));
  }

  TEST_CASE("corrupted modified document") {
    Loaded l = load("defects/d01-harbour.epub");
    const std::string path = l.pkg.spine_paths().front();
    std::string data = l.archive.find(path)->data;
    data[data.find("</body>") + 2] = '#';
    CHECK_FALSE(python_well_formed(data));
    l.archive.replace_data(path, data);
    const auto findings = reconstruct::integrity_check(l.archive, l.pkg);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].code == reconstruct::FindingCode::MalformedModifiedDoc);
    CHECK(findings[0].path == path);
  }

  TEST_CASE("mimetype violation") {
    Loaded l = load("minimal.epub");
    l.archive.entries[0].data = "text/plain";
    const auto findings = reconstruct::integrity_check(l.archive, l.pkg);
    REQUIRE_FALSE(findings.empty());
    CHECK(findings[0].code == reconstruct::FindingCode::MimetypeViolation);
  }

  TEST_CASE("rebuild without changes keeps content") {
    const Loaded l = load("sample_book.epub");
    const ocf::EpubArchive out = ocf::open_epub(reconstruct::rebuild(l.archive, l.pkg, {}));
    REQUIRE(out.entries.size() == l.archive.entries.size());
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
      CHECK(out.entries[i].path == l.archive.entries[i].path);
      CHECK(out.entries[i].data == l.archive.entries[i].data);
    }
  }

  TEST_CASE("one alt fix removes exactly one error") {
    const Loaded l = load("defects/d01-harbour.epub");
    const audit::AuditReport before = audit::audit(l.archive, l.pkg);
    const std::string path = l.pkg.spine_paths().front();
    const ocf::ArchiveEntry* doc = l.archive.find(path);
    const auto images = content::find_images(*doc, path);
    const ocf::ArchiveEntry fixed = content::set_alt_text(*doc, images[0], "Fishing boats at anchor");
    CHECK(python_well_formed(fixed.data));
    const ocf::EpubArchive out = ocf::open_epub(reconstruct::rebuild(l.archive, l.pkg, {fixed}));
    const audit::AuditReport after = audit::audit(out, opf::load_package(out));
    CHECK(count(after, audit::IssueCode::ImgMissingAlt) == count(before, audit::IssueCode::ImgMissingAlt) - 1);
    CHECK(after.error_count == before.error_count - 1);
  }

  TEST_CASE("dangling spine reference is refused") {
    Loaded l = load("defects/d01-harbour.epub");
    l.pkg.spine.push_back({"ghost", {}});
    try {
      reconstruct::rebuild(l.archive, l.pkg, {});
      FAIL("expected IntegrityErrors");
    } catch (const reconstruct::ReconstructError& e) {
      CHECK(e.code() == reconstruct::ReconstructErrc::IntegrityErrors);
    }
  }

  TEST_CASE("malformed replacement is refused") {
    const Loaded l = load("defects/d01-harbour.epub");
    ocf::ArchiveEntry broken = *l.archive.find(l.pkg.spine_paths().front());
    broken.data += "<unclosed>";
    broken.modified = true;
    CHECK_THROWS_AS(reconstruct::rebuild(l.archive, l.pkg, {broken}), reconstruct::ReconstructError);
  }

  TEST_CASE("write_atomically") {
    TempDir dir;
    const fs::path target = dir / "out.epub";
    write_file(target, "old");
    reconstruct::write_atomically(target, "new contents");
    CHECK(read_file(target) == "new contents");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++files;
    CHECK(files == 1);
    CHECK_THROWS_AS(reconstruct::write_atomically(dir / "missing/dir/x.epub", "x"), reconstruct::ReconstructError);
  }
}
