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

#include <sstream>

#include "altgen/ocf_container.hpp"
#include "properties.hpp"
#include "support.hpp"
#include "zip_probe.hpp"

using namespace altgen;
using namespace testsupport;

namespace {

ocf::OcfErrc open_error(std::string_view bytes) {
  try {
    ocf::open_epub(bytes);
  } catch (const ocf::OcfError& e) {
    return e.code();
  }
  FAIL("expected an OcfError");
  return ocf::OcfErrc::NotZip;
}

}  // namespace

TEST_SUITE("ocf") {
  TEST_CASE("minimal container") {
    const ocf::EpubArchive a = ocf::open_epub(read_file(fixture("minimal.epub")));
    CHECK(a.rootfile_path == "content.opf");
    REQUIRE(a.entries.size() == 3);
    CHECK(a.entries[0].path == "mimetype");
    CHECK(a.entries[0].compression == ocf::Compression::Stored);
  }

  TEST_CASE("deflated mimetype is rejected") {
    CHECK(open_error(read_file(fixture("minimal_deflated_mimetype.epub"))) == ocf::OcfErrc::WrongMimetype);
  }

  TEST_CASE("entry listing matches python zipfile") {
    const ocf::EpubArchive a = ocf::open_epub(read_file(fixture("sample_book.epub")));
    std::istringstream listing(read_file(fixture("sample_book.listing")));
    std::vector<std::string> expected;
    for (std::string line; std::getline(listing, line);) expected.push_back(line);
    std::vector<std::string> actual;
    for (const auto& e : a.entries) actual.push_back(e.path);
    CHECK(expected.size() == 49);
    CHECK(actual == expected);
  }

  TEST_CASE("identity round trip keeps decompressed content") {
    const std::string original = read_file(fixture("sample_book.epub"));
    const ocf::EpubArchive a = ocf::open_epub(original);
    const ocf::EpubArchive b = ocf::open_epub(ocf::write_epub(a));
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      CHECK(a.entries[i].path == b.entries[i].path);
      CHECK(a.entries[i].data == b.entries[i].data);
    }
    CHECK_FALSE(ocf_violation(ocf::write_epub(a)).has_value());
  }

  TEST_CASE("modifying one entry changes only that entry") {
    ocf::EpubArchive a = ocf::open_epub(read_file(fixture("sample_book.epub")));
    const ocf::EpubArchive before = a;
    std::string target;
    for (const auto& e : a.entries) {
      if (e.path.ends_with(".xhtml")) {
        target = e.path;
        break;
      }
    }
    REQUIRE_FALSE(target.empty());
    a.replace_data(target, a.find(target)->data + "<!-- edited -->");
    CHECK(a.find(target)->modified);
    const ocf::EpubArchive b = ocf::open_epub(ocf::write_epub(a));
    std::size_t differing = 0;
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
      if (b.entries[i].data != before.entries[i].data) {
        ++differing;
        CHECK(b.entries[i].path == target);
      }
    }
    CHECK(differing == 1);
  }

  TEST_CASE("invariants enforced on write") {
    ocf::EpubArchive a = make_archive(opf_xml(kFullMetadata, {}, {}), {});
    std::swap(a.entries[0], a.entries[1]);
    CHECK_THROWS_AS(ocf::write_epub(a), ocf::OcfError);
    std::swap(a.entries[0], a.entries[1]);
    a.entries[0].compression = ocf::Compression::Deflated;
    CHECK(ocf::invariant_violation(a).has_value());
    a.entries[0].compression = ocf::Compression::Stored;
    a.entries.push_back(entry("OEBPS/content.opf", "dup"));
    CHECK(ocf::invariant_violation(a) == "duplicate entry OEBPS/content.opf");
  }

  TEST_CASE("damaged archives") {
    CHECK(open_error("hello world, not a zip") == ocf::OcfErrc::NotZip);
    std::string bytes = ocf::write_epub(make_archive(opf_xml(kFullMetadata, {}, {}), {{"OEBPS/a.txt", "payload"}}));
    // flip a byte of the stored mimetype payload: CRC no longer matches
    std::string corrupt = bytes;
    corrupt[40] = 'X';
    CHECK(open_error(corrupt) == ocf::OcfErrc::CorruptArchive);
    CHECK(open_error(bytes.substr(0, bytes.size() / 2)) != ocf::OcfErrc::WrongMimetype);
  }

  TEST_CASE("missing container.xml") {
    ocf::EpubArchive a;
    a.entries.push_back(entry("mimetype", "application/epub+zip", ocf::Compression::Stored));
    a.entries.push_back(entry("META-INF/container.xml", container_xml("x.opf")));
    std::string bytes = ocf::write_epub(a);
    // rename the entry in both headers
    for (std::size_t at = bytes.find("META-INF/container.xml"); at != std::string::npos;
         at = bytes.find("META-INF/container.xml", at + 1)) {
      bytes[at + 9] = 'k';
    }
    CHECK(open_error(bytes) == ocf::OcfErrc::MissingContainerXml);
  }

  TEST_CASE("rootfile from container.xml") {
    CHECK(ocf::rootfile_from_container(container_xml("OPS/book.opf")) == "OPS/book.opf");
    CHECK_THROWS_AS(ocf::rootfile_from_container("<container/>"), ocf::OcfError);
  }

  TEST_CASE("writer output is read by an independent header walker") {
    const std::string bytes = ocf::write_epub(ocf::open_epub(read_file(fixture("sample_book.epub"))));
    const Probe p = probe_zip(bytes);
    REQUIRE_FALSE(p.error.has_value());
    CHECK(p.entries.size() == 49);
    for (const auto& e : p.entries) CHECK(e.crc_ok);
  }

  TEST_CASE("header walker flags a deflated mimetype") {
    CHECK(ocf_violation(read_file(fixture("minimal_deflated_mimetype.epub"))) == "mimetype compressed");
    CHECK_FALSE(ocf_violation(read_file(fixture("minimal.epub"))).has_value());
  }

  TEST_CASE("python zipfile accepts writer output") {
    if (!have_python()) return;
    TempDir dir;
    write_file(dir / "out.epub", ocf::write_epub(ocf::open_epub(read_file(fixture("sample_book.epub")))));
    const std::string cmd = "python3 -c \"import sys,zipfile; z=zipfile.ZipFile(sys.argv[1]); "
                            "assert z.testzip() is None; i=z.infolist()[0]; "
                            "assert i.filename=='mimetype' and i.compress_type==0 and not i.extra\" " +
                            (dir / "out.epub").string();
    CHECK(run(cmd) == 0);
  }

  TEST_CASE("random archives round trip") {
    const PropertyOutcome r = prop_ocf_round_trip(300, 0xA17);
    INFO(r.counterexample.value_or(""));
    CHECK_FALSE(r.counterexample.has_value());
  }
}
