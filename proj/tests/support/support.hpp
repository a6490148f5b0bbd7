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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "altgen/ocf_container.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path fixture(std::string_view rel) { return fs::path(ALTGEN_FIXTURE_DIR) / rel; }

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& p, std::string_view data) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = fs::temp_directory_path() / ("altgen-test-" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(std::string_view rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline altgen::ocf::ArchiveEntry entry(std::string path, std::string data,
                                       altgen::ocf::Compression c = altgen::ocf::Compression::Deflated) {
  altgen::ocf::ArchiveEntry e;
  e.path = std::move(path);
  e.data = std::move(data);
  e.compression = c;
  return e;
}

inline std::string container_xml(std::string_view rootfile) {
  return std::string(
             "<?xml version=\"1.0\"?>\n<container version=\"1.0\" "
             "xmlns=\"urn:oasis:names:tc:opendocument:xmlns:container\"><rootfiles><rootfile full-path=\"") +
         std::string(rootfile) + "\" media-type=\"application/oebps-package+xml\"/></rootfiles></container>\n";
}

inline std::string xhtml(std::string_view body, std::string_view title = "Chapter") {
  return std::string(
             "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<html xmlns=\"http://www.w3.org/1999/xhtml\">\n"
             "<head><title>") +
         std::string(title) + "</title></head>\n<body>\n" + std::string(body) + "\n</body>\n</html>\n";
}

// Package document with the given metadata lines, manifest items and spine
// idrefs.
inline std::string opf_xml(std::string_view metadata, const std::vector<std::string>& items,
                       const std::vector<std::string>& spine, std::string_view version = "3.0") {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<package xmlns=\"http://www.idpf.org/2007/opf\" "
                    "version=\"" +
                    std::string(version) +
                    "\">\n<metadata xmlns:dc=\"http://purl.org/dc/elements/1.1/\">\n" + std::string(metadata) +
                    "\n</metadata>\n<manifest>\n";
  for (const std::string& i : items) out += i + "\n";
  out += "</manifest>\n<spine>\n";
  for (const std::string& s : spine) out += "<itemref idref=\"" + s + "\"/>\n";
  out += "</spine>\n</package>\n";
  return out;
}

// Archive with mimetype, container.xml pointing at OEBPS/content.opf, and
// the given files (paths relative to the archive root).
inline altgen::ocf::EpubArchive make_archive(std::string opf_data,
                                             const std::vector<std::pair<std::string, std::string>>& files) {
  altgen::ocf::EpubArchive a;
  a.entries.push_back(entry("mimetype", "application/epub+zip", altgen::ocf::Compression::Stored));
  a.entries.push_back(entry("META-INF/container.xml", container_xml("OEBPS/content.opf")));
  a.entries.push_back(entry("OEBPS/content.opf", std::move(opf_data)));
  for (const auto& [path, data] : files) a.entries.push_back(entry(path, data));
  a.rootfile_path = "OEBPS/content.opf";
  return a;
}

inline std::string item(std::string_view id, std::string_view href, std::string_view media_type) {
  return "<item id=\"" + std::string(id) + "\" href=\"" + std::string(href) + "\" media-type=\"" +
         std::string(media_type) + "\"/>";
}

inline constexpr std::string_view kFullMetadata =
    "<dc:title>T</dc:title><dc:language>en</dc:language>"
    "<meta property=\"schema:accessMode\">textual</meta>";

// Exit status of a shell command.
inline int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline bool have_python() { return run("python3 -c 'import zipfile' >/dev/null 2>&1") == 0; }

}  // namespace testsupport
