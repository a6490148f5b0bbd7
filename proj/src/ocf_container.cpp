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

#include "altgen/ocf_container.hpp"

#include <zlib.h>

#include <limits>
#include <unordered_set>

#include "altgen/paths.hpp"
#include "altgen/xml.hpp"

namespace altgen::ocf {

std::string_view to_string(OcfErrc code) {
  switch (code) {
    case OcfErrc::NotZip:
      return "NotZip";
    case OcfErrc::NotSupported:
      return "NotSupported";
    case OcfErrc::CorruptArchive:
      return "CorruptArchive";
    case OcfErrc::MissingMimetype:
      return "MissingMimetype";
    case OcfErrc::WrongMimetype:
      return "WrongMimetype";
    case OcfErrc::MissingContainerXml:
      return "MissingContainerXml";
    case OcfErrc::MalformedContainerXml:
      return "MalformedContainerXml";
    case OcfErrc::InvalidEntryPath:
      return "InvalidEntryPath";
    case OcfErrc::DuplicateEntry:
      return "DuplicateEntry";
    case OcfErrc::InvariantViolation:
      return "InvariantViolation";
  }
  return "OcfError";
}

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::uint32_t kZip64LocatorSig = 0x07064b50;
constexpr std::uint16_t kMethodStored = 0;
constexpr std::uint16_t kMethodDeflate = 8;
constexpr std::uint16_t kFlagEncrypted = 0x0001;
constexpr std::uint16_t kFlagUtf8 = 0x0800;
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kEndOfCentralDirSize = 22;

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool has(std::size_t offset, std::size_t n) const {
    return offset <= bytes_.size() && n <= bytes_.size() - offset;
  }
  std::uint16_t u16(std::size_t offset) const {
    require(offset, 2);
    return static_cast<std::uint16_t>(byte(offset) | (byte(offset + 1) << 8));
  }
  std::uint32_t u32(std::size_t offset) const {
    require(offset, 4);
    return static_cast<std::uint32_t>(byte(offset)) | (static_cast<std::uint32_t>(byte(offset + 1)) << 8) |
           (static_cast<std::uint32_t>(byte(offset + 2)) << 16) |
           (static_cast<std::uint32_t>(byte(offset + 3)) << 24);
  }
  std::string_view slice(std::size_t offset, std::size_t n) const {
    require(offset, n);
    return bytes_.substr(offset, n);
  }
  std::size_t size() const { return bytes_.size(); }

 private:
  unsigned byte(std::size_t offset) const { return static_cast<unsigned char>(bytes_[offset]); }
  void require(std::size_t offset, std::size_t n) const {
    if (!has(offset, n)) throw OcfError(OcfErrc::CorruptArchive, "truncated archive");
  }

  std::string_view bytes_;
};

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t crc_of(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t pos = 0;
  while (pos < data.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(data.size() - pos, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data() + pos), chunk);
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::string inflate_raw(std::string_view compressed, std::size_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
    throw OcfError(OcfErrc::CorruptArchive, "inflateInit2 failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected_size) {
    throw OcfError(OcfErrc::CorruptArchive, "deflate stream does not match declared size");
  }
  return out;
}

std::string deflate_raw(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) !=
      Z_OK) {
    throw OcfError(OcfErrc::InvariantViolation, "deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw OcfError(OcfErrc::InvariantViolation, "deflate failed");
  return out;
}

std::size_t find_end_of_central_dir(const Reader& r) {
  if (r.size() < kEndOfCentralDirSize) throw OcfError(OcfErrc::CorruptArchive, "no end of central directory");
  const std::size_t last = r.size() - kEndOfCentralDirSize;
  const std::size_t floor = last > 0xFFFF ? last - 0xFFFF : 0;
  for (std::size_t pos = last + 1; pos-- > floor;) {
    if (r.u32(pos) == kEndOfCentralDirSig) return pos;
  }
  throw OcfError(OcfErrc::CorruptArchive, "no end of central directory");
}

bool has_non_ascii(std::string_view s) {
  for (char c : s) {
    if (static_cast<unsigned char>(c) >= 0x80) return true;
  }
  return false;
}

}  // namespace

const ArchiveEntry* EpubArchive::find(std::string_view path) const {
  for (const ArchiveEntry& e : entries) {
    if (e.path == path) return &e;
  }
  return nullptr;
}

ArchiveEntry* EpubArchive::find(std::string_view path) {
  for (ArchiveEntry& e : entries) {
    if (e.path == path) return &e;
  }
  return nullptr;
}

void EpubArchive::replace_data(std::string_view path, std::string data) {
  ArchiveEntry* entry = find(path);
  if (!entry) throw OcfError(OcfErrc::InvariantViolation, "no entry " + std::string(path));
  entry->data = std::move(data);
  entry->modified = true;
}

std::string rootfile_from_container(std::string_view container_xml) {
  xml::Element root;
  try {
    root = xml::parse(container_xml);
  } catch (const xml::XmlError& e) {
    throw OcfError(OcfErrc::MalformedContainerXml, e.what());
  }
  // depth-first, document order; the first rootfile wins
  std::vector<const xml::Element*> pending{&root};
  while (!pending.empty()) {
    const xml::Element* el = pending.back();
    pending.pop_back();
    if (el->local_name() == "rootfile") {
      const xml::Attribute* full_path = el->find_attribute("full-path");
      if (!full_path || full_path->value.empty()) {
        throw OcfError(OcfErrc::MalformedContainerXml, "rootfile without full-path");
      }
      auto normalized = paths::normalize(paths::percent_decode(full_path->value));
      if (!normalized || normalized->empty()) {
        throw OcfError(OcfErrc::MalformedContainerXml, "invalid full-path " + full_path->value);
      }
      return *normalized;
    }
    for (auto it = el->children.rbegin(); it != el->children.rend(); ++it) pending.push_back(&*it);
  }
  throw OcfError(OcfErrc::MalformedContainerXml, "no rootfile element");
}

EpubArchive open_epub(std::string_view bytes) {
  const Reader r(bytes);
  const bool local_first = r.has(0, 4) && r.u32(0) == kLocalHeaderSig;
  const bool empty_zip = r.has(0, 4) && r.u32(0) == kEndOfCentralDirSig;
  if (!local_first && !empty_zip) throw OcfError(OcfErrc::NotZip, "missing PK signature");

  const std::size_t eocd = find_end_of_central_dir(r);
  if (eocd >= 20 && r.u32(eocd - 20) == kZip64LocatorSig) {
    throw OcfError(OcfErrc::NotSupported, "ZIP64 archives are not supported");
  }
  const std::uint16_t disk = r.u16(eocd + 4);
  const std::uint16_t cd_disk = r.u16(eocd + 6);
  const std::uint16_t total = r.u16(eocd + 10);
  const std::uint32_t cd_size = r.u32(eocd + 12);
  const std::uint32_t cd_offset = r.u32(eocd + 16);
  if (disk != 0 || cd_disk != 0) throw OcfError(OcfErrc::NotSupported, "multi-disk archive");
  if (total == 0xFFFF || cd_size == 0xFFFFFFFF || cd_offset == 0xFFFFFFFF) {
    throw OcfError(OcfErrc::NotSupported, "ZIP64 archives are not supported");
  }

  EpubArchive archive;
  std::unordered_set<std::string> seen;
  std::size_t mimetype_offset = std::numeric_limits<std::size_t>::max();
  std::size_t pos = cd_offset;
  for (std::uint16_t i = 0; i < total; ++i) {
    if (r.u32(pos) != kCentralHeaderSig) throw OcfError(OcfErrc::CorruptArchive, "bad central directory");
    const std::uint16_t flags = r.u16(pos + 8);
    const std::uint16_t method = r.u16(pos + 10);
    ArchiveEntry entry;
    entry.dos_time = r.u16(pos + 12);
    entry.dos_date = r.u16(pos + 14);
    const std::uint32_t crc = r.u32(pos + 16);
    const std::uint32_t csize = r.u32(pos + 20);
    const std::uint32_t usize = r.u32(pos + 24);
    const std::uint16_t name_len = r.u16(pos + 28);
    const std::uint16_t extra_len = r.u16(pos + 30);
    const std::uint16_t comment_len = r.u16(pos + 32);
    const std::uint32_t local = r.u32(pos + 42);
    entry.path = std::string(r.slice(pos + kCentralHeaderSize, name_len));
    pos += kCentralHeaderSize + name_len + extra_len + comment_len;

    if (csize == 0xFFFFFFFF || usize == 0xFFFFFFFF || local == 0xFFFFFFFF) {
      throw OcfError(OcfErrc::NotSupported, "ZIP64 entry " + entry.path);
    }
    if (flags & kFlagEncrypted) throw OcfError(OcfErrc::NotSupported, "encrypted entry " + entry.path);
    if (method != kMethodStored && method != kMethodDeflate) {
      throw OcfError(OcfErrc::NotSupported,
                     "compression method " + std::to_string(method) + " in " + entry.path);
    }
    if (!paths::is_valid_entry_path(entry.path)) throw OcfError(OcfErrc::InvalidEntryPath, entry.path);
    if (!seen.insert(entry.path).second) throw OcfError(OcfErrc::DuplicateEntry, entry.path);

    if (r.u32(local) != kLocalHeaderSig) throw OcfError(OcfErrc::CorruptArchive, "bad local header for " + entry.path);
    const std::uint16_t local_name_len = r.u16(local + 26);
    const std::uint16_t local_extra_len = r.u16(local + 28);
    const std::size_t data_at = local + kLocalHeaderSize + local_name_len + local_extra_len;
    const std::string_view raw = r.slice(data_at, csize);
    if (method == kMethodStored) {
      if (csize != usize) throw OcfError(OcfErrc::CorruptArchive, "stored size mismatch in " + entry.path);
      entry.data = std::string(raw);
      entry.compression = Compression::Stored;
    } else {
      entry.data = inflate_raw(raw, usize);
      entry.compression = Compression::Deflated;
    }
    if (crc_of(entry.data) != crc) throw OcfError(OcfErrc::CorruptArchive, "CRC mismatch in " + entry.path);
    if (entry.path == kMimetypePath) mimetype_offset = local;
    archive.entries.push_back(std::move(entry));
  }

  const ArchiveEntry* mimetype = archive.find(kMimetypePath);
  if (!mimetype) throw OcfError(OcfErrc::MissingMimetype, "");
  if (&archive.entries.front() != mimetype || mimetype_offset != 0) {
    throw OcfError(OcfErrc::WrongMimetype, "mimetype is not the first entry");
  }
  if (mimetype->compression != Compression::Stored) {
    throw OcfError(OcfErrc::WrongMimetype, "mimetype entry is compressed");
  }
  if (mimetype->data != kMimetypeContent) {
    throw OcfError(OcfErrc::WrongMimetype, "unexpected content '" + mimetype->data + "'");
  }
  const ArchiveEntry* container = archive.find(kContainerPath);
  if (!container) throw OcfError(OcfErrc::MissingContainerXml, "");
  archive.rootfile_path = rootfile_from_container(container->data);
  return archive;
}

std::optional<std::string> invariant_violation(const EpubArchive& archive) {
  if (archive.entries.empty() || archive.entries.front().path != kMimetypePath) {
    return "first entry must be mimetype";
  }
  const ArchiveEntry& mimetype = archive.entries.front();
  if (mimetype.compression != Compression::Stored) return "mimetype must be stored";
  if (mimetype.data != kMimetypeContent) return "mimetype content must be application/epub+zip";
  if (!archive.find(kContainerPath)) return "META-INF/container.xml missing";
  std::unordered_set<std::string_view> seen;
  for (const ArchiveEntry& e : archive.entries) {
    if (!paths::is_valid_entry_path(e.path)) return "invalid entry path " + e.path;
    if (!seen.insert(e.path).second) return "duplicate entry " + e.path;
  }
  return std::nullopt;
}

std::string write_epub(const EpubArchive& archive) {
  if (auto violation = invariant_violation(archive)) {
    throw OcfError(OcfErrc::InvariantViolation, *violation);
  }
  if (archive.entries.size() >= 0xFFFF) throw OcfError(OcfErrc::NotSupported, "too many entries for ZIP32");

  std::string out;
  std::string central;
  for (const ArchiveEntry& e : archive.entries) {
    const bool deflate = e.compression == Compression::Deflated && !e.is_directory();
    const std::string compressed = deflate ? deflate_raw(e.data) : std::string();
    const std::string_view payload = deflate ? std::string_view(compressed) : std::string_view(e.data);
    if (e.data.size() >= 0xFFFFFFFF || out.size() >= 0xFFFFFFFF - payload.size()) {
      throw OcfError(OcfErrc::NotSupported, "archive too large for ZIP32");
    }
    const std::uint16_t method = deflate ? kMethodDeflate : kMethodStored;
    const std::uint16_t version = deflate ? 20 : 10;
    const std::uint16_t flags = has_non_ascii(e.path) ? kFlagUtf8 : 0;
    const std::uint32_t crc = crc_of(e.data);
    const auto offset = static_cast<std::uint32_t>(out.size());

    put32(out, kLocalHeaderSig);
    put16(out, version);
    put16(out, flags);
    put16(out, method);
    put16(out, e.dos_time);
    put16(out, e.dos_date);
    put32(out, crc);
    put32(out, static_cast<std::uint32_t>(payload.size()));
    put32(out, static_cast<std::uint32_t>(e.data.size()));
    put16(out, static_cast<std::uint16_t>(e.path.size()));
    put16(out, 0);
    out += e.path;
    out += payload;

    put32(central, kCentralHeaderSig);
    put16(central, 20);
    put16(central, version);
    put16(central, flags);
    put16(central, method);
    put16(central, e.dos_time);
    put16(central, e.dos_date);
    put32(central, crc);
    put32(central, static_cast<std::uint32_t>(payload.size()));
    put32(central, static_cast<std::uint32_t>(e.data.size()));
    put16(central, static_cast<std::uint16_t>(e.path.size()));
    put16(central, 0);  // extra
    put16(central, 0);  // comment
    put16(central, 0);  // disk
    put16(central, 0);  // internal attributes
    put32(central, e.is_directory() ? 0x10 : 0);
    put32(central, offset);
    central += e.path;
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  const auto count = static_cast<std::uint16_t>(archive.entries.size());
  put32(out, kEndOfCentralDirSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, count);
  put16(out, count);
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

}  // namespace altgen::ocf
