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

#include "altgen/package_doc.hpp"

#include <algorithm>
#include <unordered_set>

#include "altgen/paths.hpp"
#include "altgen/xml.hpp"

namespace altgen::opf {

std::string_view to_string(PackageErrc code) {
  switch (code) {
    case PackageErrc::MalformedXml:
      return "MalformedXml";
    case PackageErrc::DanglingSpineRef:
      return "DanglingSpineRef";
    case PackageErrc::DuplicateManifestId:
      return "DuplicateManifestId";
    case PackageErrc::InvariantViolation:
      return "InvariantViolation";
  }
  return "PackageError";
}

namespace {

constexpr std::string_view kSchemaPrefix = "schema:";

std::string trim(std::string_view s) {
  const auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return std::string(s);
}

bool is_opf_ns(std::string_view ns) { return ns.empty() || ns == kOpfNamespace; }

std::optional<std::string_view> accessibility_property(std::string_view value) {
  if (value.substr(0, kSchemaPrefix.size()) != kSchemaPrefix) return std::nullopt;
  const std::string_view prop = value.substr(kSchemaPrefix.size());
  for (std::string_view known : kAccessibilityProperties) {
    if (known == prop) return known;
  }
  return std::nullopt;
}

class Reader {
 public:
  Reader(std::string_view source, std::string_view base_dir) : source_(source) {
    doc_.base_dir = std::string(base_dir);
  }

  PackageDocument read() {
    xml::Element root;
    try {
      root = xml::parse(source_);
    } catch (const xml::XmlError& e) {
      throw PackageError(PackageErrc::MalformedXml, e.what());
    }
    if (root.local_name() != "package") {
      throw PackageError(PackageErrc::MalformedXml, "root element is <" + root.name + ">");
    }
    for (const auto& [prefix, uri] : root.namespace_decls) remember_namespace(prefix, uri);
    for (const xml::Attribute& a : root.attributes) {
      if (a.name == "version") {
        doc_.version = a.value;
      } else {
        doc_.package_attributes.push_back(attr(a));
      }
    }
    for (const xml::Element& child : root.children) {
      const std::string local = child.local_name();
      if (is_opf_ns(child.ns) && local == "metadata") {
        read_metadata(child);
      } else if (is_opf_ns(child.ns) && local == "manifest") {
        read_manifest(child);
      } else if (is_opf_ns(child.ns) && local == "spine") {
        read_spine(child);
      } else {
        doc_.passthrough.emplace_back(source_.substr(child.begin, child.end - child.begin));
      }
    }
    for (const SpineItem& s : doc_.spine) {
      if (!doc_.item_by_id(s.idref)) throw PackageError(PackageErrc::DanglingSpineRef, s.idref);
    }
    return std::move(doc_);
  }

 private:
  void remember_namespace(const std::string& prefix, const std::string& uri) {
    if (prefix.empty() || uri == kOpfNamespace || uri == kDcNamespace) return;
    for (const auto& [p, u] : doc_.extra_namespaces) {
      if (p == prefix) return;
    }
    doc_.extra_namespaces.emplace_back(prefix, uri);
  }

  Attr attr(const xml::Attribute& a) {
    if (a.ns.empty()) return {a.name, a.value};
    if (a.ns == kOpfNamespace) return {"opf:" + a.local_name(), a.value};
    if (a.ns == xml::kXmlNamespace) return {"xml:" + a.local_name(), a.value};
    if (a.ns == kDcNamespace) return {"dc:" + a.local_name(), a.value};
    const std::size_t colon = a.name.find(':');
    remember_namespace(a.name.substr(0, colon), a.ns);
    return {a.name, a.value};
  }

  std::string element_name(const xml::Element& el) {
    if (el.ns == kDcNamespace) return "dc:" + el.local_name();
    if (is_opf_ns(el.ns)) return el.local_name();
    remember_namespace(el.prefix(), el.ns);
    return el.name;
  }

  void read_metadata(const xml::Element& metadata) {
    for (const auto& [prefix, uri] : metadata.namespace_decls) remember_namespace(prefix, uri);
    for (const xml::Element& el : metadata.children) {
      const std::string local = el.local_name();
      // OPF 2.0 allows grouping wrappers; flatten them.
      if (is_opf_ns(el.ns) && (local == "dc-metadata" || local == "x-metadata")) {
        read_metadata(el);
        continue;
      }
      doc_.metadata.push_back(meta_entry(el));
    }
  }

  MetaEntry meta_entry(const xml::Element& el) {
    MetaEntry entry;
    const std::string local = el.local_name();
    if (el.ns == kDcNamespace) {
      if (local == "title") {
        entry.kind = MetaKind::DcTitle;
      } else if (local == "language") {
        entry.kind = MetaKind::DcLanguage;
      } else if (local == "creator") {
        entry.kind = MetaKind::DcCreator;
      } else if (local == "date") {
        entry.kind = MetaKind::DcDate;
      } else if (local == "identifier") {
        entry.kind = MetaKind::DcIdentifier;
      } else {
        entry.name = element_name(el);
      }
      entry.value = trim(el.text_content());
      for (const xml::Attribute& a : el.attributes) entry.attributes.push_back(attr(a));
      return entry;
    }
    if (is_opf_ns(el.ns) && local == "meta") {
      const xml::Attribute* property = el.find_attribute("property");
      const xml::Attribute* name = el.find_attribute("name");
      const xml::Attribute* content = el.find_attribute("content");
      if (property) {
        if (auto prop = accessibility_property(property->value)) {
          entry.kind = MetaKind::SchemaAccessibility;
          entry.name = std::string(*prop);
          entry.value = trim(el.text_content());
          for (const xml::Attribute& a : el.attributes) {
            if (&a != property) entry.attributes.push_back(attr(a));
          }
          return entry;
        }
      } else if (name && content) {
        if (auto prop = accessibility_property(name->value)) {
          entry.kind = MetaKind::SchemaAccessibility;
          entry.name = std::string(*prop);
          entry.value = trim(content->value);
          for (const xml::Attribute& a : el.attributes) {
            if (&a != name && &a != content) entry.attributes.push_back(attr(a));
          }
          return entry;
        }
      }
    }
    entry.kind = MetaKind::Other;
    entry.name = element_name(el);
    entry.value = trim(el.text_content());
    for (const xml::Attribute& a : el.attributes) entry.attributes.push_back(attr(a));
    return entry;
  }

  void read_manifest(const xml::Element& manifest) {
    std::unordered_set<std::string> ids;
    for (const xml::Element& el : manifest.children) {
      if (!is_opf_ns(el.ns) || el.local_name() != "item") continue;
      ManifestItem item;
      for (const xml::Attribute& a : el.attributes) {
        if (a.name == "id") {
          item.id = a.value;
        } else if (a.name == "href") {
          item.raw_href = a.value;
        } else if (a.name == "media-type") {
          item.media_type = a.value;
        } else if (a.name == "properties") {
          std::size_t pos = 0;
          const std::string& v = a.value;
          while (pos < v.size()) {
            while (pos < v.size() && v[pos] == ' ') ++pos;
            const std::size_t end = std::min(v.find(' ', pos), v.size());
            if (end > pos) item.properties.push_back(v.substr(pos, end - pos));
            pos = end;
          }
        } else {
          item.attributes.push_back(attr(a));
        }
      }
      if (auto resolved = paths::resolve(doc_.base_dir, item.raw_href)) {
        item.href = *resolved;
      } else {
        item.href = item.raw_href;
      }
      if (!ids.insert(item.id).second) throw PackageError(PackageErrc::DuplicateManifestId, item.id);
      doc_.manifest.push_back(std::move(item));
    }
  }

  void read_spine(const xml::Element& spine) {
    for (const xml::Attribute& a : spine.attributes) doc_.spine_attributes.push_back(attr(a));
    for (const xml::Element& el : spine.children) {
      if (!is_opf_ns(el.ns) || el.local_name() != "itemref") continue;
      SpineItem item;
      for (const xml::Attribute& a : el.attributes) {
        if (a.name == "idref") {
          item.idref = a.value;
        } else {
          item.attributes.push_back(attr(a));
        }
      }
      doc_.spine.push_back(std::move(item));
    }
  }

  std::string_view source_;
  PackageDocument doc_;
};

void write_attrs(std::string& out, const std::vector<Attr>& attrs) {
  for (const Attr& a : attrs) {
    out += ' ';
    out += a.name;
    out += "=\"";
    out += xml::escape_attribute(a.value);
    out += '"';
  }
}

std::string_view dc_name(MetaKind kind) {
  switch (kind) {
    case MetaKind::DcTitle:
      return "dc:title";
    case MetaKind::DcLanguage:
      return "dc:language";
    case MetaKind::DcCreator:
      return "dc:creator";
    case MetaKind::DcDate:
      return "dc:date";
    case MetaKind::DcIdentifier:
      return "dc:identifier";
    default:
      return {};
  }
}

void write_element(std::string& out, std::string_view name, const std::vector<Attr>& attrs,
                   std::string_view value) {
  out += "    <";
  out += name;
  write_attrs(out, attrs);
  if (value.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  out += xml::escape_text(value);
  out += "</";
  out += name;
  out += ">\n";
}

bool uses_prefix(const PackageDocument& doc, std::string_view prefix) {
  const auto has = [&](const std::vector<Attr>& attrs) {
    return std::any_of(attrs.begin(), attrs.end(),
                       [&](const Attr& a) { return a.name.substr(0, prefix.size()) == prefix; });
  };
  if (has(doc.package_attributes) || has(doc.spine_attributes)) return true;
  for (const MetaEntry& m : doc.metadata) {
    if (has(m.attributes)) return true;
  }
  for (const ManifestItem& i : doc.manifest) {
    if (has(i.attributes)) return true;
  }
  for (const SpineItem& s : doc.spine) {
    if (has(s.attributes)) return true;
  }
  return false;
}

}  // namespace

const ManifestItem* PackageDocument::item_by_id(std::string_view id) const {
  for (const ManifestItem& item : manifest) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

const ManifestItem* PackageDocument::item_by_href(std::string_view href) const {
  for (const ManifestItem& item : manifest) {
    if (item.href == href) return &item;
  }
  return nullptr;
}

std::optional<std::string> PackageDocument::first_value(MetaKind kind) const {
  for (const MetaEntry& m : metadata) {
    if (m.kind == kind) return m.value;
  }
  return std::nullopt;
}

std::vector<std::string> PackageDocument::values(MetaKind kind) const {
  std::vector<std::string> out;
  for (const MetaEntry& m : metadata) {
    if (m.kind == kind) out.push_back(m.value);
  }
  return out;
}

bool PackageDocument::has_accessibility(std::string_view property, std::string_view value) const {
  return std::any_of(metadata.begin(), metadata.end(), [&](const MetaEntry& m) {
    return m.kind == MetaKind::SchemaAccessibility && m.name == property &&
           (value.empty() || m.value == value);
  });
}

std::vector<std::string> PackageDocument::spine_paths() const {
  std::vector<std::string> out;
  for (const SpineItem& s : spine) {
    if (const ManifestItem* item = item_by_id(s.idref)) out.push_back(item->href);
  }
  return out;
}

bool is_content_document(const ManifestItem& item) {
  return item.media_type == "application/xhtml+xml" || item.media_type == "text/html";
}

PackageDocument parse_opf(std::string_view data, std::string_view base_dir) {
  return Reader(data, base_dir).read();
}

PackageDocument parse_opf(const ocf::ArchiveEntry& entry, std::string_view base_dir) {
  return parse_opf(std::string_view(entry.data), base_dir);
}

PackageDocument load_package(const ocf::EpubArchive& archive) {
  const ocf::ArchiveEntry* entry = archive.find(archive.rootfile_path);
  if (!entry) {
    throw PackageError(PackageErrc::MalformedXml, "package document " + archive.rootfile_path + " not found");
  }
  return parse_opf(*entry, paths::dirname(archive.rootfile_path));
}

std::optional<std::string> invariant_violation(const PackageDocument& doc) {
  std::unordered_set<std::string_view> ids;
  std::unordered_set<std::string_view> hrefs;
  for (const ManifestItem& item : doc.manifest) {
    if (item.id.empty()) return "manifest item without id";
    if (!ids.insert(item.id).second) return "duplicate manifest id " + item.id;
    if (!hrefs.insert(item.href).second) return "duplicate manifest href " + item.href;
  }
  for (const SpineItem& s : doc.spine) {
    if (!ids.count(s.idref)) return "dangling spine idref " + s.idref;
  }
  for (const MetaEntry& m : doc.metadata) {
    if (m.kind == MetaKind::SchemaAccessibility &&
        std::find(kAccessibilityProperties.begin(), kAccessibilityProperties.end(), m.name) ==
            kAccessibilityProperties.end()) {
      return "unknown accessibility property " + m.name;
    }
    if (m.kind == MetaKind::Other && m.name.empty()) return "metadata entry without a name";
  }
  return std::nullopt;
}

std::string serialize_opf(const PackageDocument& doc) {
  if (auto violation = invariant_violation(doc)) {
    throw PackageError(PackageErrc::InvariantViolation, *violation);
  }
  const bool epub2 = !doc.version.empty() && doc.version.front() == '2';
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<package xmlns=\"";
  out += kOpfNamespace;
  out += '"';
  if (uses_prefix(doc, "opf:")) {
    out += " xmlns:opf=\"";
    out += kOpfNamespace;
    out += '"';
  }
  for (const auto& [prefix, uri] : doc.extra_namespaces) {
    out += " xmlns:" + prefix + "=\"" + xml::escape_attribute(uri) + '"';
  }
  if (!doc.version.empty()) out += " version=\"" + xml::escape_attribute(doc.version) + '"';
  write_attrs(out, doc.package_attributes);
  out += ">\n  <metadata xmlns:dc=\"";
  out += kDcNamespace;
  out += "\">\n";
  for (const MetaEntry& m : doc.metadata) {
    switch (m.kind) {
      case MetaKind::SchemaAccessibility: {
        const std::string property = std::string(kSchemaPrefix) + m.name;
        if (epub2) {
          std::vector<Attr> attrs{{"name", property}, {"content", m.value}};
          attrs.insert(attrs.end(), m.attributes.begin(), m.attributes.end());
          write_element(out, "meta", attrs, {});
        } else {
          std::vector<Attr> attrs{{"property", property}};
          attrs.insert(attrs.end(), m.attributes.begin(), m.attributes.end());
          write_element(out, "meta", attrs, m.value);
        }
        break;
      }
      case MetaKind::Other:
        write_element(out, m.name, m.attributes, m.value);
        break;
      default:
        write_element(out, dc_name(m.kind), m.attributes, m.value);
        break;
    }
  }
  out += "  </metadata>\n  <manifest>\n";
  for (const ManifestItem& item : doc.manifest) {
    std::string href = item.raw_href;
    const auto resolved = paths::resolve(doc.base_dir, href);
    const bool raw_ok = !href.empty() && (resolved ? *resolved == item.href : href == item.href);
    if (!raw_ok) {
      href = paths::is_external(item.href) ? item.href : paths::relative_href(doc.base_dir, item.href);
    }
    std::vector<Attr> attrs{{"id", item.id}, {"href", href}, {"media-type", item.media_type}};
    if (!item.properties.empty()) {
      std::string props;
      for (const std::string& p : item.properties) {
        if (!props.empty()) props += ' ';
        props += p;
      }
      attrs.push_back({"properties", props});
    }
    attrs.insert(attrs.end(), item.attributes.begin(), item.attributes.end());
    write_element(out, "item", attrs, {});
  }
  out += "  </manifest>\n  <spine";
  write_attrs(out, doc.spine_attributes);
  out += ">\n";
  for (const SpineItem& s : doc.spine) {
    std::vector<Attr> attrs{{"idref", s.idref}};
    attrs.insert(attrs.end(), s.attributes.begin(), s.attributes.end());
    write_element(out, "itemref", attrs, {});
  }
  out += "  </spine>\n";
  for (const std::string& raw : doc.passthrough) {
    out += "  ";
    out += raw;
    out += '\n';
  }
  out += "</package>\n";
  return out;
}

}  // namespace altgen::opf
