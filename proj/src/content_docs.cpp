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

#include "altgen/content_docs.hpp"

#include <algorithm>
#include <array>

#include "altgen/markup.hpp"
#include "altgen/paths.hpp"
#include "altgen/text.hpp"
#include "altgen/xml.hpp"

namespace altgen::content {

std::string_view to_string(ContentErrc code) {
  switch (code) {
    case ContentErrc::UnparseableDocument:
      return "UnparseableDocument";
    case ContentErrc::StaleOccurrence:
      return "StaleOccurrence";
    case ContentErrc::InvalidAlt:
      return "InvalidAlt";
  }
  return "ContentError";
}

namespace {

constexpr std::array<std::string_view, 6> kBlockElements = {"p",          "div",        "li",
                                                            "td",         "blockquote", "figcaption"};
constexpr std::array<std::string_view, 4> kHiddenElements = {"head", "script", "style", "title"};

bool is_block(std::string_view local) {
  return std::find(kBlockElements.begin(), kBlockElements.end(), local) != kBlockElements.end();
}

bool is_heading(std::string_view local) {
  return local.size() == 2 && local[0] == 'h' && local[1] >= '1' && local[1] <= '6';
}

bool is_hidden(const markup::Tree& tree, int node) {
  for (std::string_view hidden : kHiddenElements) {
    if (tree.has_ancestor(node, hidden)) return true;
  }
  return false;
}

bool is_image(const markup::Tree& tree, int index) {
  const markup::Node& n = tree.nodes[static_cast<std::size_t>(index)];
  if (n.kind != markup::NodeKind::Element) return false;
  if (n.local == "img") return true;
  return n.local == "image" && tree.has_ancestor(index, "svg");
}

bool has_decorative_role(const markup::Node& n) {
  const markup::Attr* role = n.find_attr("role");
  if (!role) return false;
  for (const std::string& token : text::split_whitespace(text::to_lower(role->value))) {
    if (token == "presentation" || token == "none") return true;
  }
  return false;
}

const markup::Attr* source_attr(const markup::Node& n) {
  return n.local == "img" ? n.find_attr("src") : n.find_attr("href");
}

std::string_view alt_attribute_name(bool svg) { return svg ? "aria-label" : "alt"; }

markup::Tree parse_checked(std::string_view source) {
  if (!text::is_valid_utf8(source) || source.find('\0') != std::string_view::npos) {
    throw ContentError(ContentErrc::UnparseableDocument, "not UTF-8 text");
  }
  markup::Tree tree = markup::parse(source);
  const bool has_element = std::any_of(tree.nodes.begin(), tree.nodes.end(), [](const markup::Node& n) {
    return n.kind == markup::NodeKind::Element;
  });
  if (!has_element) throw ContentError(ContentErrc::UnparseableDocument, "no markup");
  return tree;
}

// Node index of the n-th image element, or -1.
int locate(const markup::Tree& tree, std::size_t element_index) {
  std::size_t seen = 0;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    if (!is_image(tree, static_cast<int>(i))) continue;
    if (seen == element_index) return static_cast<int>(i);
    ++seen;
  }
  return -1;
}

int locate_checked(const markup::Tree& tree, const ImageOccurrence& occurrence) {
  const int node = locate(tree, occurrence.element_index);
  if (node < 0) {
    throw ContentError(ContentErrc::StaleOccurrence,
                       occurrence.doc_path + " has no image #" + std::to_string(occurrence.element_index));
  }
  const markup::Attr* src = source_attr(tree.nodes[static_cast<std::size_t>(node)]);
  if ((src ? src->value : std::string()) != occurrence.raw_src) {
    throw ContentError(ContentErrc::StaleOccurrence,
                       occurrence.doc_path + " image #" + std::to_string(occurrence.element_index) +
                           " no longer points at " + occurrence.raw_src);
  }
  return node;
}

std::optional<std::string> non_empty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

std::vector<ImageOccurrence> find_images(std::string_view source, std::string_view doc_path) {
  const markup::Tree tree = parse_checked(source);
  const std::string doc_dir = paths::dirname(doc_path);
  std::vector<ImageOccurrence> out;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    if (!is_image(tree, static_cast<int>(i))) continue;
    const markup::Node& n = tree.nodes[i];
    ImageOccurrence occ;
    occ.doc_path = std::string(doc_path);
    occ.element_index = out.size();
    occ.svg = n.local == "image";
    if (const markup::Attr* src = source_attr(n)) occ.raw_src = src->value;
    occ.external = paths::is_external(occ.raw_src);
    if (occ.external) {
      occ.src = occ.raw_src;
    } else if (auto resolved = paths::resolve(doc_dir, occ.raw_src)) {
      occ.src = *resolved;
    }
    if (const markup::Attr* alt = n.find_attr(alt_attribute_name(occ.svg))) occ.existing_alt = alt->value;
    occ.decorative = has_decorative_role(n);
    out.push_back(std::move(occ));
  }
  return out;
}

std::vector<ImageOccurrence> find_images(const ocf::ArchiveEntry& doc, std::string_view doc_path) {
  return find_images(std::string_view(doc.data), doc_path);
}

ContextBundle extract_context(const ocf::ArchiveEntry& doc, const ImageOccurrence& occurrence,
                              const opf::PackageDocument& pkg) {
  const markup::Tree tree = parse_checked(doc.data);
  const int image = locate_checked(tree, occurrence);

  ContextBundle bundle;
  if (const int figure = tree.find_ancestor(image, "figure"); figure >= 0) {
    for (std::size_t i = static_cast<std::size_t>(figure) + 1; i < tree.nodes.size(); ++i) {
      const markup::Node& n = tree.nodes[i];
      if (n.local == "figcaption" && tree.find_ancestor(static_cast<int>(i), "figure") == figure) {
        bundle.figcaption = non_empty(text::normalize_whitespace(tree.text_of(static_cast<int>(i))));
        break;
      }
    }
  }

  std::string before;
  std::string after;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const markup::Node& n = tree.nodes[i];
    const int idx = static_cast<int>(i);
    if (n.kind == markup::NodeKind::Element && is_heading(n.local) && idx < image) {
      if (auto heading = non_empty(text::normalize_whitespace(tree.text_of(idx)))) {
        bundle.nearest_heading = std::move(heading);
      }
    }
    if (n.kind != markup::NodeKind::Text || is_hidden(tree, idx)) continue;
    bool in_block = false;
    for (int p = n.parent; p > 0; p = tree.nodes[static_cast<std::size_t>(p)].parent) {
      if (is_block(tree.nodes[static_cast<std::size_t>(p)].local)) {
        in_block = true;
        break;
      }
    }
    if (!in_block) continue;
    std::string& target = idx < image ? before : after;
    target += n.text;
    target += ' ';
  }
  bundle.preceding_text = text::truncate_tail(text::normalize_whitespace(before), kContextWindow);
  bundle.following_text = text::truncate_head(text::normalize_whitespace(after), kContextWindow);
  if (auto title = pkg.first_value(opf::MetaKind::DcTitle)) {
    bundle.doc_title = non_empty(text::normalize_whitespace(*title));
  }
  return bundle;
}

ocf::ArchiveEntry set_alt_text(const ocf::ArchiveEntry& doc, const ImageOccurrence& occurrence,
                               std::string_view alt) {
  if (alt.empty() && !occurrence.decorative) {
    throw ContentError(ContentErrc::InvalidAlt, "empty alt text for a non-decorative image");
  }
  const markup::Tree tree = parse_checked(doc.data);
  const int image = locate_checked(tree, occurrence);
  const markup::Node& n = tree.nodes[static_cast<std::size_t>(image)];
  const std::string_view attr_name = alt_attribute_name(occurrence.svg);

  std::string replacement;
  std::size_t begin = n.insert_at;
  std::size_t end = n.insert_at;
  if (const markup::Attr* existing = n.find_attr(attr_name)) {
    begin = existing->begin;
    end = existing->end;
    replacement = existing->name;
  } else {
    replacement = " ";
    replacement += attr_name;
  }
  replacement += "=\"";
  replacement += xml::escape_attribute(alt);
  replacement += '"';

  ocf::ArchiveEntry out = doc;
  out.data.replace(begin, end - begin, replacement);
  out.modified = true;
  return out;
}

std::string visible_text(std::string_view source) {
  const markup::Tree tree = markup::parse(source);
  std::string out;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const markup::Node& n = tree.nodes[i];
    if (n.kind != markup::NodeKind::Text || is_hidden(tree, static_cast<int>(i))) continue;
    out += n.text;
    out += ' ';
  }
  return text::normalize_whitespace(out);
}

bool is_well_formed(std::string_view source) {
  return !xml::well_formedness_error(source, {.allow_external_entities = true}).has_value();
}

}  // namespace altgen::content
