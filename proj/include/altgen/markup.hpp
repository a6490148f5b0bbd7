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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Lenient, offset-preserving XHTML/HTML tree builder. Unlike the strict XML
// reader it never rejects markup: unbalanced tags are auto-closed, HTML void
// elements need no end tag, and unknown entities are kept literally. Every
// start tag keeps its byte span so attributes can be rewritten in place.
namespace altgen::markup {

struct Attr {
  std::string name;   // as written
  std::string value;  // entity-decoded
  std::size_t begin = 0;  // span of `name="value"` in the source
  std::size_t end = 0;
  bool has_value = false;
};

enum class NodeKind { Document, Element, Text };

struct Node {
  NodeKind kind = NodeKind::Element;
  std::string qname;  // element name as written
  std::string local;  // lowercased local name
  std::vector<Attr> attrs;
  std::string text;  // decoded character data (Text nodes)
  int parent = -1;
  std::vector<int> children;
  std::size_t tag_begin = 0;  // start tag span
  std::size_t tag_end = 0;
  std::size_t insert_at = 0;  // offset right after the last attribute

  const Attr* find_attr(std::string_view local_name) const;
};

struct Tree {
  std::vector<Node> nodes;  // nodes[0] is the document; index order is document order

  const Node& root() const { return nodes.front(); }
  bool has_ancestor(int node, std::string_view local) const;
  int find_ancestor(int node, std::string_view local) const;
  std::string text_of(int node) const;  // descendant text, raw (not normalized)
};

Tree parse(std::string_view source);

std::string decode_entities(std::string_view s);

}  // namespace altgen::markup
