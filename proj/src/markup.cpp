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

#include "altgen/markup.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <utility>

#include "altgen/text.hpp"

namespace altgen::markup {

namespace {

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source",
    "track", "wbr"};

constexpr std::array<std::pair<std::string_view, char32_t>, 40> kNamedEntities = {{
    {"amp", '&'},       {"lt", '<'},         {"gt", '>'},         {"quot", '"'},
    {"apos", '\''},     {"nbsp", 0xA0},      {"shy", 0xAD},       {"copy", 0xA9},
    {"reg", 0xAE},      {"trade", 0x2122},   {"mdash", 0x2014},   {"ndash", 0x2013},
    {"hellip", 0x2026}, {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"ldquo", 0x201C},
    {"rdquo", 0x201D},  {"laquo", 0xAB},     {"raquo", 0xBB},     {"bull", 0x2022},
    {"middot", 0xB7},   {"deg", 0xB0},       {"eacute", 0xE9},    {"egrave", 0xE8},
    {"aacute", 0xE1},   {"agrave", 0xE0},    {"iacute", 0xED},    {"oacute", 0xF3},
    {"uacute", 0xFA},   {"ntilde", 0xF1},    {"ccedil", 0xE7},    {"auml", 0xE4},
    {"ouml", 0xF6},     {"uuml", 0xFC},      {"szlig", 0xDF},     {"ecirc", 0xEA},
    {"thinsp", 0x2009}, {"ensp", 0x2002},    {"emsp", 0x2003},    {"times", 0xD7},
}};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::string local_lower(std::string_view qname) {
  const std::size_t colon = qname.find(':');
  return ascii_lower(colon == std::string_view::npos ? qname : qname.substr(colon + 1));
}

bool is_void(std::string_view local) {
  return std::find(kVoidElements.begin(), kVoidElements.end(), local) != kVoidElements.end();
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      char a = hay[i + j];
      if (a >= 'A' && a <= 'Z') a = static_cast<char>(a + 32);
      if (a != needle[j]) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

class Builder {
 public:
  explicit Builder(std::string_view src) : src_(src) {
    Node doc;
    doc.kind = NodeKind::Document;
    doc.qname = "#document";
    tree_.nodes.push_back(std::move(doc));
    open_.push_back(0);
  }

  Tree run() {
    std::size_t pos = 0;
    while (pos < src_.size()) {
      if (src_[pos] != '<') {
        std::size_t next = src_.find('<', pos);
        if (next == std::string_view::npos) next = src_.size();
        add_text(decode_entities(src_.substr(pos, next - pos)));
        pos = next;
        continue;
      }
      pos = markup_at(pos);
    }
    return std::move(tree_);
  }

 private:
  std::size_t skip_past(std::size_t from, std::string_view terminator) {
    const std::size_t at = src_.find(terminator, from);
    return at == std::string_view::npos ? src_.size() : at + terminator.size();
  }

  std::size_t markup_at(std::size_t pos) {
    const std::string_view rest = src_.substr(pos);
    if (rest.substr(0, 4) == "<!--") return skip_past(pos + 4, "-->");
    if (rest.substr(0, 9) == "<![CDATA[") {
      const std::size_t end = src_.find("]]>", pos + 9);
      const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
      add_text(std::string(src_.substr(pos + 9, stop - pos - 9)));
      return end == std::string_view::npos ? src_.size() : end + 3;
    }
    if (rest.substr(0, 2) == "<?") return skip_past(pos + 2, "?>");
    if (rest.substr(0, 2) == "<!") return skip_past(pos + 2, ">");
    if (rest.size() >= 2 && rest[1] == '/') return end_tag(pos);
    if (rest.size() >= 2 && is_name_start(rest[1])) return start_tag(pos);
    add_text("<");
    return pos + 1;
  }

  std::size_t end_tag(std::size_t pos) {
    std::size_t p = pos + 2;
    const std::size_t name_begin = p;
    while (p < src_.size() && !is_space(src_[p]) && src_[p] != '>') ++p;
    const std::string local = local_lower(src_.substr(name_begin, p - name_begin));
    const std::size_t end = skip_past(p, ">");
    for (std::size_t i = open_.size(); i-- > 1;) {
      if (tree_.nodes[static_cast<std::size_t>(open_[i])].local == local) {
        open_.resize(i);
        break;
      }
    }
    return end;
  }

  std::size_t start_tag(std::size_t pos) {
    Node node;
    node.kind = NodeKind::Element;
    node.tag_begin = pos;
    std::size_t p = pos + 1;
    const std::size_t name_begin = p;
    while (p < src_.size() && !is_space(src_[p]) && src_[p] != '>' && src_[p] != '/') ++p;
    node.qname = std::string(src_.substr(name_begin, p - name_begin));
    node.local = local_lower(node.qname);
    node.insert_at = p;
    bool self_closing = false;
    while (p < src_.size()) {
      while (p < src_.size() && is_space(src_[p])) ++p;
      if (p >= src_.size()) break;
      if (src_[p] == '>') {
        ++p;
        break;
      }
      if (src_[p] == '/') {
        if (p + 1 < src_.size() && src_[p + 1] == '>') {
          self_closing = true;
          p += 2;
          break;
        }
        ++p;
        continue;
      }
      Attr attr;
      attr.begin = p;
      while (p < src_.size() && !is_space(src_[p]) && src_[p] != '=' && src_[p] != '>' &&
             !(src_[p] == '/' && p + 1 < src_.size() && src_[p + 1] == '>')) {
        ++p;
      }
      attr.name = std::string(src_.substr(attr.begin, p - attr.begin));
      std::size_t q = p;
      while (q < src_.size() && is_space(src_[q])) ++q;
      if (q < src_.size() && src_[q] == '=') {
        ++q;
        while (q < src_.size() && is_space(src_[q])) ++q;
        attr.has_value = true;
        if (q < src_.size() && (src_[q] == '"' || src_[q] == '\'')) {
          const char quote = src_[q];
          const std::size_t close = src_.find(quote, q + 1);
          const std::size_t stop = close == std::string_view::npos ? src_.size() : close;
          attr.value = decode_entities(src_.substr(q + 1, stop - q - 1));
          p = close == std::string_view::npos ? src_.size() : close + 1;
        } else {
          const std::size_t vbegin = q;
          while (q < src_.size() && !is_space(src_[q]) && src_[q] != '>') ++q;
          attr.value = decode_entities(src_.substr(vbegin, q - vbegin));
          p = q;
        }
      }
      attr.end = p;
      node.insert_at = p;
      if (attr.name.empty()) {
        ++p;  // stray character; never loop in place
        continue;
      }
      node.attrs.push_back(std::move(attr));
    }
    node.tag_end = p;
    const int parent = open_.back();
    node.parent = parent;
    const int index = static_cast<int>(tree_.nodes.size());
    const std::string local = node.local;
    tree_.nodes.push_back(std::move(node));
    tree_.nodes[static_cast<std::size_t>(parent)].children.push_back(index);

    if (self_closing || is_void(local)) return p;
    if (local == "script" || local == "style") {
      const std::string closing = "</" + local;
      const std::size_t close = find_ci(src_, closing, p);
      const std::size_t stop = close == std::string_view::npos ? src_.size() : close;
      open_.push_back(index);
      add_text(std::string(src_.substr(p, stop - p)));
      open_.pop_back();
      return close == std::string_view::npos ? src_.size() : skip_past(close, ">");
    }
    open_.push_back(index);
    return p;
  }

  void add_text(std::string decoded) {
    if (decoded.empty()) return;
    const int parent = open_.back();
    Node& p = tree_.nodes[static_cast<std::size_t>(parent)];
    if (!p.children.empty()) {
      Node& last = tree_.nodes[static_cast<std::size_t>(p.children.back())];
      if (last.kind == NodeKind::Text) {
        last.text += decoded;
        return;
      }
    }
    Node node;
    node.kind = NodeKind::Text;
    node.text = std::move(decoded);
    node.parent = parent;
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(std::move(node));
    tree_.nodes[static_cast<std::size_t>(parent)].children.push_back(index);
  }

  std::string_view src_;
  Tree tree_;
  std::vector<int> open_;
};

}  // namespace

const Attr* Node::find_attr(std::string_view local_name) const {
  for (const Attr& a : attrs) {
    if (local_lower(a.name) == local_name) return &a;
  }
  return nullptr;
}

bool Tree::has_ancestor(int node, std::string_view local) const {
  return find_ancestor(node, local) >= 0;
}

int Tree::find_ancestor(int node, std::string_view local) const {
  for (int p = nodes[static_cast<std::size_t>(node)].parent; p > 0;
       p = nodes[static_cast<std::size_t>(p)].parent) {
    if (nodes[static_cast<std::size_t>(p)].local == local) return p;
  }
  return -1;
}

std::string Tree::text_of(int node) const {
  const Node& n = nodes[static_cast<std::size_t>(node)];
  if (n.kind == NodeKind::Text) return n.text;
  std::string out;
  for (int c : n.children) {
    out += text_of(c);
    out += ' ';
  }
  return out;
}

Tree parse(std::string_view source) { return Builder(source).run(); }

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view name = s.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    if (!name.empty() && name.front() == '#') {
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const std::string digits(name.substr(hex ? 2 : 1));
      char* end = nullptr;
      const unsigned long v = digits.empty() ? 0 : std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (!digits.empty() && end && *end == '\0' && v > 0 && v <= 0x10FFFF) cp = static_cast<char32_t>(v);
    } else {
      for (const auto& [entity, value] : kNamedEntities) {
        if (entity == name) {
          cp = value;
          break;
        }
      }
    }
    if (cp == 0) {
      out.push_back(s[i++]);
      continue;
    }
    text::append_utf8(out, cp);
    i = semi + 1;
  }
  return out;
}

}  // namespace altgen::markup
