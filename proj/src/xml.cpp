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

#include "altgen/xml.hpp"

#include <expat.h>

#include <memory>
#include <utility>

namespace altgen::xml {

std::string_view to_string(XmlErrc code) {
  switch (code) {
    case XmlErrc::Malformed:
      return "MalformedXml";
  }
  return "XmlError";
}

namespace {

std::string_view local_of(std::string_view qname) {
  const std::size_t colon = qname.find(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

struct Builder {
  XML_Parser parser = nullptr;
  std::vector<Element*> stack;
  Element root;
  bool have_root = false;
  std::string error;
  // prefix -> URI bindings, innermost last
  std::vector<std::vector<std::pair<std::string, std::string>>> scopes;

  std::optional<std::string> lookup(std::string_view prefix) const {
    if (prefix == "xml") return std::string(kXmlNamespace);
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      for (auto b = it->rbegin(); b != it->rend(); ++b) {
        if (b->first == prefix) return b->second;
      }
    }
    if (prefix.empty()) return std::string();
    return std::nullopt;
  }

  void fail(std::string message) {
    if (error.empty()) error = std::move(message);
    XML_StopParser(parser, XML_FALSE);
  }

  static void on_start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* self = static_cast<Builder*>(data);
    Element el;
    el.name = name;
    el.begin = static_cast<std::size_t>(XML_GetCurrentByteIndex(self->parser));
    el.end = el.begin + static_cast<std::size_t>(XML_GetCurrentByteCount(self->parser));
    std::vector<std::pair<std::string, std::string>> scope;
    for (int i = 0; atts[i]; i += 2) {
      std::string_view an = atts[i];
      if (an == "xmlns") {
        scope.emplace_back("", atts[i + 1]);
      } else if (an.substr(0, 6) == "xmlns:") {
        scope.emplace_back(std::string(an.substr(6)), atts[i + 1]);
      } else {
        el.attributes.push_back({atts[i], atts[i + 1], {}});
      }
    }
    el.namespace_decls = scope;
    self->scopes.push_back(std::move(scope));

    const std::size_t colon = el.name.find(':');
    const std::string prefix = colon == std::string::npos ? "" : el.name.substr(0, colon);
    if (auto uri = self->lookup(prefix)) {
      el.ns = *uri;
    } else {
      self->fail("unbound namespace prefix '" + prefix + "'");
      return;
    }
    for (Attribute& a : el.attributes) {
      const std::size_t c = a.name.find(':');
      if (c == std::string::npos) continue;
      const std::string p = a.name.substr(0, c);
      if (auto uri = self->lookup(p)) {
        a.ns = *uri;
      } else {
        self->fail("unbound namespace prefix '" + p + "'");
        return;
      }
    }

    if (self->stack.empty()) {
      self->root = std::move(el);
      self->have_root = true;
      self->stack.push_back(&self->root);
    } else {
      Element* parent = self->stack.back();
      parent->children.push_back(std::move(el));
      self->stack.push_back(&parent->children.back());
    }
  }

  static void on_end(void* data, const XML_Char*) {
    auto* self = static_cast<Builder*>(data);
    if (self->stack.empty()) return;
    Element* el = self->stack.back();
    const auto idx = static_cast<std::size_t>(XML_GetCurrentByteIndex(self->parser));
    const auto cnt = static_cast<std::size_t>(XML_GetCurrentByteCount(self->parser));
    el->end = std::max(el->end, idx + cnt);
    self->stack.pop_back();
    self->scopes.pop_back();
  }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<Builder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

Element run(std::string_view bytes, const ParseOptions& options) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw XmlError(XmlErrc::Malformed, "cannot allocate parser");
  Builder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &Builder::on_text);
  if (options.allow_external_entities) XML_UseForeignDTD(parser.get(), XML_TRUE);

  const auto status =
      XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (!builder.error.empty()) throw XmlError(XmlErrc::Malformed, builder.error);
  if (status != XML_STATUS_OK) {
    std::string msg = XML_ErrorString(XML_GetErrorCode(parser.get()));
    msg += " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get()));
    msg += ", column " + std::to_string(XML_GetCurrentColumnNumber(parser.get()));
    throw XmlError(XmlErrc::Malformed, msg);
  }
  if (!builder.have_root) throw XmlError(XmlErrc::Malformed, "no root element");
  return std::move(builder.root);
}

}  // namespace

std::string Attribute::local_name() const { return std::string(local_of(name)); }

std::string Element::local_name() const { return std::string(local_of(name)); }

std::string Element::prefix() const {
  const std::size_t colon = name.find(':');
  return colon == std::string::npos ? std::string() : name.substr(0, colon);
}

const Attribute* Element::find_attribute(std::string_view local, std::string_view want_ns) const {
  for (const Attribute& a : attributes) {
    if (a.ns == want_ns && local_of(a.name) == local) return &a;
  }
  return nullptr;
}

const Element* Element::first_child(std::string_view local, std::string_view want_ns) const {
  for (const Element& c : children) {
    if (c.ns == want_ns && local_of(c.name) == local) return &c;
  }
  return nullptr;
}

std::string Element::text_content() const {
  std::string out = text;
  for (const Element& c : children) out += c.text_content();
  return out;
}

Element parse(std::string_view bytes, const ParseOptions& options) { return run(bytes, options); }

std::optional<std::string> well_formedness_error(std::string_view bytes,
                                                 const ParseOptions& options) {
  try {
    run(bytes, options);
  } catch (const XmlError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string escape_attribute(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\t':
        out += "&#9;";
        break;
      case '\n':
        out += "&#10;";
        break;
      case '\r':
        out += "&#13;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

}  // namespace altgen::xml
