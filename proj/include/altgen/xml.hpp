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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/error.hpp"

// Strict, namespace-aware XML reading on top of expat. Used for the
// container manifest, the package document and well-formedness checks.
namespace altgen::xml {

enum class XmlErrc { Malformed };
std::string_view to_string(XmlErrc code);
using XmlError = CodedError<XmlErrc>;

inline constexpr std::string_view kXmlNamespace = "http://www.w3.org/XML/1998/namespace";

struct Attribute {
  std::string name;  // qualified name as written
  std::string value;
  std::string ns;  // resolved namespace URI; empty for unprefixed attributes

  std::string local_name() const;
  bool operator==(const Attribute&) const = default;
};

struct Element {
  std::string name;  // qualified name as written
  std::string ns;    // resolved namespace URI
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;  // direct character data, concatenated
  // xmlns declarations made on this element: prefix ("" for default) -> URI
  std::vector<std::pair<std::string, std::string>> namespace_decls;
  std::size_t begin = 0;  // byte span of the element in the source
  std::size_t end = 0;

  std::string local_name() const;
  std::string prefix() const;
  const Attribute* find_attribute(std::string_view local, std::string_view ns = {}) const;
  const Element* first_child(std::string_view local, std::string_view ns) const;
  std::string text_content() const;
};

struct ParseOptions {
  // Treat undeclared entities (e.g. XHTML `&nbsp;`) as defined by an external
  // DTD instead of failing.
  bool allow_external_entities = false;
};

Element parse(std::string_view bytes, const ParseOptions& options = {});

// Description of the first well-formedness violation, or nullopt.
std::optional<std::string> well_formedness_error(std::string_view bytes,
                                                 const ParseOptions& options = {});

std::string escape_text(std::string_view s);
std::string escape_attribute(std::string_view s);

}  // namespace altgen::xml
