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

#include <string>
#include <string_view>

namespace altgen::bcp47 {

// Syntactic well-formedness of a language tag (langtag, privateuse or
// irregular grandfathered production). No registry lookup is performed.
bool is_well_formed(std::string_view tag);

// Lowercased primary language subtag ("pt" for "pt-BR").
std::string primary_subtag(std::string_view tag);

}  // namespace altgen::bcp47
