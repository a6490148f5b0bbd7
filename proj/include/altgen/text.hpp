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

// Unicode helpers shared by the tokenizer, the context extractor and the
// language detector. Only the character ranges the toolchain cares about
// are classified; everything else is treated as "other".
namespace altgen::text {

constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes UTF-8, substituting U+FFFD for every invalid sequence.
std::u32string decode_utf8(std::string_view bytes);
bool is_valid_utf8(std::string_view bytes);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view utf8);

bool is_letter(char32_t cp);
bool is_space(char32_t cp);
bool is_punctuation(char32_t cp);

enum class Script { Latin, Greek, Cyrillic, Hebrew, Arabic, Kana, Hangul, Thai, Han, Other };
Script script_of(char32_t cp);

// Collapses runs of Unicode whitespace into single ASCII spaces and trims.
std::string normalize_whitespace(std::string_view utf8);

std::size_t codepoint_count(std::string_view utf8);

// Longest prefix of at most `max_chars` code points that ends at a word
// boundary. A single word longer than the limit is cut hard.
std::string truncate_head(std::string_view normalized, std::size_t max_chars);
// Longest suffix of at most `max_chars` code points that starts at a word
// boundary.
std::string truncate_tail(std::string_view normalized, std::size_t max_chars);

std::vector<std::string> split_whitespace(std::string_view utf8);

}  // namespace altgen::text
