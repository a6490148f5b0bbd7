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

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/error.hpp"
#include "altgen/trigram.hpp"

// Ensemble language identification: a rule-based script member, an optional
// remote member and a statistical trigram member, fused by precedence.
namespace altgen::lang {

inline constexpr std::size_t kMinLetters = 40;
inline constexpr double kScriptConfidence = 0.95;
inline constexpr double kScriptShare = 0.90;
inline constexpr double kRemoteThreshold = 0.8;

enum class LangErrc { TextTooShort, NoProfiles, Undetermined };
std::string_view to_string(LangErrc code);
using LangError = CodedError<LangErrc>;

enum class Member { Statistical, Script, Remote };
std::string_view to_string(Member member);

struct LanguageVote {
  Member member;
  std::string lang;
  double confidence = 0.0;
  bool operator==(const LanguageVote&) const = default;
};

struct StatisticalMatch {
  LanguageVote vote;
  std::size_t distance = 0;
};

// Out-of-place distance of a text profile against a language profile.
// Trigrams missing from the language profile cost kProfileSize each.
std::size_t out_of_place_distance(std::span<const std::string> text_profile,
                                  const LanguageProfile& language);

StatisticalMatch match_statistical(std::string_view text, std::span<const LanguageProfile> profiles);
LanguageVote detect_statistical(std::string_view text, std::span<const LanguageProfile> profiles);

std::optional<LanguageVote> detect_script(std::string_view text);

using RemoteMember = std::function<std::optional<LanguageVote>(std::string_view)>;

struct EnsembleConfig {
  std::span<const LanguageProfile> profiles;
  RemoteMember remote;  // empty when disabled
};

struct Detection {
  std::string lang;
  double confidence = 0.0;
  Member member = Member::Statistical;
};

// Script vote wins when present; otherwise a remote vote with confidence at
// least kRemoteThreshold; otherwise the statistical vote.
Detection detect_language(std::string_view text, const EnsembleConfig& config);

// Profiles compiled into the binary from the bundled corpora.
std::span<const LanguageProfile> embedded_profiles();

// Reads every `<subtag>.profile` file in `dir`, sorted by subtag.
std::vector<LanguageProfile> load_profiles(const std::filesystem::path& dir);

}  // namespace altgen::lang
