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

#include "altgen/lang_detect.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "altgen/bcp47.hpp"
#include "altgen/text.hpp"

namespace altgen::lang {

namespace detail {
struct EmbeddedProfile {
  const char* lang;
  const char* data;
};
extern const EmbeddedProfile kEmbeddedProfiles[];
extern const std::size_t kEmbeddedProfileCount;
}  // namespace detail

std::string_view to_string(LangErrc code) {
  switch (code) {
    case LangErrc::TextTooShort:
      return "TextTooShort";
    case LangErrc::NoProfiles:
      return "NoProfiles";
    case LangErrc::Undetermined:
      return "Undetermined";
  }
  return "LangError";
}

std::string_view to_string(Member member) {
  switch (member) {
    case Member::Statistical:
      return "Statistical";
    case Member::Script:
      return "Script";
    case Member::Remote:
      return "Remote";
  }
  return "Unknown";
}

std::size_t out_of_place_distance(std::span<const std::string> text_profile,
                                  const LanguageProfile& language) {
  std::unordered_map<std::string_view, std::size_t> rank;
  rank.reserve(language.ranked_trigrams.size());
  for (std::size_t i = 0; i < language.ranked_trigrams.size(); ++i) {
    rank.emplace(language.ranked_trigrams[i], i);
  }
  std::size_t distance = 0;
  for (std::size_t i = 0; i < text_profile.size(); ++i) {
    const auto it = rank.find(text_profile[i]);
    distance += it == rank.end() ? kProfileSize : (it->second > i ? it->second - i : i - it->second);
  }
  return distance;
}

StatisticalMatch match_statistical(std::string_view text, std::span<const LanguageProfile> profiles) {
  if (profiles.empty()) throw LangError(LangErrc::NoProfiles, "");
  const std::size_t letters = count_letters(text);
  if (letters < kMinLetters) {
    throw LangError(LangErrc::TextTooShort,
                    std::to_string(letters) + " letters, need " + std::to_string(kMinLetters));
  }
  const std::vector<std::string> text_profile = ranked_trigrams(text, kProfileSize);
  const LanguageProfile* best = nullptr;
  std::size_t best_distance = std::numeric_limits<std::size_t>::max();
  for (const LanguageProfile& profile : profiles) {
    const std::size_t d = out_of_place_distance(text_profile, profile);
    if (d < best_distance) {
      best_distance = d;
      best = &profile;
    }
  }
  constexpr double max_distance = static_cast<double>(kProfileSize * kProfileSize);
  const double confidence = std::clamp(1.0 - static_cast<double>(best_distance) / max_distance, 0.0, 1.0);
  return StatisticalMatch{LanguageVote{Member::Statistical, best->lang, confidence}, best_distance};
}

LanguageVote detect_statistical(std::string_view text, std::span<const LanguageProfile> profiles) {
  return match_statistical(text, profiles).vote;
}

std::optional<LanguageVote> detect_script(std::string_view input) {
  std::array<std::size_t, 10> counts{};
  std::size_t letters = 0;
  for (char32_t cp : text::decode_utf8(input)) {
    if (!text::is_letter(cp)) continue;
    ++letters;
    ++counts[static_cast<std::size_t>(text::script_of(cp))];
  }
  if (letters == 0) return std::nullopt;
  const auto top = std::max_element(counts.begin(), counts.end());
  if (static_cast<double>(*top) < kScriptShare * static_cast<double>(letters)) return std::nullopt;
  std::string lang;
  switch (static_cast<text::Script>(top - counts.begin())) {
    case text::Script::Greek:
      lang = "el";
      break;
    case text::Script::Hebrew:
      lang = "he";
      break;
    case text::Script::Kana:
      lang = "ja";
      break;
    case text::Script::Hangul:
      lang = "ko";
      break;
    case text::Script::Thai:
      lang = "th";
      break;
    default:
      return std::nullopt;  // Latin, Cyrillic, Arabic and Han map to many languages
  }
  return LanguageVote{Member::Script, std::move(lang), kScriptConfidence};
}

Detection detect_language(std::string_view input, const EnsembleConfig& config) {
  if (text::normalize_whitespace(input).empty()) throw LangError(LangErrc::Undetermined, "empty text");
  if (auto vote = detect_script(input)) return {vote->lang, vote->confidence, Member::Script};
  if (config.remote) {
    try {
      if (auto vote = config.remote(input); vote && vote->confidence >= kRemoteThreshold &&
                                            vote->confidence <= 1.0 && !vote->lang.empty()) {
        return {bcp47::primary_subtag(vote->lang), vote->confidence, Member::Remote};
      }
    } catch (const Error&) {
      // remote member abstains
    }
  }
  try {
    const LanguageVote vote = detect_statistical(input, config.profiles);
    return {vote.lang, vote.confidence, Member::Statistical};
  } catch (const LangError& e) {
    throw LangError(LangErrc::Undetermined, e.what());
  }
}

std::span<const LanguageProfile> embedded_profiles() {
  static const std::vector<LanguageProfile> profiles = [] {
    std::vector<LanguageProfile> out;
    for (std::size_t i = 0; i < detail::kEmbeddedProfileCount; ++i) {
      out.push_back(parse_profile(detail::kEmbeddedProfiles[i].lang, detail::kEmbeddedProfiles[i].data));
    }
    return out;
  }();
  return profiles;
}

std::vector<LanguageProfile> load_profiles(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".profile") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LanguageProfile> out;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    out.push_back(parse_profile(file.stem().string(), buffer.str()));
  }
  return out;
}

}  // namespace altgen::lang
