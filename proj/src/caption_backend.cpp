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

#include "altgen/caption_backend.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <json.hpp>
#include <thread>

#include "altgen/markup.hpp"
#include "altgen/metrics.hpp"
#include "altgen/paths.hpp"
#include "altgen/text.hpp"

namespace altgen::backend {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string_view to_string(BackendErrc code) {
  switch (code) {
    case BackendErrc::BackendUnavailable:
      return "BackendUnavailable";
    case BackendErrc::BackendRejected:
      return "BackendRejected";
    case BackendErrc::MalformedResponse:
      return "MalformedResponse";
    case BackendErrc::CandidateInvalid:
      return "CandidateInvalid";
    case BackendErrc::LengthMismatch:
      return "LengthMismatch";
    case BackendErrc::InvalidRequest:
      return "InvalidRequest";
  }
  return "BackendError";
}

bool is_supported_media_type(std::string_view media_type) {
  return std::find(kSupportedMediaTypes.begin(), kSupportedMediaTypes.end(), media_type) !=
         kSupportedMediaTypes.end();
}

std::optional<std::string> media_type_for_path(std::string_view path) {
  static const std::map<std::string, std::string, std::less<>> by_extension = {
      {"jpg", "image/jpeg"}, {"jpeg", "image/jpeg"},   {"png", "image/png"},
      {"gif", "image/gif"},  {"svg", "image/svg+xml"}, {"webp", "image/webp"}};
  const auto it = by_extension.find(paths::extension(path));
  if (it == by_extension.end()) return std::nullopt;
  return it->second;
}

void validate_request(const CaptionRequest& request) {
  if (!is_supported_media_type(request.media_type)) {
    throw BackendError(BackendErrc::InvalidRequest, "unsupported media type '" + request.media_type + "'");
  }
  if (request.max_length < kMinMaxLength || request.max_length > kMaxMaxLength) {
    throw BackendError(BackendErrc::InvalidRequest,
                       "max_length " + std::to_string(request.max_length) + " outside [20, 1000]");
  }
}

void validate_candidate(const AltCandidate& candidate, int max_length) {
  if (text::normalize_whitespace(candidate.alt_text).empty()) {
    throw BackendError(BackendErrc::CandidateInvalid, "empty alt text");
  }
  if (text::codepoint_count(candidate.alt_text) > static_cast<std::size_t>(max_length)) {
    throw BackendError(BackendErrc::CandidateInvalid,
                       "alt text longer than " + std::to_string(max_length) + " characters");
  }
  for (char32_t cp : text::decode_utf8(candidate.alt_text)) {
    if (cp == '\n' || cp == '\r' || cp == 0x85 || cp == 0x2028 || cp == 0x2029) {
      throw BackendError(BackendErrc::CandidateInvalid, "alt text contains a line break");
    }
  }
  if (!std::isfinite(candidate.confidence) || candidate.confidence < 0.0 || candidate.confidence > 1.0) {
    throw BackendError(BackendErrc::CandidateInvalid, "confidence outside [0, 1]");
  }
}

namespace {

std::string strip_trailing_punctuation(std::string_view s) {
  std::u32string cps = text::decode_utf8(s);
  while (!cps.empty() && (text::is_punctuation(cps.back()) || text::is_space(cps.back()))) cps.pop_back();
  return text::encode_utf8(cps);
}

std::string join(const std::vector<std::string>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

// Up to n words of context: the figure caption first, then the text closest
// to the image.
std::string context_words(const content::ContextBundle& ctx, std::size_t n) {
  const auto head = [n](std::string_view s) {
    const auto words = text::split_whitespace(s);
    return join(words, 0, std::min(n, words.size()));
  };
  if (ctx.figcaption && !ctx.figcaption->empty()) return head(*ctx.figcaption);
  if (!ctx.preceding_text.empty()) {
    const auto words = text::split_whitespace(ctx.preceding_text);
    return join(words, words.size() > n ? words.size() - n : 0, words.size());
  }
  if (!ctx.following_text.empty()) return head(ctx.following_text);
  if (ctx.nearest_heading && !ctx.nearest_heading->empty()) return head(*ctx.nearest_heading);
  return {};
}

std::optional<std::string> svg_title(std::string_view svg) {
  if (!text::is_valid_utf8(svg)) return std::nullopt;
  const markup::Tree tree = markup::parse(svg);
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].kind == markup::NodeKind::Element && tree.nodes[i].local == "title") {
      std::string title = text::normalize_whitespace(tree.text_of(static_cast<int>(i)));
      if (!title.empty()) return title;
    }
  }
  return std::nullopt;
}

std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

ordered_json nullable(const std::optional<std::string>& s) {
  return s ? ordered_json(*s) : ordered_json(nullptr);
}

json parse_body(const std::string& body) {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) {
    throw BackendError(BackendErrc::MalformedResponse, "response is not JSON");
  }
  if (!parsed.is_object()) throw BackendError(BackendErrc::MalformedResponse, "response is not an object");
  return parsed;
}

std::string excerpt(const std::string& body) {
  const json parsed = json::parse(body, nullptr, false);
  if (!parsed.is_discarded() && parsed.is_object() && parsed.contains("error") && parsed["error"].is_string()) {
    return parsed["error"].get<std::string>();
  }
  constexpr std::size_t kMax = 200;
  return body.size() > kMax ? body.substr(0, kMax) + "..." : body;
}

}  // namespace

std::string fit_to_length(std::string_view input, std::size_t max_chars) {
  const std::string normalized = text::normalize_whitespace(input);
  if (text::codepoint_count(normalized) <= max_chars) return normalized;
  if (max_chars == 0) return {};
  std::string cut = strip_trailing_punctuation(text::truncate_head(normalized, max_chars - 1));
  if (cut.empty()) cut = text::encode_utf8(text::decode_utf8(normalized).substr(0, max_chars - 1));
  return cut + ".";
}

std::string base64_encode(std::string_view bytes) {
  static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                            static_cast<unsigned char>(bytes[i + 2]);
    out += kAlphabet[(v >> 18) & 0x3F];
    out += kAlphabet[(v >> 12) & 0x3F];
    out += kAlphabet[(v >> 6) & 0x3F];
    out += kAlphabet[v & 0x3F];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest) {
    std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
    if (rest == 2) v |= static_cast<unsigned char>(bytes[i + 1]) << 8;
    out += kAlphabet[(v >> 18) & 0x3F];
    out += kAlphabet[(v >> 12) & 0x3F];
    out += rest == 2 ? kAlphabet[(v >> 6) & 0x3F] : '=';
    out += '=';
  }
  return out;
}

std::string caption_request_body(const CaptionRequest& request) {
  ordered_json context;
  context["figcaption"] = nullable(request.context.figcaption);
  context["preceding_text"] = request.context.preceding_text;
  context["following_text"] = request.context.following_text;
  context["nearest_heading"] = nullable(request.context.nearest_heading);
  context["doc_title"] = nullable(request.context.doc_title);
  ordered_json body;
  body["image_base64"] = base64_encode(request.image_bytes);
  body["media_type"] = request.media_type;
  body["context"] = std::move(context);
  body["max_length"] = request.max_length;
  body["language"] = nullable(request.language);
  return dump(body);
}

std::string embed_request_body(const std::vector<std::string>& texts) {
  ordered_json body;
  body["texts"] = texts;
  return dump(body);
}

std::string language_request_body(std::string_view text) {
  ordered_json body;
  body["text"] = std::string(text);
  return dump(body);
}

AltCandidate StubBackend::generate_alt(const CaptionRequest& request) {
  validate_request(request);
  std::string stem = paths::stem(request.source_path);
  if (stem.empty()) stem = "image";
  std::string alt = "Image: " + stem + ".";
  if (request.media_type == "image/svg+xml") {
    if (auto title = svg_title(request.image_bytes)) {
      const std::string cleaned = strip_trailing_punctuation(*title);
      if (!cleaned.empty()) alt += " Title: " + cleaned + ".";
    }
  }
  const std::string words = strip_trailing_punctuation(context_words(request.context, kContextWords));
  if (!words.empty()) alt += " Context: " + words + ".";
  AltCandidate candidate{fit_to_length(alt, static_cast<std::size_t>(request.max_length)), kConfidence, id()};
  validate_candidate(candidate, request.max_length);
  return candidate;
}

std::vector<EmbeddingVector> StubBackend::embed_texts(const std::vector<std::string>& texts) {
  if (texts.empty()) throw BackendError(BackendErrc::InvalidRequest, "no texts to embed");
  std::vector<metrics::TokenSeq> tokenized;
  std::map<std::string, std::size_t> vocabulary;
  for (const std::string& t : texts) {
    if (text::codepoint_count(t) > kMaxEmbedTextLength) {
      throw BackendError(BackendErrc::InvalidRequest, "text longer than 2000 characters");
    }
    tokenized.push_back(metrics::tokenize(t));
    for (const std::string& token : tokenized.back().tokens) vocabulary.emplace(token, 0);
  }
  std::size_t next = 0;
  for (auto& [token, index] : vocabulary) index = next++;

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const metrics::TokenSeq& seq : tokenized) {
    EmbeddingVector v;
    v.values.assign(vocabulary.size(), 0.0);
    for (const std::string& token : seq.tokens) v.values[vocabulary.at(token)] += 1.0;
    double norm = 0.0;
    for (double x : v.values) norm += x * x;
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (double& x : v.values) x /= norm;
    }
    out.push_back(std::move(v));
  }
  return out;
}

RemoteOptions remote_options_from_env(std::string url) {
  RemoteOptions options;
  options.url = std::move(url);
  if (const char* token = std::getenv("ALTGEN_BACKEND_TOKEN"); token && *token) options.token = token;
  return options;
}

RemoteBackend::RemoteBackend(RemoteOptions options)
    : options_(std::move(options)),
      in_flight_(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(options_.max_in_flight, 1, 64))) {
  const std::size_t scheme_end = options_.url.find("://");
  if (scheme_end == std::string::npos) {
    throw BackendError(BackendErrc::InvalidRequest, "backend URL needs a scheme: " + options_.url);
  }
  const std::string scheme = options_.url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw BackendError(BackendErrc::InvalidRequest, "unsupported scheme " + scheme);
  }
  const std::size_t path_at = options_.url.find('/', scheme_end + 3);
  origin_ = options_.url.substr(0, path_at);
  if (path_at != std::string::npos) base_path_ = options_.url.substr(path_at);
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
}

RemoteBackend::~RemoteBackend() = default;

RemoteBackend::Response RemoteBackend::post_once(std::string_view endpoint, const std::string& body) {
  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<64>& sem;
    ~Release() { sem.release(); }
  } release{in_flight_};

  httplib::Client client(origin_);
  client.set_connection_timeout(options_.connect_timeout);
  client.set_read_timeout(options_.read_timeout);
  client.set_write_timeout(options_.read_timeout);
  httplib::Headers headers;
  if (options_.token) headers.emplace("Authorization", "Bearer " + *options_.token);
  const std::string path = base_path_ + std::string(endpoint);
  auto result = client.Post(path, headers, body, "application/json");
  if (!result) {
    throw BackendError(BackendErrc::BackendUnavailable, origin_ + path + ": " + httplib::to_string(result.error()));
  }
  return Response{result->status, result->body};
}

RemoteBackend::Response RemoteBackend::post(std::string_view endpoint, const std::string& body,
                                            bool allow_not_found) {
  Response response;
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      response = post_once(endpoint, body);
      break;
    } catch (const BackendError& e) {
      if (e.code() != BackendErrc::BackendUnavailable || attempt >= options_.retry_delays.size()) throw;
      std::this_thread::sleep_for(options_.retry_delays[attempt]);
    }
  }
  if (response.status >= 200 && response.status < 300) return response;
  if (allow_not_found && response.status == 404) return response;
  throw BackendError(BackendErrc::BackendRejected,
                     "HTTP " + std::to_string(response.status) + ": " + excerpt(response.body));
}

AltCandidate RemoteBackend::generate_alt(const CaptionRequest& request) {
  validate_request(request);
  const json parsed = parse_body(post("/v1/caption", caption_request_body(request)).body);
  if (!parsed.contains("alt_text") || !parsed["alt_text"].is_string() || !parsed.contains("confidence") ||
      !parsed["confidence"].is_number()) {
    throw BackendError(BackendErrc::MalformedResponse, "expected {\"alt_text\": str, \"confidence\": number}");
  }
  AltCandidate candidate{parsed["alt_text"].get<std::string>(), parsed["confidence"].get<double>(), id()};
  validate_candidate(candidate, request.max_length);
  return candidate;
}

std::vector<EmbeddingVector> RemoteBackend::embed_texts(const std::vector<std::string>& texts) {
  if (texts.empty()) throw BackendError(BackendErrc::InvalidRequest, "no texts to embed");
  for (const std::string& t : texts) {
    if (text::codepoint_count(t) > kMaxEmbedTextLength) {
      throw BackendError(BackendErrc::InvalidRequest, "text longer than 2000 characters");
    }
  }
  const json parsed = parse_body(post("/v1/embed", embed_request_body(texts)).body);
  if (!parsed.contains("embeddings") || !parsed["embeddings"].is_array()) {
    throw BackendError(BackendErrc::MalformedResponse, "expected {\"embeddings\": [[number]]}");
  }
  const json& rows = parsed["embeddings"];
  if (rows.size() != texts.size()) {
    throw BackendError(BackendErrc::LengthMismatch,
                       std::to_string(rows.size()) + " embeddings for " + std::to_string(texts.size()) + " texts");
  }
  std::vector<EmbeddingVector> out;
  for (const json& row : rows) {
    if (!row.is_array()) throw BackendError(BackendErrc::MalformedResponse, "embedding is not an array");
    EmbeddingVector v;
    for (const json& x : row) {
      if (!x.is_number()) throw BackendError(BackendErrc::MalformedResponse, "non-numeric embedding entry");
      const double value = x.get<double>();
      if (!std::isfinite(value)) throw BackendError(BackendErrc::MalformedResponse, "non-finite embedding entry");
      v.values.push_back(value);
    }
    if (!out.empty() && out.front().values.size() != v.values.size()) {
      throw BackendError(BackendErrc::MalformedResponse, "embeddings differ in length");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<lang::LanguageVote> RemoteBackend::detect_language(std::string_view text) {
  const Response response = post("/v1/language", language_request_body(text), true);
  if (response.status == 404) return std::nullopt;
  const json parsed = parse_body(response.body);
  if (!parsed.contains("lang") || !parsed["lang"].is_string() || !parsed.contains("confidence") ||
      !parsed["confidence"].is_number()) {
    throw BackendError(BackendErrc::MalformedResponse, "expected {\"lang\": str, \"confidence\": number}");
  }
  const double confidence = parsed["confidence"].get<double>();
  if (!std::isfinite(confidence) || confidence < 0.0 || confidence > 1.0) {
    throw BackendError(BackendErrc::MalformedResponse, "language confidence outside [0, 1]");
  }
  return lang::LanguageVote{lang::Member::Remote, parsed["lang"].get<std::string>(), confidence};
}

std::unique_ptr<CaptionBackend> make_backend(std::string_view name_or_url) {
  if (name_or_url == "stub") return std::make_unique<StubBackend>();
  if (name_or_url.substr(0, 7) == "http://" || name_or_url.substr(0, 8) == "https://") {
    return std::make_unique<RemoteBackend>(remote_options_from_env(std::string(name_or_url)));
  }
  throw BackendError(BackendErrc::InvalidRequest, "backend must be 'stub' or an http(s) URL");
}

}  // namespace altgen::backend
