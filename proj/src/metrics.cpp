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

#include "altgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "altgen/text.hpp"

namespace altgen::metrics {

std::string_view to_string(MetricErrc code) {
  switch (code) {
    case MetricErrc::ZeroVector:
      return "ZeroVector";
    case MetricErrc::LengthMismatch:
      return "LengthMismatch";
    case MetricErrc::EmptyCandidate:
      return "EmptyCandidate";
    case MetricErrc::NoReferences:
      return "NoReferences";
    case MetricErrc::InvalidArgument:
      return "InvalidArgument";
  }
  return "MetricError";
}

TokenSeq tokenize(std::string_view input) {
  TokenSeq seq;
  for (const std::string& word : text::split_whitespace(input)) {
    std::u32string cps = text::decode_utf8(word);
    std::size_t begin = 0;
    std::size_t end = cps.size();
    while (begin < end && text::is_punctuation(cps[begin])) ++begin;
    while (end > begin && text::is_punctuation(cps[end - 1])) --end;
    if (begin == end) continue;
    std::u32string token = cps.substr(begin, end - begin);
    for (char32_t& cp : token) cp = text::to_lower(cp);
    seq.tokens.push_back(text::encode_utf8(token));
  }
  return seq;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw MetricError(MetricErrc::LengthMismatch,
                      std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) throw MetricError(MetricErrc::ZeroVector, "");
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine_similarity(std::span<const double>(a.values), std::span<const double>(b.values));
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

BleuBreakdown bleu_breakdown(const TokenSeq& candidate, std::span<const TokenSeq> references,
                             const BleuOptions& options) {
  if (options.max_n < 1) throw MetricError(MetricErrc::InvalidArgument, "max_n must be >= 1");
  if (candidate.tokens.empty()) throw MetricError(MetricErrc::EmptyCandidate, "");
  const bool any_reference = std::any_of(references.begin(), references.end(),
                                         [](const TokenSeq& r) { return !r.tokens.empty(); });
  if (!any_reference) throw MetricError(MetricErrc::NoReferences, "");

  BleuBreakdown out;
  const std::size_t c = candidate.tokens.size();
  out.candidate_length = c;

  // effective reference length: closest to c, ties resolved to the shorter
  std::size_t r = references.front().tokens.size();
  for (const TokenSeq& ref : references) {
    const std::size_t len = ref.tokens.size();
    const auto gap = [c](std::size_t l) { return l > c ? l - c : c - l; };
    if (gap(len) < gap(r) || (gap(len) == gap(r) && len < r)) r = len;
  }
  out.reference_length = r;
  out.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));

  // orders longer than the candidate have no n-grams and are not scored
  const std::size_t orders = std::min<std::size_t>(static_cast<std::size_t>(options.max_n), c);
  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 1; n <= orders; ++n) {
    const NgramCounts cand_counts = count_ngrams(candidate.tokens, n);
    NgramCounts max_ref;
    for (const TokenSeq& ref : references) {
      for (const auto& [gram, count] : count_ngrams(ref.tokens, n)) {
        std::size_t& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t clipped = 0;
    for (const auto& [gram, count] : cand_counts) {
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) clipped += std::min(count, it->second);
    }
    const std::size_t total = c - n + 1;
    double p = static_cast<double>(clipped) / static_cast<double>(total);
    if (options.smoothing && n >= 2) {
      p = static_cast<double>(clipped + 1) / static_cast<double>(total + 1);
    }
    out.precisions.push_back(p);
    if (p == 0.0) {
      zero = true;
    } else {
      log_sum += std::log(p) / static_cast<double>(orders);
    }
  }
  out.score = zero ? 0.0 : std::clamp(out.brevity_penalty * std::exp(log_sum), 0.0, 1.0);
  return out;
}

double bleu(const TokenSeq& candidate, std::span<const TokenSeq> references, const BleuOptions& options) {
  return bleu_breakdown(candidate, references, options).score;
}

ErrorReduction error_reduction_rate(std::size_t pre_errors, std::size_t post_errors) {
  if (pre_errors == 0) return {0.0, true};
  const double pre = static_cast<double>(pre_errors);
  const double post = static_cast<double>(post_errors);
  // a regression (post > pre) reports 0 rather than a negative rate
  return {std::clamp(100.0 * (pre - post) / pre, 0.0, 100.0), false};
}

MetricReport corpus_metrics(std::span<const CorpusPair> pairs, const Embedder& embedder,
                            std::span<const double> timings, const BleuOptions& options) {
  if (pairs.empty()) throw MetricError(MetricErrc::InvalidArgument, "no pairs");
  MetricReport report;
  report.n_pairs = pairs.size();
  double cosine_sum = 0.0;
  std::size_t cosine_n = 0;
  double bleu_sum = 0.0;
  std::size_t bleu_n = 0;
  for (const CorpusPair& pair : pairs) {
    try {
      const std::vector<EmbeddingVector> vectors = embedder({pair.candidate, pair.reference});
      if (vectors.size() != 2) throw MetricError(MetricErrc::LengthMismatch, "embedder result size");
      cosine_sum += cosine_similarity(vectors[0], vectors[1]);
      ++cosine_n;
    } catch (const Error&) {
      ++report.cosine_excluded;
    }
    try {
      const TokenSeq reference = tokenize(pair.reference);
      bleu_sum += bleu(tokenize(pair.candidate), std::span<const TokenSeq>(&reference, 1), options);
      ++bleu_n;
    } catch (const MetricError&) {
      ++report.bleu_excluded;
    }
  }
  if (cosine_n) report.cosine = cosine_sum / static_cast<double>(cosine_n);
  if (bleu_n) report.bleu = bleu_sum / static_cast<double>(bleu_n);
  report.n_files = timings.size();
  if (!timings.empty()) {
    report.seconds_per_file =
        std::accumulate(timings.begin(), timings.end(), 0.0) / static_cast<double>(timings.size());
  }
  return report;
}

}  // namespace altgen::metrics
