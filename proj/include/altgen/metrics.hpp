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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/embedding.hpp"
#include "altgen/error.hpp"

// Validation metrics: cosine similarity of embeddings, sentence BLEU with a
// brevity penalty, error reduction rate and corpus aggregation.
namespace altgen::metrics {

enum class MetricErrc { ZeroVector, LengthMismatch, EmptyCandidate, NoReferences, InvalidArgument };
std::string_view to_string(MetricErrc code);
using MetricError = CodedError<MetricErrc>;

// Canonical token sequence: lowercase, split on Unicode whitespace, leading
// and trailing punctuation stripped, empty tokens dropped.
struct TokenSeq {
  std::vector<std::string> tokens;
  bool operator==(const TokenSeq&) const = default;
};

TokenSeq tokenize(std::string_view text);

double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

struct BleuOptions {
  int max_n = 4;
  // Add-one smoothing of the n >= 2 precisions.
  bool smoothing = false;
};

struct BleuBreakdown {
  double score = 0.0;
  double brevity_penalty = 1.0;
  std::vector<double> precisions;  // p_1 .. p_N for the orders that were scored
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;  // effective reference length
};

BleuBreakdown bleu_breakdown(const TokenSeq& candidate, std::span<const TokenSeq> references,
                             const BleuOptions& options = {});
double bleu(const TokenSeq& candidate, std::span<const TokenSeq> references,
            const BleuOptions& options = {});

struct ErrorReduction {
  double percent = 0.0;
  bool no_baseline = false;
};

ErrorReduction error_reduction_rate(std::size_t pre_errors, std::size_t post_errors);

struct CorpusPair {
  std::string candidate;
  std::string reference;
};

using Embedder = std::function<std::vector<EmbeddingVector>(const std::vector<std::string>&)>;

struct MetricReport {
  std::optional<double> cosine;
  std::optional<double> bleu;
  double err_percent = 0.0;
  bool no_baseline = true;
  std::optional<double> seconds_per_file;
  std::size_t n_files = 0;
  std::size_t n_pairs = 0;
  std::size_t cosine_excluded = 0;  // pairs whose embedding or cosine failed
  std::size_t bleu_excluded = 0;    // pairs with an empty candidate or reference
};

// Mean pairwise cosine and sentence BLEU over `pairs`; mean of `timings`.
// The error reduction fields are left for the caller to fill.
MetricReport corpus_metrics(std::span<const CorpusPair> pairs, const Embedder& embedder,
                            std::span<const double> timings, const BleuOptions& options = {});

}  // namespace altgen::metrics
