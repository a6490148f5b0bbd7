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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/a11y_audit.hpp"
#include "altgen/caption_backend.hpp"
#include "altgen/enrichment.hpp"
#include "altgen/error.hpp"
#include "altgen/metrics.hpp"

// Batch orchestration: audit, alt generation, metadata enrichment,
// reconstruction and validation over many EPUB files.
namespace altgen::pipeline {

inline constexpr std::string_view kReportFileName = "altgen-report.json";
inline constexpr std::size_t kMinAdequateAlt = 5;

enum class PipelineErrc { InvalidConfig, InvalidReferences, MissingReport };
std::string_view to_string(PipelineErrc code);
using PipelineError = CodedError<PipelineErrc>;

enum class ReportFormat { Json, Text };

struct PipelineConfig {
  std::string backend = "stub";  // "stub" or an http(s) URL
  unsigned jobs = 1;
  int max_alt_length = backend::kDefaultMaxLength;
  int bleu_max_n = 4;
  bool smoothing = false;
  std::filesystem::path output_dir;
  ReportFormat report_format = ReportFormat::Json;
  // Fail the whole file when any image cannot be captioned.
  bool strict = false;
};

unsigned default_jobs();
void validate_config(const PipelineConfig& config);
// Overlays the keys present in a JSON config file onto `config`.
void apply_config_file(PipelineConfig& config, const std::filesystem::path& file);

// Files named directly plus every *.epub below named directories, sorted.
// Paths that do not exist are returned in `missing`.
struct InputSet {
  std::vector<std::filesystem::path> files;
  std::vector<std::filesystem::path> missing;
};
InputSet collect_inputs(const std::vector<std::filesystem::path>& paths);

// Existing alt that is too short or just repeats the image filename.
bool is_inadequate_alt(std::string_view alt, std::string_view image_path);

struct AuditedFile {
  std::string input_path;
  std::optional<audit::AuditReport> report;
  std::string failure;  // set when the file could not be audited
};

struct CorpusAudit {
  std::vector<AuditedFile> files;
  std::size_t error_count = 0;
  std::size_t warning_count = 0;
  int exit_code = 0;
};

CorpusAudit run_audit(const std::vector<std::filesystem::path>& paths, const PipelineConfig& config);

enum class FileStatus { Repaired, CleanSkipped, Failed };
std::string_view to_string(FileStatus status);

struct WrittenAlt {
  std::string doc;
  std::size_t index = 0;
  std::string alt;
  bool operator==(const WrittenAlt&) const = default;
};

struct FileResult {
  std::string input_path;
  std::string output_path;
  FileStatus status = FileStatus::Failed;
  std::string failure_reason;
  std::optional<audit::AuditReport> pre_report;
  std::optional<audit::AuditReport> post_report;
  std::vector<enrich::AppliedFix> fixes;
  std::vector<WrittenAlt> written;
  std::size_t alts_written = 0;
  std::size_t alts_skipped = 0;  // images that needed alt but could not get one
  double elapsed_seconds = 0.0;
};

struct Aggregate {
  std::size_t pre_errors = 0;
  std::size_t post_errors = 0;
  double err_percent = 0.0;
  bool no_baseline = false;
  double seconds_per_file = 0.0;
  std::size_t repaired = 0;
  std::size_t clean_skipped = 0;
  std::size_t failed = 0;
};

struct RepairRun {
  std::vector<FileResult> files;  // sorted by input path
  Aggregate aggregate;
  int exit_code = 0;
};

// Uses `backend` when given, otherwise builds one from config.backend.
RepairRun run_repair(const std::vector<std::filesystem::path>& paths, const PipelineConfig& config,
                     backend::CaptionBackend* backend = nullptr);

Aggregate aggregate_of(const std::vector<FileResult>& files);

struct Reference {
  std::string epub;  // file name inside the repaired directory
  std::string doc;
  std::size_t index = 0;
  std::string alt;
};
std::vector<Reference> load_references(const std::filesystem::path& file);

struct ValidationReport {
  metrics::MetricReport metrics;
  std::size_t references = 0;
  std::size_t missing_references = 0;
  std::size_t pre_errors = 0;
  std::size_t post_errors = 0;
  double err_percent = 0.0;
  bool no_baseline = true;
};

ValidationReport run_validate(const std::filesystem::path& repaired_dir, const std::filesystem::path& references,
                              const PipelineConfig& config, backend::CaptionBackend* backend = nullptr);

// Report rendering. JSON output is deterministic for identical runs.
std::string to_json(const CorpusAudit& run);
std::string to_json(const RepairRun& run);
std::string to_json(const ValidationReport& report);
std::string to_text(const CorpusAudit& run);
std::string to_text(const RepairRun& run);
std::string to_text(const ValidationReport& report);

// Reads a repair report written by run_repair.
RepairRun read_repair_report(const std::filesystem::path& file);

}  // namespace altgen::pipeline
