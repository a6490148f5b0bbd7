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

#include "altgen/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "altgen/bcp47.hpp"
#include "altgen/content_docs.hpp"
#include "altgen/lang_detect.hpp"
#include "altgen/ocf_container.hpp"
#include "altgen/package_doc.hpp"
#include "altgen/paths.hpp"
#include "altgen/reconstruct.hpp"
#include "altgen/text.hpp"

namespace altgen::pipeline {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string_view to_string(PipelineErrc code) {
  switch (code) {
    case PipelineErrc::InvalidConfig:
      return "InvalidConfig";
    case PipelineErrc::InvalidReferences:
      return "InvalidReferences";
    case PipelineErrc::MissingReport:
      return "MissingReport";
  }
  return "PipelineError";
}

std::string_view to_string(FileStatus status) {
  switch (status) {
    case FileStatus::Repaired:
      return "Repaired";
    case FileStatus::CleanSkipped:
      return "CleanSkipped";
    case FileStatus::Failed:
      return "Failed";
  }
  return "Failed";
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void validate_config(const PipelineConfig& config) {
  if (config.jobs < 1) throw PipelineError(PipelineErrc::InvalidConfig, "jobs must be at least 1");
  if (config.max_alt_length < backend::kMinMaxLength || config.max_alt_length > backend::kMaxMaxLength) {
    throw PipelineError(PipelineErrc::InvalidConfig, "max_alt_length must be within [20, 1000]");
  }
  if (config.bleu_max_n < 1) throw PipelineError(PipelineErrc::InvalidConfig, "bleu_max_n must be at least 1");
  const std::string_view b = config.backend;
  if (b != "stub" && b.substr(0, 7) != "http://" && b.substr(0, 8) != "https://") {
    throw PipelineError(PipelineErrc::InvalidConfig, "backend must be 'stub' or an http(s) URL");
  }
  if ((b.substr(0, 7) == "http://" && b.size() == 7) || (b.substr(0, 8) == "https://" && b.size() == 8)) {
    throw PipelineError(PipelineErrc::InvalidConfig, "remote backend needs a host");
  }
}

void apply_config_file(PipelineConfig& config, const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw PipelineError(PipelineErrc::InvalidConfig, "cannot read " + file.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw PipelineError(PipelineErrc::InvalidConfig, file.string() + " is not a JSON object");
  }
  const auto bad = [&](const std::string& key, std::string_view expected) {
    return PipelineError(PipelineErrc::InvalidConfig, "'" + key + "' must be " + std::string(expected));
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "backend") {
      if (!value.is_string()) throw bad(key, "a string");
      config.backend = value.get<std::string>();
    } else if (key == "jobs") {
      if (!value.is_number_integer() || value.get<long long>() < 1) throw bad(key, "a positive integer");
      config.jobs = value.get<unsigned>();
    } else if (key == "max_alt_length") {
      if (!value.is_number_integer()) throw bad(key, "an integer");
      config.max_alt_length = value.get<int>();
    } else if (key == "bleu_max_n") {
      if (!value.is_number_integer()) throw bad(key, "an integer");
      config.bleu_max_n = value.get<int>();
    } else if (key == "smoothing") {
      if (!value.is_boolean()) throw bad(key, "a boolean");
      config.smoothing = value.get<bool>();
    } else if (key == "strict") {
      if (!value.is_boolean()) throw bad(key, "a boolean");
      config.strict = value.get<bool>();
    } else if (key == "output_dir") {
      if (!value.is_string()) throw bad(key, "a string");
      config.output_dir = value.get<std::string>();
    } else if (key == "report_format") {
      if (value == "json") {
        config.report_format = ReportFormat::Json;
      } else if (value == "text") {
        config.report_format = ReportFormat::Text;
      } else {
        throw bad(key, "\"json\" or \"text\"");
      }
    } else {
      throw PipelineError(PipelineErrc::InvalidConfig, "unknown key '" + key + "'");
    }
  }
}

InputSet collect_inputs(const std::vector<fs::path>& paths) {
  InputSet set;
  for (const fs::path& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && paths::extension(entry.path().filename().string()) == "epub") {
          set.files.push_back(entry.path());
        }
      }
    } else if (fs::is_regular_file(p, ec)) {
      set.files.push_back(p);
    } else {
      set.missing.push_back(p);
    }
  }
  std::sort(set.files.begin(), set.files.end());
  set.files.erase(std::unique(set.files.begin(), set.files.end()), set.files.end());
  return set;
}

bool is_inadequate_alt(std::string_view alt, std::string_view image_path) {
  const std::string trimmed = text::normalize_whitespace(alt);
  if (text::codepoint_count(trimmed) < kMinAdequateAlt) return true;
  return text::to_lower(trimmed) == text::to_lower(paths::filename(image_path));
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool fixed_clock() {
  const char* epoch = std::getenv("ALTGEN_EPOCH");
  return epoch && *epoch;
}

// Runs fn(i) for i in [0, n) on `jobs` threads pulling from a shared counter.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::optional<std::string> valid_language(const opf::PackageDocument& pkg) {
  for (const std::string& lang : pkg.values(opf::MetaKind::DcLanguage)) {
    if (bcp47::is_well_formed(lang)) return lang;
  }
  return std::nullopt;
}

std::string media_type_of(const opf::PackageDocument& pkg, const std::string& path) {
  if (const opf::ManifestItem* item = pkg.item_by_href(path)) {
    if (backend::is_supported_media_type(item->media_type)) return item->media_type;
  }
  return backend::media_type_for_path(path).value_or("");
}

struct Prepared {
  ocf::EpubArchive archive;
  opf::PackageDocument pkg;
};

Prepared open_file(const std::string& bytes) {
  Prepared p;
  p.archive = ocf::open_epub(bytes);
  p.pkg = opf::load_package(p.archive);
  return p;
}

// Stage 2: alt text for every non-decorative image lacking an adequate one.
void repair_images(Prepared& p, const PipelineConfig& config, backend::CaptionBackend& backend, FileResult& result,
                   std::vector<ocf::ArchiveEntry>& modified) {
  const std::optional<std::string> language = valid_language(p.pkg);
  for (const opf::ManifestItem& item : p.pkg.manifest) {
    if (!opf::is_content_document(item)) continue;
    const ocf::ArchiveEntry* original = p.archive.find(item.href);
    if (!original) continue;
    std::vector<content::ImageOccurrence> images;
    try {
      images = content::find_images(*original, item.href);
    } catch (const content::ContentError&) {
      continue;
    }
    std::vector<const content::ImageOccurrence*> targets;
    for (const content::ImageOccurrence& img : images) {
      if (img.decorative) continue;
      if (img.existing_alt && text::normalize_whitespace(*img.existing_alt).empty()) continue;
      if (img.existing_alt && !is_inadequate_alt(*img.existing_alt, img.src.empty() ? img.raw_src : img.src)) continue;
      targets.push_back(&img);
    }
    if (targets.empty()) continue;
    // A document that is not well-formed XML would fail the integrity check
    // once rewritten.
    if (!content::is_well_formed(original->data)) {
      result.alts_skipped += targets.size();
      continue;
    }
    ocf::ArchiveEntry doc = *original;
    for (const content::ImageOccurrence* img : targets) {
      const ocf::ArchiveEntry* image = img->external || img->src.empty() ? nullptr : p.archive.find(img->src);
      const std::string media_type = image ? media_type_of(p.pkg, img->src) : std::string();
      if (!image || media_type.empty()) {
        ++result.alts_skipped;
        continue;
      }
      backend::CaptionRequest request;
      request.image_bytes = image->data;
      request.media_type = media_type;
      request.context = content::extract_context(doc, *img, p.pkg);
      request.max_length = config.max_alt_length;
      request.language = language;
      request.source_path = img->src;
      backend::AltCandidate candidate;
      try {
        candidate = backend.generate_alt(request);
      } catch (const backend::BackendError& e) {
        if (config.strict) throw;
        ++result.alts_skipped;
        continue;
      }
      doc = content::set_alt_text(doc, *img, candidate.alt_text);
      result.written.push_back({item.href, img->element_index, candidate.alt_text});
      ++result.alts_written;
    }
    if (doc.modified) modified.push_back(std::move(doc));
  }
}

FileResult repair_file(const fs::path& input, const fs::path& output, const PipelineConfig& config,
                       backend::CaptionBackend& backend) {
  const auto started = std::chrono::steady_clock::now();
  FileResult result;
  result.input_path = input.generic_string();
  result.output_path = output.generic_string();
  try {
    // Stage 1: parse and audit.
    const std::string bytes = read_file(input);
    Prepared p = open_file(bytes);
    result.pre_report = audit::audit(p.archive, p.pkg);
    if (result.pre_report->error_count == 0) {
      reconstruct::write_atomically(output, bytes);
      result.status = FileStatus::CleanSkipped;
      result.post_report = result.pre_report;
    } else {
      std::vector<ocf::ArchiveEntry> modified;
      repair_images(p, config, backend, result, modified);

      // Stage 3: metadata.
      lang::EnsembleConfig ensemble{lang::embedded_profiles(), {}};
      ensemble.remote = [&backend](std::string_view text) -> std::optional<lang::LanguageVote> {
        try {
          return backend.detect_language(text);
        } catch (const backend::BackendError&) {
          return std::nullopt;
        }
      };
      const enrich::LanguageDetector detector = [&ensemble](std::string_view text) {
        return lang::detect_language(text, ensemble);
      };
      enrich::EnrichOptions options;
      options.alt_text_repair = true;
      options.fallback_title = input.stem().string();
      auto [pkg, fixes] = enrich::enrich_metadata(p.pkg, p.archive, detector, options);
      result.fixes = std::move(fixes);

      // Stage 4: reconstruction.
      const std::string rebuilt = reconstruct::rebuild(p.archive, pkg, modified);
      reconstruct::write_atomically(output, rebuilt);

      // Stage 5: re-audit.
      const Prepared after = open_file(rebuilt);
      result.post_report = audit::audit(after.archive, after.pkg);
      result.status = FileStatus::Repaired;
    }
  } catch (const std::exception& e) {
    result.status = FileStatus::Failed;
    result.failure_reason = e.what();
    result.post_report.reset();
    result.written.clear();
    result.alts_written = 0;
  }
  if (!fixed_clock()) {
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  return result;
}

}  // namespace

CorpusAudit run_audit(const std::vector<fs::path>& paths, const PipelineConfig& config) {
  const InputSet inputs = collect_inputs(paths);
  CorpusAudit run;
  run.files.resize(inputs.files.size());
  parallel_for(inputs.files.size(), config.jobs, [&](std::size_t i) {
    AuditedFile& out = run.files[i];
    out.input_path = inputs.files[i].generic_string();
    try {
      const Prepared p = open_file(read_file(inputs.files[i]));
      out.report = audit::audit(p.archive, p.pkg);
    } catch (const std::exception& e) {
      out.failure = e.what();
    }
  });
  for (const fs::path& missing : inputs.missing) {
    run.files.push_back({missing.generic_string(), std::nullopt, "no such file or directory"});
  }
  std::sort(run.files.begin(), run.files.end(),
            [](const AuditedFile& a, const AuditedFile& b) { return a.input_path < b.input_path; });
  bool failed = false;
  for (const AuditedFile& f : run.files) {
    if (!f.report) {
      failed = true;
      continue;
    }
    run.error_count += f.report->error_count;
    run.warning_count += f.report->warning_count;
  }
  run.exit_code = failed ? 2 : (run.error_count > 0 ? 1 : 0);
  return run;
}

Aggregate aggregate_of(const std::vector<FileResult>& files) {
  Aggregate a;
  double seconds = 0.0;
  std::size_t timed = 0;
  for (const FileResult& f : files) {
    switch (f.status) {
      case FileStatus::Repaired:
        ++a.repaired;
        break;
      case FileStatus::CleanSkipped:
        ++a.clean_skipped;
        break;
      case FileStatus::Failed:
        ++a.failed;
        continue;
    }
    a.pre_errors += f.pre_report ? f.pre_report->error_count : 0;
    a.post_errors += f.post_report ? f.post_report->error_count : 0;
    seconds += f.elapsed_seconds;
    ++timed;
  }
  const metrics::ErrorReduction err = metrics::error_reduction_rate(a.pre_errors, a.post_errors);
  a.err_percent = err.percent;
  a.no_baseline = err.no_baseline;
  a.seconds_per_file = timed ? seconds / static_cast<double>(timed) : 0.0;
  return a;
}

RepairRun run_repair(const std::vector<fs::path>& paths, const PipelineConfig& config,
                     backend::CaptionBackend* backend) {
  validate_config(config);
  if (config.output_dir.empty()) throw PipelineError(PipelineErrc::InvalidConfig, "no output directory");
  std::unique_ptr<backend::CaptionBackend> owned;
  if (!backend) {
    owned = backend::make_backend(config.backend);
    backend = owned.get();
  }
  fs::create_directories(config.output_dir);

  const InputSet inputs = collect_inputs(paths);
  RepairRun run;
  run.files.resize(inputs.files.size());
  std::map<std::string, std::size_t> names;
  std::vector<bool> collides(inputs.files.size(), false);
  for (std::size_t i = 0; i < inputs.files.size(); ++i) {
    if (!names.emplace(inputs.files[i].filename().string(), i).second) collides[i] = true;
  }
  parallel_for(inputs.files.size(), config.jobs, [&](std::size_t i) {
    const fs::path output = config.output_dir / inputs.files[i].filename();
    if (collides[i]) {
      FileResult& r = run.files[i];
      r.input_path = inputs.files[i].generic_string();
      r.output_path = output.generic_string();
      r.failure_reason = "output name collides with another input";
      return;
    }
    run.files[i] = repair_file(inputs.files[i], output, config, *backend);
  });
  for (const fs::path& missing : inputs.missing) {
    FileResult r;
    r.input_path = missing.generic_string();
    r.failure_reason = "no such file or directory";
    run.files.push_back(std::move(r));
  }
  std::sort(run.files.begin(), run.files.end(),
            [](const FileResult& a, const FileResult& b) { return a.input_path < b.input_path; });
  run.aggregate = aggregate_of(run.files);
  run.exit_code = run.aggregate.failed ? 2 : (run.aggregate.post_errors > 0 ? 1 : 0);
  reconstruct::write_atomically(config.output_dir / kReportFileName, to_json(run));
  return run;
}

std::vector<Reference> load_references(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw PipelineError(PipelineErrc::InvalidReferences, "cannot read " + file.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    throw PipelineError(PipelineErrc::InvalidReferences, file.string() + " is not a JSON array");
  }
  std::vector<Reference> out;
  for (const json& r : j) {
    if (!r.is_object() || !r.contains("epub") || !r["epub"].is_string() || !r.contains("doc") ||
        !r["doc"].is_string() || !r.contains("index") || !r["index"].is_number_unsigned() ||
        !r.contains("alt") || !r["alt"].is_string()) {
      throw PipelineError(PipelineErrc::InvalidReferences,
                          "entries must look like {\"epub\": str, \"doc\": str, \"index\": int, \"alt\": str}");
    }
    out.push_back({r["epub"].get<std::string>(), r["doc"].get<std::string>(), r["index"].get<std::size_t>(),
                   r["alt"].get<std::string>()});
  }
  return out;
}

ValidationReport run_validate(const fs::path& repaired_dir, const fs::path& references_file,
                              const PipelineConfig& config, backend::CaptionBackend* backend) {
  validate_config(config);
  std::unique_ptr<backend::CaptionBackend> owned;
  if (!backend) {
    owned = backend::make_backend(config.backend);
    backend = owned.get();
  }
  const std::vector<Reference> references = load_references(references_file);

  ValidationReport report;
  report.references = references.size();

  // Alt text currently present at every referenced location.
  std::map<std::string, std::optional<Prepared>> opened;
  std::vector<metrics::CorpusPair> pairs;
  for (const Reference& ref : references) {
    auto it = opened.find(ref.epub);
    if (it == opened.end()) {
      std::optional<Prepared> p;
      try {
        p = open_file(read_file(repaired_dir / ref.epub));
      } catch (const std::exception&) {
      }
      it = opened.emplace(ref.epub, std::move(p)).first;
    }
    std::optional<std::string> alt;
    if (it->second) {
      if (const ocf::ArchiveEntry* doc = it->second->archive.find(ref.doc)) {
        try {
          const auto images = content::find_images(*doc, ref.doc);
          if (ref.index < images.size()) alt = images[ref.index].existing_alt;
        } catch (const content::ContentError&) {
        }
      }
    }
    if (!alt) {
      ++report.missing_references;
      continue;
    }
    pairs.push_back({*alt, ref.alt});
  }

  std::vector<double> timings;
  const fs::path report_path = repaired_dir / kReportFileName;
  if (fs::exists(report_path)) {
    const RepairRun stored = read_repair_report(report_path);
    const Aggregate a = aggregate_of(stored.files);
    report.pre_errors = a.pre_errors;
    report.post_errors = a.post_errors;
    report.err_percent = a.err_percent;
    report.no_baseline = a.no_baseline;
    for (const FileResult& f : stored.files) {
      if (f.status != FileStatus::Failed) timings.push_back(f.elapsed_seconds);
    }
  }

  const metrics::BleuOptions bleu{config.bleu_max_n, config.smoothing};
  const metrics::Embedder embedder = [backend](const std::vector<std::string>& texts) {
    return backend->embed_texts(texts);
  };
  if (!pairs.empty()) {
    report.metrics = metrics::corpus_metrics(pairs, embedder, timings, bleu);
  } else {
    report.metrics.n_files = timings.size();
    if (!timings.empty()) {
      double sum = 0.0;
      for (double t : timings) sum += t;
      report.metrics.seconds_per_file = sum / static_cast<double>(timings.size());
    }
  }
  report.metrics.err_percent = report.err_percent;
  report.metrics.no_baseline = report.no_baseline;
  return report;
}

// ---- reports ----

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json audit_json(const audit::AuditReport& r) {
  ordered_json issues = ordered_json::array();
  for (const audit::Issue& issue : r.issues) {
    ordered_json i;
    i["code"] = std::string(audit::to_string(issue.code));
    i["severity"] = std::string(audit::to_string(issue.severity));
    i["doc_path"] = issue.location.doc_path;
    i["element_index"] = issue.location.element_index ? ordered_json(*issue.location.element_index)
                                                      : ordered_json(nullptr);
    i["message"] = issue.message;
    issues.push_back(std::move(i));
  }
  ordered_json j;
  j["error_count"] = r.error_count;
  j["warning_count"] = r.warning_count;
  j["files_scanned"] = r.files_scanned;
  j["issues"] = std::move(issues);
  return j;
}

std::optional<audit::IssueCode> issue_code(std::string_view name) {
  for (int c = 0; c <= static_cast<int>(audit::IssueCode::UnparseableDocument); ++c) {
    const auto code = static_cast<audit::IssueCode>(c);
    if (audit::to_string(code) == name) return code;
  }
  return std::nullopt;
}

audit::AuditReport audit_from_json(const json& j) {
  std::vector<audit::Issue> issues;
  for (const json& i : j.at("issues")) {
    const auto code = issue_code(i.at("code").get<std::string>());
    if (!code) throw PipelineError(PipelineErrc::MissingReport, "unknown issue code in report");
    audit::Location where{i.at("doc_path").get<std::string>(), std::nullopt};
    if (!i.at("element_index").is_null()) where.element_index = i.at("element_index").get<std::size_t>();
    issues.push_back({*code, audit::severity_of(*code), std::move(where), i.at("message").get<std::string>()});
  }
  return audit::make_report(std::move(issues), j.at("files_scanned").get<std::size_t>());
}

ordered_json nullable(const std::optional<std::string>& s) { return s ? ordered_json(*s) : ordered_json(nullptr); }

std::string dump(const ordered_json& j) {
  return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string to_json(const CorpusAudit& run) {
  ordered_json files = ordered_json::array();
  for (const AuditedFile& f : run.files) {
    ordered_json j;
    j["input_path"] = f.input_path;
    j["report"] = f.report ? audit_json(*f.report) : ordered_json(nullptr);
    j["failure"] = f.report ? ordered_json(nullptr) : ordered_json(f.failure);
    files.push_back(std::move(j));
  }
  ordered_json root;
  root["files"] = std::move(files);
  root["aggregate"] = {{"error_count", run.error_count}, {"warning_count", run.warning_count}};
  return dump(root);
}

std::string to_json(const RepairRun& run) {
  ordered_json files = ordered_json::array();
  for (const FileResult& f : run.files) {
    ordered_json j;
    j["input_path"] = f.input_path;
    j["output_path"] = f.output_path;
    j["status"] = std::string(to_string(f.status));
    j["reason"] = f.status == FileStatus::Failed ? ordered_json(f.failure_reason) : ordered_json(nullptr);
    j["pre_report"] = f.pre_report ? audit_json(*f.pre_report) : ordered_json(nullptr);
    j["post_report"] = f.post_report ? audit_json(*f.post_report) : ordered_json(nullptr);
    ordered_json fixes = ordered_json::array();
    for (const enrich::AppliedFix& fix : f.fixes) {
      ordered_json x;
      x["field"] = fix.field;
      x["old"] = nullable(fix.old_value);
      x["new"] = nullable(fix.new_value);
      x["reason"] = std::string(enrich::to_string(fix.reason));
      x["level"] = std::string(enrich::to_string(fix.level));
      fixes.push_back(std::move(x));
    }
    j["fixes"] = std::move(fixes);
    ordered_json written = ordered_json::array();
    for (const WrittenAlt& w : f.written) {
      written.push_back(ordered_json{{"doc", w.doc}, {"index", w.index}, {"alt", w.alt}});
    }
    j["written"] = std::move(written);
    j["alts_written"] = f.alts_written;
    j["alts_skipped"] = f.alts_skipped;
    j["elapsed_seconds"] = f.elapsed_seconds;
    files.push_back(std::move(j));
  }
  ordered_json aggregate;
  aggregate["pre_errors"] = run.aggregate.pre_errors;
  aggregate["post_errors"] = run.aggregate.post_errors;
  aggregate["err_percent"] = run.aggregate.err_percent;
  aggregate["seconds_per_file"] = run.aggregate.seconds_per_file;
  aggregate["no_baseline"] = run.aggregate.no_baseline;
  aggregate["repaired"] = run.aggregate.repaired;
  aggregate["clean_skipped"] = run.aggregate.clean_skipped;
  aggregate["failed"] = run.aggregate.failed;
  ordered_json root;
  root["files"] = std::move(files);
  root["aggregate"] = std::move(aggregate);
  return dump(root);
}

std::string to_json(const ValidationReport& r) {
  ordered_json root;
  root["cosine"] = optional_number(r.metrics.cosine);
  root["bleu"] = optional_number(r.metrics.bleu);
  root["err_percent"] = r.err_percent;
  root["no_baseline"] = r.no_baseline;
  root["pre_errors"] = r.pre_errors;
  root["post_errors"] = r.post_errors;
  root["seconds_per_file"] = optional_number(r.metrics.seconds_per_file);
  root["n_files"] = r.metrics.n_files;
  root["n_pairs"] = r.metrics.n_pairs;
  root["references"] = r.references;
  root["missing_references"] = r.missing_references;
  root["cosine_excluded"] = r.metrics.cosine_excluded;
  root["bleu_excluded"] = r.metrics.bleu_excluded;
  return dump(root);
}

std::string to_text(const CorpusAudit& run) {
  std::ostringstream out;
  for (const AuditedFile& f : run.files) {
    if (!f.report) {
      out << f.input_path << ": FAILED " << f.failure << '\n';
      continue;
    }
    out << f.input_path << ": " << f.report->error_count << " errors, " << f.report->warning_count << " warnings\n";
    for (const audit::Issue& i : f.report->issues) {
      out << "  " << audit::to_string(i.severity) << ' ' << audit::to_string(i.code) << ' ' << i.location.doc_path;
      if (i.location.element_index) out << '#' << *i.location.element_index;
      out << ": " << i.message << '\n';
    }
  }
  out << "total: " << run.error_count << " errors, " << run.warning_count << " warnings\n";
  return out.str();
}

std::string to_text(const RepairRun& run) {
  std::ostringstream out;
  for (const FileResult& f : run.files) {
    out << f.input_path << ": " << to_string(f.status);
    if (f.status == FileStatus::Failed) {
      out << " (" << f.failure_reason << ")\n";
      continue;
    }
    out << ", errors " << (f.pre_report ? f.pre_report->error_count : 0) << " -> "
        << (f.post_report ? f.post_report->error_count : 0) << ", alts written " << f.alts_written
        << ", skipped " << f.alts_skipped << ", fixes " << f.fixes.size() << '\n';
  }
  const Aggregate& a = run.aggregate;
  out << "pre_errors " << a.pre_errors << ", post_errors " << a.post_errors << ", err_percent " << a.err_percent
      << ", seconds_per_file " << a.seconds_per_file << '\n';
  return out.str();
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream out;
  out << "cosine " << (r.metrics.cosine ? std::to_string(*r.metrics.cosine) : "n/a") << '\n';
  out << "bleu " << (r.metrics.bleu ? std::to_string(*r.metrics.bleu) : "n/a") << '\n';
  out << "err_percent " << r.err_percent << (r.no_baseline ? " (no baseline)" : "") << '\n';
  out << "seconds_per_file "
      << (r.metrics.seconds_per_file ? std::to_string(*r.metrics.seconds_per_file) : "n/a") << '\n';
  out << "pairs " << r.metrics.n_pairs << ", missing references " << r.missing_references << '\n';
  return out.str();
}

RepairRun read_repair_report(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw PipelineError(PipelineErrc::MissingReport, "cannot read " + file.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw PipelineError(PipelineErrc::MissingReport, file.string() + " is not a repair report");
  }
  RepairRun run;
  try {
    for (const json& f : j.at("files")) {
      FileResult r;
      r.input_path = f.at("input_path").get<std::string>();
      r.output_path = f.at("output_path").get<std::string>();
      const std::string status = f.at("status").get<std::string>();
      r.status = status == "Repaired"       ? FileStatus::Repaired
                 : status == "CleanSkipped" ? FileStatus::CleanSkipped
                                            : FileStatus::Failed;
      if (!f.at("reason").is_null()) r.failure_reason = f.at("reason").get<std::string>();
      if (!f.at("pre_report").is_null()) r.pre_report = audit_from_json(f.at("pre_report"));
      if (!f.at("post_report").is_null()) r.post_report = audit_from_json(f.at("post_report"));
      for (const json& x : f.at("fixes")) {
        enrich::AppliedFix fix;
        fix.field = x.at("field").get<std::string>();
        if (!x.at("old").is_null()) fix.old_value = x.at("old").get<std::string>();
        if (!x.at("new").is_null()) fix.new_value = x.at("new").get<std::string>();
        const std::string reason = x.at("reason").get<std::string>();
        fix.reason = reason == "Detected"  ? enrich::FixReason::Detected
                     : reason == "Skipped" ? enrich::FixReason::Skipped
                                           : enrich::FixReason::Default;
        fix.level = x.at("level").get<std::string>() == "Warning" ? enrich::FixLevel::Warning : enrich::FixLevel::Info;
        r.fixes.push_back(std::move(fix));
      }
      for (const json& w : f.at("written")) {
        r.written.push_back({w.at("doc").get<std::string>(), w.at("index").get<std::size_t>(),
                             w.at("alt").get<std::string>()});
      }
      r.alts_written = f.at("alts_written").get<std::size_t>();
      r.alts_skipped = f.at("alts_skipped").get<std::size_t>();
      r.elapsed_seconds = f.at("elapsed_seconds").get<double>();
      run.files.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw PipelineError(PipelineErrc::MissingReport, file.string() + ": " + e.what());
  }
  run.aggregate = aggregate_of(run.files);
  run.exit_code = run.aggregate.failed ? 2 : (run.aggregate.post_errors > 0 ? 1 : 0);
  return run;
}

}  // namespace altgen::pipeline
