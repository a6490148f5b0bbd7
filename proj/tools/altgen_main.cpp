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

// altgen: audit and repair EPUB accessibility (alt text and metadata).
//
//   altgen audit <paths...>
//   altgen repair <paths...> -o <dir>
//   altgen validate <dir> --references <file>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "altgen/pipeline.hpp"

namespace fs = std::filesystem;
using altgen::pipeline::PipelineConfig;
using altgen::pipeline::ReportFormat;

namespace {

struct CommonFlags {
  std::string backend;
  unsigned jobs = 0;
  std::string report;
  bool strict = false;
  fs::path config_file;
  int max_alt_length = 0;
  int bleu_max_n = 0;
  bool smoothing = false;

  CLI::Option* backend_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* report_opt = nullptr;
  CLI::Option* strict_opt = nullptr;
  CLI::Option* max_alt_opt = nullptr;
  CLI::Option* bleu_opt = nullptr;
  CLI::Option* smoothing_opt = nullptr;

  void attach(CLI::App* cmd) {
    backend_opt = cmd->add_option("--backend", backend, "caption backend: stub or an http(s) URL");
    jobs_opt = cmd->add_option("--jobs,-j", jobs, "files processed in parallel")->check(CLI::PositiveNumber);
    report_opt = cmd->add_option("--report", report, "report format")->check(CLI::IsMember({"json", "text"}));
    strict_opt = cmd->add_flag("--strict", strict, "fail a file when any image cannot be captioned");
    cmd->add_option("--config", config_file, "JSON file mirroring the pipeline configuration")
        ->check(CLI::ExistingFile);
    max_alt_opt = cmd->add_option("--max-alt-length", max_alt_length, "longest alt text, in characters");
    bleu_opt = cmd->add_option("--bleu-max-n", bleu_max_n, "highest BLEU n-gram order");
    smoothing_opt = cmd->add_flag("--smoothing", smoothing, "add-one smoothing for BLEU orders above 1");
  }

  // Defaults, then ALTGEN_BACKEND_URL, then the config file, then explicit flags.
  PipelineConfig resolve() const {
    PipelineConfig config;
    config.jobs = altgen::pipeline::default_jobs();
    if (const char* url = std::getenv("ALTGEN_BACKEND_URL"); url && *url) config.backend = url;
    if (!config_file.empty()) altgen::pipeline::apply_config_file(config, config_file);
    if (backend_opt->count()) config.backend = backend;
    if (jobs_opt->count()) config.jobs = jobs;
    if (report_opt->count()) config.report_format = report == "text" ? ReportFormat::Text : ReportFormat::Json;
    if (strict_opt->count()) config.strict = strict;
    if (max_alt_opt->count()) config.max_alt_length = max_alt_length;
    if (bleu_opt->count()) config.bleu_max_n = bleu_max_n;
    if (smoothing_opt->count()) config.smoothing = smoothing;
    altgen::pipeline::validate_config(config);
    return config;
  }
};

template <typename Run>
void print(const Run& run, const PipelineConfig& config) {
  std::cout << (config.report_format == ReportFormat::Text ? altgen::pipeline::to_text(run)
                                                           : altgen::pipeline::to_json(run));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPUB accessibility audit and alt-text repair"};
  app.require_subcommand(1);

  std::vector<fs::path> inputs;
  fs::path output_dir;
  fs::path references;

  CommonFlags audit_flags;
  CLI::App* audit = app.add_subcommand("audit", "report accessibility issues");
  audit->add_option("paths", inputs, "EPUB files or directories")->required();
  audit_flags.attach(audit);

  CommonFlags repair_flags;
  CLI::App* repair = app.add_subcommand("repair", "add alt text and metadata, write repaired copies");
  repair->add_option("paths", inputs, "EPUB files or directories")->required();
  repair->add_option("-o,--output", output_dir, "output directory");
  repair_flags.attach(repair);

  CommonFlags validate_flags;
  CLI::App* validate = app.add_subcommand("validate", "score repaired alt text against references");
  validate->add_option("dir", output_dir, "directory written by repair")->required()->check(CLI::ExistingDirectory);
  validate->add_option("--references", references, "JSON reference alt texts")->required()->check(CLI::ExistingFile);
  validate_flags.attach(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version requests exit 0; usage errors are operational failures
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (audit->parsed()) {
      const PipelineConfig config = audit_flags.resolve();
      const auto run = altgen::pipeline::run_audit(inputs, config);
      print(run, config);
      for (const auto& f : run.files) {
        if (!f.report) std::cerr << "altgen: " << f.input_path << ": " << f.failure << '\n';
      }
      return run.exit_code;
    }
    if (repair->parsed()) {
      PipelineConfig config = repair_flags.resolve();
      if (!output_dir.empty()) config.output_dir = output_dir;
      if (config.output_dir.empty()) {
        std::cerr << "altgen: repair needs an output directory (-o)\n";
        return 2;
      }
      const auto run = altgen::pipeline::run_repair(inputs, config);
      print(run, config);
      for (const auto& f : run.files) {
        if (f.status == altgen::pipeline::FileStatus::Failed) {
          std::cerr << "altgen: " << f.input_path << ": " << f.failure_reason << '\n';
        }
      }
      return run.exit_code;
    }
    const PipelineConfig config = validate_flags.resolve();
    const auto report = altgen::pipeline::run_validate(output_dir, references, config);
    print(report, config);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "altgen: " << e.what() << '\n';
    return 2;
  }
}
