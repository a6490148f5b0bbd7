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

// Builds trigram language profiles from plain-text corpora and emits a C++
// source embedding them.
//
//   altgen-profile-builder --corpus data/corpus --out build/profiles --embed embedded_profiles.cpp

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "altgen/trigram.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build trigram language profiles"};
  fs::path corpus_dir;
  fs::path out_dir;
  fs::path embed_file;
  app.add_option("--corpus", corpus_dir, "directory of <lang>.txt files")->required();
  app.add_option("--out", out_dir, "directory for <lang>.profile files");
  app.add_option("--embed", embed_file, "C++ source to generate");
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<fs::path> corpora;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") corpora.push_back(entry.path());
    }
    std::sort(corpora.begin(), corpora.end());
    if (corpora.empty()) throw std::runtime_error("no corpora in " + corpus_dir.string());

    std::vector<altgen::lang::LanguageProfile> profiles;
    for (const fs::path& p : corpora) {
      profiles.push_back(altgen::lang::build_profile(p.stem().string(), slurp(p)));
    }

    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      for (const auto& profile : profiles) {
        spit(out_dir / (profile.lang + ".profile"), altgen::lang::format_profile(profile));
      }
    }
    if (!embed_file.empty()) {
      std::string src = "// Generated by altgen-profile-builder. Do not edit.\n#include <cstddef>\n\n";
      src += "namespace altgen::lang::detail {\n\nstruct EmbeddedProfile {\n  const char* lang;\n  const char* data;\n};\n\n";
      src += "extern const EmbeddedProfile kEmbeddedProfiles[] = {\n";
      for (const auto& profile : profiles) {
        src += "    {\"" + profile.lang + "\", R\"altgen(" + altgen::lang::format_profile(profile) + ")altgen\"},\n";
      }
      src += "};\nextern const std::size_t kEmbeddedProfileCount = " + std::to_string(profiles.size()) + ";\n\n";
      src += "}  // namespace altgen::lang::detail\n";
      if (embed_file.has_parent_path()) fs::create_directories(embed_file.parent_path());
      spit(embed_file, src);
    }
  } catch (const std::exception& e) {
    std::cerr << "altgen-profile-builder: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
