/*
Copyright 2026 The glottalkit Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef GLOTTALKIT_TOOLS_RUN_CONFIG_HPP_
#define GLOTTALKIT_TOOLS_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glottalkit/classifier.hpp"
#include "glottalkit/pipeline.hpp"
#include "glottalkit/synth.hpp"

namespace glottalkit::cli {

struct RunConfig {
  std::string subcommand;

  std::filesystem::path manifest;
  std::filesystem::path features;  // feature CSV, alternative to manifest
  std::filesystem::path out_dir;
  std::filesystem::path model;
  std::vector<std::filesystem::path> inputs;

  std::string feature = "mel80";
  std::string classifier = "svm";
  std::string variant;
  std::optional<std::size_t> layer;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  // synth
  std::string modality = "speech";
  std::string encoding = "pcm16";

  // Override targets; strings are converted in Finalize.
  std::string zff_polarity = "positive";
  double svm_gamma = 0.0;  // 0 selects the variance rule

  PipelineOptions pipeline;
  ClassifierConfig model_cfg;
  CorpusOptions corpus;
};

// Registers the subcommands and every override on app, all bound to cfg.
void Register(CLI::App& app, RunConfig& cfg);

// Converts string-valued choices and validates cross-field constraints.
// Throws glottalkit::Error(kInvalidArgument).
void Finalize(RunConfig& cfg);

}  // namespace glottalkit::cli

#endif  // GLOTTALKIT_TOOLS_RUN_CONFIG_HPP_
