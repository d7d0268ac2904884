#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chordlm/encoder/corpus.h"
#include "chordlm/evalkit/regression.h"
#include "chordlm/ppm/model.h"

namespace chordlm::cli {

struct CorpusInput {
  std::string dataset;
  std::string path;  // MIDI file or directory
};

struct ExperimentConfig {
  std::vector<CorpusInput> corpora;
  bool include_percussion = false;
  std::string profile = "albrecht-shanahan";
  encoder::StreamEncodingOptions encoding;
  std::vector<std::string> models = {"ltm+", "stm", "both+"};
  ppm::ModelConfig model_defaults;
  int max_depth = 0;  // 0: unbounded
  int folds = 4;
  std::uint64_t seed = 1;
  int replicates = 1000;
  double level = 0.95;
  double rare_share = 0.10;
  evalkit::RegressionOptions regression;
  bool traces = false;
  int threads = 0;  // 0: one per fold
  std::string output_dir;
};

// Declarative config text: "key = value" lines, '#' comments. Repeated
// "corpus = <dataset>: <path>" lines add inputs. Unknown keys and bad values
// throw ConfigError.
ExperimentConfig parse_config(std::string_view content);
ExperimentConfig load_config(const std::string& path);

// Applies one "key=value" (or "key = value") override.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
void apply_override(ExperimentConfig& config, std::string_view assignment);

// Resolved settings as "key: value" lines for report headers.
std::vector<std::string> describe(const ExperimentConfig& config);

// Default output root: $CHORDLM_OUTPUT_ROOT when set, else "chordlm-out".
std::string default_output_root();

}  // namespace chordlm::cli
