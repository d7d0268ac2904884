#include "chordlm/cli/config.h"

#include <cstdlib>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::cli {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

long long config_int(std::string_view key, std::string_view value) {
  try {
    return text::parse_int(value, key);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

double config_double(std::string_view key, std::string_view value) {
  try {
    return text::parse_double(value, key);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

bool config_bool(std::string_view key, std::string_view value) {
  const std::string v = lower(value);
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(std::string(key) + ": expected on/off, got '" + std::string(value) + "'");
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = lower(text::trim(raw_key));
  const std::string_view value = text::trim(raw_value);
  if (key == "corpus") {
    const auto colon = value.find(':');
    if (colon == std::string_view::npos) throw ConfigError("corpus: expected '<dataset>: <path>'");
    CorpusInput input{std::string(text::trim(value.substr(0, colon))),
                      std::string(text::trim(value.substr(colon + 1)))};
    if (input.dataset.empty() || input.path.empty()) throw ConfigError("corpus: empty dataset or path");
    config.corpora.push_back(std::move(input));
  } else if (key == "percussion") {
    config.include_percussion = config_bool(key, value);
  } else if (key == "profile") {
    if (value.empty()) throw ConfigError("profile: empty value");
    config.profile = std::string(value);
  } else if (key == "overflow") {
    const std::string v = lower(value);
    if (v == "smallest") {
      config.encoding.encoder.overflow = encoder::OverflowPolicy::kSmallest;
    } else if (v == "most-frequent") {
      config.encoding.encoder.overflow = encoder::OverflowPolicy::kMostFrequent;
    } else {
      throw ConfigError("overflow: expected smallest or most-frequent");
    }
  } else if (key == "weighting") {
    const std::string v = lower(value);
    if (v == "duration") {
      config.encoding.window.weighting = keyscape::Weighting::kDuration;
    } else if (v == "count") {
      config.encoding.window.weighting = keyscape::Weighting::kCount;
    } else {
      throw ConfigError("weighting: expected duration or count");
    }
  } else if (key == "window") {
    const long long w = config_int(key, value);
    if (w <= 0) throw ConfigError("window: must be positive");
    config.encoding.window.width = Rational(w);
  } else if (key == "models") {
    std::vector<std::string> models;
    for (const auto& item : text::split(value, ',')) {
      const std::string spec = lower(text::trim(item));
      if (spec.empty()) continue;
      ppm::parse_model_spec(spec);
      models.push_back(spec);
    }
    if (models.empty()) throw ConfigError("models: no model given");
    config.models = std::move(models);
  } else if (key == "smoothing") {
    const std::string v = lower(value);
    if (v == "interpolated") {
      config.model_defaults.smoothing = ppm::Smoothing::kInterpolated;
    } else if (v == "backoff") {
      config.model_defaults.smoothing = ppm::Smoothing::kBackoff;
    } else {
      throw ConfigError("smoothing: expected interpolated or backoff");
    }
  } else if (key == "escape") {
    if (lower(value) != "c") throw ConfigError("escape: only method C is supported");
  } else if (key == "bias") {
    config.model_defaults.bias = config_double(key, value);
    if (config.model_defaults.bias < 0) throw ConfigError("bias: must be non-negative");
  } else if (key == "update_exclusion") {
    config.model_defaults.update_exclusion = config_bool(key, value);
  } else if (key == "max_depth") {
    const long long d = config_int(key, value);
    if (d < 0) throw ConfigError("max_depth: must be >= 0");
    config.max_depth = static_cast<int>(d);
  } else if (key == "folds") {
    const long long k = config_int(key, value);
    if (k < 2) throw ConfigError("folds: need at least 2");
    config.folds = static_cast<int>(k);
  } else if (key == "seed") {
    const long long s = config_int(key, value);
    if (s < 0) throw ConfigError("seed: must be non-negative");
    config.seed = static_cast<std::uint64_t>(s);
  } else if (key == "replicates") {
    const long long b = config_int(key, value);
    if (b < 2) throw ConfigError("replicates: need at least 2");
    config.replicates = static_cast<int>(b);
  } else if (key == "level") {
    config.level = config_double(key, value);
    if (!(config.level > 0 && config.level < 1)) throw ConfigError("level: must be in (0, 1)");
  } else if (key == "rare_share") {
    config.rare_share = config_double(key, value);
    if (!(config.rare_share > 0 && config.rare_share <= 1)) throw ConfigError("rare_share: must be in (0, 1]");
  } else if (key == "stepwise") {
    const std::string v = lower(value);
    if (v == "pvalue") {
      config.regression.criterion = evalkit::StepwiseCriterion::kPValue;
    } else if (v == "aic") {
      config.regression.criterion = evalkit::StepwiseCriterion::kAic;
    } else {
      throw ConfigError("stepwise: expected pvalue or aic");
    }
  } else if (key == "p_enter") {
    config.regression.p_enter = config_double(key, value);
  } else if (key == "p_remove") {
    config.regression.p_remove = config_double(key, value);
  } else if (key == "traces") {
    config.traces = config_bool(key, value);
  } else if (key == "threads") {
    const long long t = config_int(key, value);
    if (t < 0) throw ConfigError("threads: must be >= 0");
    config.threads = static_cast<int>(t);
  } else if (key == "output") {
    config.output_dir = std::string(value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
  if ((key == "p_enter" || key == "p_remove") &&
      !(config.regression.p_enter > 0 && config.regression.p_remove < 1)) {
    throw ConfigError(key + ": must be in (0, 1)");
  }
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::string_view content) {
  ExperimentConfig config;
  int line_no = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    try {
      apply_override(config, line);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(content);
}

std::vector<std::string> describe(const ExperimentConfig& config) {
  std::vector<std::string> lines;
  for (const auto& c : config.corpora) lines.push_back("corpus: " + c.dataset + ": " + c.path);
  lines.push_back(std::string("percussion: ") + (config.include_percussion ? "on" : "off"));
  lines.push_back("profile: " + config.profile);
  lines.push_back("window: " + chordlm::to_string(config.encoding.window.width) + " beats");
  lines.push_back(std::string("weighting: ") +
                  (config.encoding.window.weighting == keyscape::Weighting::kDuration ? "duration" : "count"));
  lines.push_back(std::string("overflow: ") +
                  (config.encoding.encoder.overflow == encoder::OverflowPolicy::kSmallest ? "smallest"
                                                                                          : "most-frequent"));
  lines.push_back("models: " + join(config.models, ", "));
  lines.push_back("escape: " + ppm::to_string(config.model_defaults.escape));
  lines.push_back("smoothing: " + ppm::to_string(config.model_defaults.smoothing));
  lines.push_back("bias: " + text::format_double(config.model_defaults.bias));
  lines.push_back(std::string("update_exclusion: ") + (config.model_defaults.update_exclusion ? "on" : "off"));
  lines.push_back("max_depth: " + (config.max_depth == 0 ? std::string("unbounded") : std::to_string(config.max_depth)));
  lines.push_back("folds: " + std::to_string(config.folds));
  lines.push_back("seed: " + std::to_string(config.seed));
  lines.push_back("replicates: " + std::to_string(config.replicates));
  lines.push_back("level: " + text::format_double(config.level));
  lines.push_back("rare_share: " + text::format_double(config.rare_share));
  lines.push_back("improbable: bottom ceil(rare_share * observed types) by corpus count, ties to lower id");
  lines.push_back("stepwise: " + evalkit::describe(config.regression));
  return lines;
}

std::string default_output_root() {
  if (const char* env = std::getenv("CHORDLM_OUTPUT_ROOT"); env != nullptr && *env != '\0') return env;
  return "chordlm-out";
}

}  // namespace chordlm::cli
