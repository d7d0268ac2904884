#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chordlm/ppm/context_trie.h"

namespace chordlm::ppm {

// Probabilities indexed by token id; strictly positive, summing to 1.
using PredictionDistribution = std::vector<double>;

enum class ModelMode {
  kLtmPlus,  // trained on the training set, updated online through the test piece
  kLtm,      // trained on the training set, frozen
  kStm,      // empty at the start of each piece, updated online
  kBothPlus, // LTM+ and STM combined
  kBoth,     // LTM and STM combined
};

enum class EscapeMethod { kC };

enum class Smoothing {
  kInterpolated,  // blend every order down to the uniform order -1
  kBackoff,       // escape to lower orders only for unseen symbols (with exclusion)
};

struct ModelConfig {
  ModelMode mode = ModelMode::kLtmPlus;
  EscapeMethod escape = EscapeMethod::kC;
  Smoothing smoothing = Smoothing::kInterpolated;
  // nullopt: PPM* context selection. Otherwise the longest context order used.
  std::optional<int> order_bound;
  double bias = 2.0;  // entropy-weight exponent for combined models
  bool update_exclusion = false;

  bool uses_ltm() const { return mode != ModelMode::kStm; }
  bool uses_stm() const { return mode == ModelMode::kStm || mode == ModelMode::kBothPlus || mode == ModelMode::kBoth; }
  bool ltm_online() const { return mode == ModelMode::kLtmPlus || mode == ModelMode::kBothPlus; }
};

std::string to_string(ModelMode mode);
std::string to_string(EscapeMethod escape);
std::string to_string(Smoothing smoothing);

// Model names as written in configs and reports: "ltm+", "ltm", "stm",
// "both+", "both", optionally with "@<n>" for a fixed order bound. The result
// keeps the caller's bias / exclusion settings from `base`.
ModelConfig parse_model_spec(const std::string& spec, const ModelConfig& base = {});
std::string model_spec(const ModelConfig& config);

// Context-order statistics pooled over one or more tries (a frozen long-term
// trie plus its online increments are read together as a single model).
struct CountSource {
  const ContextTrie* trie;
  const ContextTrie::Cursor* cursor;
};

// Distribution of the next symbol given the cursors' histories.
PredictionDistribution predict(std::span<const CountSource> sources, int alphabet_size, const ModelConfig& config);

// Convenience form: distribution after `context` for a single trie.
PredictionDistribution predict(const ContextTrie& trie, std::span<const int> context, const ModelConfig& config);

// Order chosen to start blending for the given sources (-1 if nothing matches).
int start_order(std::span<const CountSource> sources, const ModelConfig& config);

double entropy_bits(std::span<const double> distribution);

// Weighted geometric mean of distributions, each weighted by (H / log2 V)^-b
// with normalized weights, then renormalized.
PredictionDistribution combine_geometric(std::span<const PredictionDistribution> distributions, double bias);
PredictionDistribution combine_geometric(const PredictionDistribution& p, const PredictionDistribution& q,
                                         double bias);

// Stateful predictor for one test piece. Holds a reference to the frozen base
// trie (which must outlive it) and private tries for the online counts.
class OnlineModel {
 public:
  OnlineModel(const ContextTrie& base, const ModelConfig& config);

  PredictionDistribution predict() const;

  // Adds `symbol` to the history, updating the online counts.
  void observe(int symbol);

 private:
  PredictionDistribution predict_ltm() const;
  PredictionDistribution predict_stm() const;

  const ContextTrie& base_;
  ModelConfig config_;
  ContextTrie::Cursor base_cursor_;
  ContextTrie ltm_delta_;
  ContextTrie::Cursor ltm_delta_cursor_;
  ContextTrie stm_;
  ContextTrie::Cursor stm_cursor_;
};

// p(e_i | e_1..e_{i-1}) for every token of `test`, predicting before updating.
std::vector<double> run_sequence(std::span<const int> test, const ModelConfig& config, const ContextTrie& base);

}  // namespace chordlm::ppm
