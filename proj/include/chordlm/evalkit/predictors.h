#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chordlm/encoder/vocabulary.h"

namespace chordlm::evalkit {

struct Predictors {
  std::int64_t n_tokens = 0;
  std::int64_t n_types = 0;
  double improbable = 0;  // share of tokens whose type is in the rare decile
  double monophonic = 0;  // share of tokens with an empty S
  double repetition = 0;  // share of positions i > 1 repeating token i-1

  bool operator==(const Predictors&) const = default;
};

inline constexpr const char* kPredictorNames[5] = {"N_tokens", "N_types", "Improbable", "Monophonic", "Repetition"};

// Corpus-level facts the predictors are measured against, fixed once per
// experiment from the whole corpus.
struct CorpusProfile {
  std::vector<char> improbable;  // per token id
  std::vector<char> monophonic;  // per token id
  int rare_type_count = 0;
};

// The rare decile is the ceil(share * observed types) types with the lowest
// zeroth-order counts, ties going to the lower id. Types with count 0 are
// not observed and never rare.
CorpusProfile make_corpus_profile(const encoder::Vocabulary& vocabulary, std::span<const std::int64_t> counts,
                                  double rare_share = 0.10);
inline CorpusProfile make_corpus_profile(const encoder::Vocabulary& vocabulary, double rare_share = 0.10) {
  return make_corpus_profile(vocabulary, vocabulary.counts(), rare_share);
}

Predictors compute_predictors(std::span<const int> tokens, const CorpusProfile& profile);

}  // namespace chordlm::evalkit
