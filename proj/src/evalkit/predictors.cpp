#include "chordlm/evalkit/predictors.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "chordlm/common/error.h"

namespace chordlm::evalkit {

CorpusProfile make_corpus_profile(const encoder::Vocabulary& vocabulary, std::span<const std::int64_t> counts,
                                  double rare_share) {
  require_invariant(counts.size() == static_cast<std::size_t>(vocabulary.size()),
                    "corpus profile: count vector does not match the vocabulary");
  CorpusProfile profile;
  profile.improbable.assign(counts.size(), 0);
  profile.monophonic.assign(counts.size(), 0);
  std::vector<int> observed;
  for (int id = 0; id < vocabulary.size(); ++id) {
    profile.monophonic[static_cast<std::size_t>(id)] = vocabulary.decode(id).s.empty();
    if (counts[static_cast<std::size_t>(id)] > 0) observed.push_back(id);
  }
  std::stable_sort(observed.begin(), observed.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a)] < counts[static_cast<std::size_t>(b)];
  });
  // Guard against 0.1 * n landing a hair above an integer.
  const double raw = rare_share * static_cast<double>(observed.size());
  const auto rare = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  profile.rare_type_count = static_cast<int>(std::min(rare, observed.size()));
  for (int i = 0; i < profile.rare_type_count; ++i) profile.improbable[static_cast<std::size_t>(observed[i])] = 1;
  return profile;
}

Predictors compute_predictors(std::span<const int> tokens, const CorpusProfile& profile) {
  if (tokens.empty()) throw InputError("predictors of an empty sequence");
  Predictors p;
  p.n_tokens = static_cast<std::int64_t>(tokens.size());
  std::set<int> types;
  std::int64_t improbable = 0, monophonic = 0, repeats = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto id = static_cast<std::size_t>(tokens[i]);
    if (id >= profile.improbable.size()) throw InputError("token outside the corpus vocabulary");
    types.insert(tokens[i]);
    improbable += profile.improbable[id];
    monophonic += profile.monophonic[id];
    if (i > 0 && tokens[i] == tokens[i - 1]) ++repeats;
  }
  const double n = static_cast<double>(tokens.size());
  p.n_types = static_cast<std::int64_t>(types.size());
  p.improbable = static_cast<double>(improbable) / n;
  p.monophonic = static_cast<double>(monophonic) / n;
  p.repetition = tokens.size() > 1 ? static_cast<double>(repeats) / (n - 1) : 0.0;
  return p;
}

}  // namespace chordlm::evalkit
