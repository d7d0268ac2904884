#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chordlm::evalkit {

struct CompositionRef {
  std::string composition;
  std::string dataset;
};

// Fold index (0..k-1) per composition.
struct FoldPlan {
  int k = 4;
  std::map<std::string, int> fold_of;

  int fold(const std::string& composition) const;
  std::vector<std::string> members(int fold) const;
};

// Dataset-stratified assignment: within each dataset (taken in id order) the
// compositions are shuffled with `seed` and dealt round-robin, the dealing
// position carrying over between datasets. Datasets smaller than k are still
// dealt round-robin; a warning is appended for each.
FoldPlan make_folds(const std::vector<CompositionRef>& compositions, int k, std::uint64_t seed,
                    std::vector<std::string>* warnings = nullptr);

// "#chordlm-folds v1" then "<composition>\t<fold>" lines, sorted by id.
std::string write_folds(const FoldPlan& plan);
FoldPlan read_folds(std::string_view content);

}  // namespace chordlm::evalkit
