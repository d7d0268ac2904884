#include "chordlm/evalkit/folds.h"

#include <algorithm>
#include <random>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"
#include "chordlm/evalkit/random.h"

namespace chordlm::evalkit {

int FoldPlan::fold(const std::string& composition) const {
  auto it = fold_of.find(composition);
  if (it == fold_of.end()) throw InputError("composition '" + composition + "' has no fold assignment");
  return it->second;
}

std::vector<std::string> FoldPlan::members(int f) const {
  std::vector<std::string> out;
  for (const auto& [name, idx] : fold_of) {
    if (idx == f) out.push_back(name);
  }
  return out;
}

FoldPlan make_folds(const std::vector<CompositionRef>& compositions, int k, std::uint64_t seed,
                    std::vector<std::string>* warnings) {
  if (k < 2) throw ConfigError("need at least 2 folds");
  std::map<std::string, std::vector<std::string>> by_dataset;
  for (const CompositionRef& c : compositions) {
    if (c.dataset.empty()) throw InputError("composition '" + c.composition + "' has no dataset id");
    by_dataset[c.dataset].push_back(c.composition);
  }
  FoldPlan plan;
  plan.k = k;
  std::mt19937_64 rng(seed);
  int position = 0;
  for (auto& [dataset, names] : by_dataset) {
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
      throw InputError("duplicate composition id in dataset '" + dataset + "'");
    }
    for (std::size_t i = names.size(); i > 1; --i) {
      std::swap(names[i - 1], names[uniform_index(rng, i)]);
    }
    if (static_cast<int>(names.size()) < k && warnings) {
      warnings->push_back("dataset '" + dataset + "' has " + std::to_string(names.size()) +
                          " compositions, fewer than " + std::to_string(k) + " folds");
    }
    for (const std::string& name : names) {
      if (!plan.fold_of.emplace(name, position).second) {
        throw InputError("composition '" + name + "' appears in more than one dataset");
      }
      position = (position + 1) % k;
    }
  }
  return plan;
}

std::string write_folds(const FoldPlan& plan) {
  std::string out = "#chordlm-folds v1 k=" + std::to_string(plan.k) + "\n";
  for (const auto& [name, f] : plan.fold_of) out += name + "\t" + std::to_string(f) + "\n";
  return out;
}

FoldPlan read_folds(std::string_view content) {
  FoldPlan plan;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line_no == 1) {
      if (!text::starts_with(line, "#chordlm-folds v1 k=")) throw InputError("not a fold-plan file");
      plan.k = static_cast<int>(text::parse_int(line.substr(20), "k"));
      continue;
    }
    if (line.empty()) continue;
    auto f = text::split(line, '\t');
    if (f.size() != 2) throw InputError("fold line " + std::to_string(line_no) + ": expected 2 fields");
    int fold = static_cast<int>(text::parse_int(f[1], "fold"));
    if (fold < 0 || fold >= plan.k) throw InputError("fold line " + std::to_string(line_no) + ": fold out of range");
    plan.fold_of[f[0]] = fold;
  }
  return plan;
}

}  // namespace chordlm::evalkit
