#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chordlm::evalkit {

// Mean negative log2 probability per token. Throws InputError for an empty
// list or any p outside (0, 1].
double cross_entropy(std::span<const double> probabilities);

// One row of a per-token probability trace.
struct TraceRow {
  std::string composition;
  std::int64_t index = 0;
  int token = 0;
  double p = 0;
};

// Trace CSV, shared by every model that feeds evaluation:
//   composition,index,token,p,neg_log2_p
std::string trace_csv_header();
std::string trace_csv_rows(const std::string& composition, std::span<const int> tokens,
                           std::span<const double> probabilities);
std::vector<TraceRow> read_trace_csv(std::string_view content);

struct CompositionEntropy {
  double h = 0;
  std::int64_t tokens = 0;
};

// H per composition from a trace; rows of a composition must have indices
// 0..n-1 (in any order).
std::map<std::string, CompositionEntropy> entropy_by_composition(std::span<const TraceRow> rows);

}  // namespace chordlm::evalkit
