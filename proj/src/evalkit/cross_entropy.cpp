#include "chordlm/evalkit/cross_entropy.h"

#include <algorithm>
#include <cmath>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::evalkit {

double cross_entropy(std::span<const double> probabilities) {
  if (probabilities.empty()) throw InputError("cross-entropy of an empty sequence");
  double sum = 0;
  for (double p : probabilities) {
    if (!(p > 0.0) || p > 1.0) throw InputError("probability outside (0, 1]: " + text::format_double(p));
    sum -= std::log2(p);
  }
  return sum / static_cast<double>(probabilities.size());
}

std::string trace_csv_header() { return "composition,index,token,p,neg_log2_p\n"; }

std::string trace_csv_rows(const std::string& composition, std::span<const int> tokens,
                           std::span<const double> probabilities) {
  require_invariant(tokens.size() == probabilities.size(), "trace: token/probability length mismatch");
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += composition + "," + std::to_string(i) + "," + std::to_string(tokens[i]) + "," +
           text::format_double(probabilities[i]) + "," + text::format_double(-std::log2(probabilities[i])) + "\n";
  }
  return out;
}

std::vector<TraceRow> read_trace_csv(std::string_view content) {
  std::vector<TraceRow> rows;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (text::starts_with(line, "composition,")) continue;
    auto f = text::split(line, ',');
    if (f.size() != 5) throw InputError("trace line " + std::to_string(line_no) + ": expected 5 fields");
    TraceRow r;
    r.composition = f[0];
    r.index = text::parse_int(f[1], "index");
    r.token = static_cast<int>(text::parse_int(f[2], "token"));
    r.p = text::parse_double(f[3], "p");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::map<std::string, CompositionEntropy> entropy_by_composition(std::span<const TraceRow> rows) {
  std::map<std::string, std::vector<const TraceRow*>> grouped;
  for (const TraceRow& r : rows) grouped[r.composition].push_back(&r);
  std::map<std::string, CompositionEntropy> out;
  for (auto& [name, list] : grouped) {
    std::sort(list.begin(), list.end(), [](const TraceRow* a, const TraceRow* b) { return a->index < b->index; });
    std::vector<double> ps;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i]->index != static_cast<std::int64_t>(i)) {
        throw InputError("trace for '" + name + "' has missing or duplicate indices");
      }
      ps.push_back(list[i]->p);
    }
    out[name] = {cross_entropy(ps), static_cast<std::int64_t>(ps.size())};
  }
  return out;
}

}  // namespace chordlm::evalkit
