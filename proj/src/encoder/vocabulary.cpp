#include "chordlm/encoder/vocabulary.h"

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::encoder {

Vocabulary Vocabulary::build(std::span<const std::vector<ChordType>> sequences) {
  std::map<ChordType, std::int64_t> tally;
  for (const auto& seq : sequences) {
    for (const ChordType& t : seq) ++tally[t];
  }
  Vocabulary v;
  for (const auto& [type, n] : tally) {
    v.index_.emplace(type, static_cast<int>(v.types_.size()));
    v.types_.push_back(type);
    v.counts_.push_back(n);
  }
  return v;
}

int Vocabulary::encode(const ChordType& type) const {
  auto it = index_.find(type);
  if (it == index_.end()) throw InputError("chord type " + to_string(type) + " is not in the vocabulary");
  return it->second;
}

const ChordType& Vocabulary::decode(int id) const {
  if (id < 0 || id >= size()) throw InputError("token id " + std::to_string(id) + " outside the vocabulary");
  return types_[static_cast<std::size_t>(id)];
}

std::vector<int> Vocabulary::encode_all(std::span<const ChordType> sequence) const {
  std::vector<int> ids;
  ids.reserve(sequence.size());
  for (const ChordType& t : sequence) ids.push_back(encode(t));
  return ids;
}

std::string Vocabulary::to_text() const {
  std::string out = "#chordlm-vocabulary v1\n";
  for (int id = 0; id < size(); ++id) {
    out += std::to_string(id) + "\t" + to_string(types_[id]) + "\t" + std::to_string(counts_[id]) + "\n";
  }
  return out;
}

Vocabulary Vocabulary::from_text(std::string_view content) {
  Vocabulary v;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line_no == 1) {
      if (line != "#chordlm-vocabulary v1") throw InputError("not a vocabulary file");
      continue;
    }
    if (line.empty()) continue;
    auto f = text::split(line, '\t');
    if (f.size() != 3) throw InputError("vocabulary line " + std::to_string(line_no) + ": expected 3 fields");
    if (text::parse_int(f[0], "id") != v.size()) {
      throw InputError("vocabulary line " + std::to_string(line_no) + ": ids must be contiguous from 0");
    }
    ChordType t = parse_chord_type(f[1]);
    if (!v.types_.empty() && !(v.types_.back() < t)) {
      throw InputError("vocabulary line " + std::to_string(line_no) + ": types out of order");
    }
    v.index_.emplace(t, v.size());
    v.types_.push_back(t);
    v.counts_.push_back(text::parse_int(f[2], "count"));
  }
  return v;
}

}  // namespace chordlm::encoder
