#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chordlm/encoder/chord_type.h"

namespace chordlm::encoder {

// Dense ids for the chord types observed in a corpus. Ids follow ascending
// ChordType order, so they do not depend on the order compositions are seen.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Builds from chord-type sequences, counting every occurrence.
  static Vocabulary build(std::span<const std::vector<ChordType>> sequences);

  int size() const { return static_cast<int>(types_.size()); }
  bool contains(const ChordType& type) const { return index_.count(type) > 0; }

  // Throws InputError for an unknown type / id.
  int encode(const ChordType& type) const;
  const ChordType& decode(int id) const;

  std::int64_t count(int id) const { return counts_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<ChordType>& types() const { return types_; }

  std::vector<int> encode_all(std::span<const ChordType> sequence) const;

  // Sidecar text: "#chordlm-vocabulary v1" then "<id>\t<type>\t<count>" lines.
  std::string to_text() const;
  static Vocabulary from_text(std::string_view content);

  bool operator==(const Vocabulary& other) const {
    return types_ == other.types_ && counts_ == other.counts_;
  }

 private:
  std::vector<ChordType> types_;
  std::vector<std::int64_t> counts_;
  std::map<ChordType, int> index_;
};

}  // namespace chordlm::encoder
