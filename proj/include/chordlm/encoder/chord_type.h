#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chordlm/ingest/note_event.h"
#include "chordlm/keyscape/key_finder.h"

namespace chordlm::encoder {

inline constexpr int kUndefined = -1;  // an empty S slot

// Up to three interval classes above the bass in ascending order, empty slots
// (kUndefined) trailing. Class 0 appears only in the bass-doubling singleton.
struct Sonority {
  std::array<std::int8_t, 3> slots{kUndefined, kUndefined, kUndefined};

  int size() const;
  bool empty() const { return slots[0] == kUndefined; }
  auto operator<=>(const Sonority&) const = default;
};

// The (S, I) chord type: sonority plus the bass's chromatic scale degree
// relative to the local tonic.
struct ChordType {
  Sonority s;
  std::int8_t degree = 0;  // 0-11

  auto operator<=>(const ChordType&) const = default;
};

enum class OverflowPolicy {
  kSmallest,      // keep the three smallest interval classes
  kMostFrequent,  // keep the three classes carried by the most slice pitches
};

struct EncoderOptions {
  OverflowPolicy overflow = OverflowPolicy::kSmallest;
};

// Reduces the interval classes present above a bass (a 12-bit set; `weight`
// gives how many pitches carry each class) to a canonical Sonority.
Sonority reduce_classes(std::uint16_t class_mask, const std::array<int, 12>& weight,
                        const EncoderOptions& options = {});

ChordType encode_slice(const ingest::Slice& slice, const keyscape::KeyEstimate& key,
                       const EncoderOptions& options = {});

// Every Sonority the reduction can produce (233 under the default rules),
// ascending.
std::vector<Sonority> enumerate_s_domain(const EncoderOptions& options = {});

// Textual form: slots joined by '.', '_' for empty slots, then '/' and the
// degree, e.g. "4.7._/0" or "_._._/5".
std::string to_string(const ChordType& type);
ChordType parse_chord_type(std::string_view text);

}  // namespace chordlm::encoder
