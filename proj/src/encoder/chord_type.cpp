#include "chordlm/encoder/chord_type.h"

#include <algorithm>
#include <bit>
#include <set>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::encoder {

int Sonority::size() const {
  int n = 0;
  for (auto v : slots) n += v != kUndefined;
  return n;
}

Sonority reduce_classes(std::uint16_t class_mask, const std::array<int, 12>& weight,
                        const EncoderOptions& options) {
  class_mask &= 0x0FFF;
  if (class_mask != 1u) class_mask &= ~1u;  // octave doublings of the bass only survive alone

  std::vector<int> classes;
  for (int c = 0; c < 12; ++c) {
    if (class_mask & (1u << c)) classes.push_back(c);
  }
  if (classes.size() > 3) {
    if (options.overflow == OverflowPolicy::kMostFrequent) {
      std::stable_sort(classes.begin(), classes.end(), [&](int a, int b) { return weight[a] > weight[b]; });
    }
    classes.resize(3);
    std::sort(classes.begin(), classes.end());
  }
  Sonority s;
  for (std::size_t i = 0; i < classes.size(); ++i) s.slots[i] = static_cast<std::int8_t>(classes[i]);
  return s;
}

ChordType encode_slice(const ingest::Slice& slice, const keyscape::KeyEstimate& key,
                       const EncoderOptions& options) {
  require_invariant(!slice.pitches.empty(), "encode_slice: empty slice");
  const int bass = *std::min_element(slice.pitches.begin(), slice.pitches.end());
  std::uint16_t mask = 0;
  std::array<int, 12> weight{};
  bool seen_bass = false;
  for (int p : slice.pitches) {
    if (p == bass && !seen_bass) {
      seen_bass = true;
      continue;
    }
    const int c = (p - bass) % 12;
    mask |= static_cast<std::uint16_t>(1u << c);
    ++weight[c];
  }
  ChordType t;
  t.s = reduce_classes(mask, weight, options);
  t.degree = static_cast<std::int8_t>(((bass % 12) - key.tonic + 12) % 12);
  return t;
}

std::vector<Sonority> enumerate_s_domain(const EncoderOptions& options) {
  std::set<Sonority> domain;
  std::array<int, 12> weight{};
  for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
    for (int c = 0; c < 12; ++c) weight[c] = (mask >> c) & 1u;
    domain.insert(reduce_classes(static_cast<std::uint16_t>(mask), weight, options));
  }
  return {domain.begin(), domain.end()};
}

std::string to_string(const ChordType& type) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i) out += '.';
    out += type.s.slots[i] == kUndefined ? std::string("_") : std::to_string(type.s.slots[i]);
  }
  out += '/';
  out += std::to_string(type.degree);
  return out;
}

ChordType parse_chord_type(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw InputError("chord type without '/': " + std::string(text));
  auto slots = text::split(text.substr(0, slash), '.');
  if (slots.size() != 3) throw InputError("chord type needs three slots: " + std::string(text));
  ChordType t;
  for (int i = 0; i < 3; ++i) {
    if (slots[i] == "_") continue;
    auto v = text::parse_int(slots[i], "interval class");
    if (v < 0 || v > 11) throw InputError("interval class out of range: " + std::string(text));
    t.s.slots[i] = static_cast<std::int8_t>(v);
  }
  auto degree = text::parse_int(text.substr(slash + 1), "scale degree");
  if (degree < 0 || degree > 11) throw InputError("scale degree out of range: " + std::string(text));
  t.degree = static_cast<std::int8_t>(degree);

  // Canonical form: defined slots strictly increasing, empties trailing.
  bool ended = false;
  for (int i = 0; i < 3; ++i) {
    if (t.s.slots[i] == kUndefined) {
      ended = true;
    } else if (ended || (i > 0 && t.s.slots[i] <= t.s.slots[i - 1])) {
      throw InputError("chord type not in canonical form: " + std::string(text));
    }
  }
  if (t.s.slots[0] == 0 && t.s.slots[1] != kUndefined) {
    throw InputError("class 0 only appears alone: " + std::string(text));
  }
  return t;
}

}  // namespace chordlm::encoder
