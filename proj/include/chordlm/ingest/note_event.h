#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chordlm/common/rational.h"

namespace chordlm::ingest {

// One pitched event in score time (quarter notes).
struct NoteEvent {
  Rational onset;
  Rational duration;  // > 0
  int pitch = 0;      // MIDI number 0-127
  int track = 0;

  Rational offset() const { return onset + duration; }
  bool operator==(const NoteEvent&) const = default;
};

// Notes sounding together at one onset; `pitches` is sorted and unique.
struct Slice {
  Rational onset;
  std::vector<int> pitches;

  int bass() const { return pitches.front(); }
  bool operator==(const Slice&) const = default;
};

// A composition after full expansion. The note events are kept alongside the
// slices because key-finding windows integrate note durations.
struct SliceStream {
  std::string composition;
  std::string dataset;
  std::vector<NoteEvent> notes;
  std::vector<Slice> slices;

  bool operator==(const SliceStream&) const = default;
};

}  // namespace chordlm::ingest
