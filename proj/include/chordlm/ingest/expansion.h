#pragma once

#include <span>
#include <vector>

#include "chordlm/ingest/note_event.h"

namespace chordlm::ingest {

// Full expansion: one slice per distinct onset, holding every pitch whose
// sounding interval [onset, onset + duration) contains that time. Pitches are
// collapsed at the MIDI-number level. Empty input gives an empty result.
std::vector<Slice> full_expand(std::span<const NoteEvent> events);

}  // namespace chordlm::ingest
