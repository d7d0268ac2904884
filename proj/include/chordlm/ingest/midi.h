#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chordlm/ingest/note_event.h"

namespace chordlm::ingest {

struct MidiParseOptions {
  // MIDI channel 10 carries unpitched percussion and is skipped unless set.
  bool include_percussion = false;
};

struct MidiParseResult {
  int format = 0;
  int division = 0;  // ticks per quarter note
  std::vector<NoteEvent> events;
  // Human-readable notes about recoverable problems: unterminated notes that
  // were closed at end of track, dropped zero-length notes.
  std::vector<std::string> warnings;
  int unterminated_notes = 0;
  int zero_length_notes = 0;
};

// Parses an SMF (format 0 or 1) into note events. Note-on/note-off pairs are
// matched first-in-first-out per (channel, pitch). Events are returned sorted
// by (onset, pitch, track, duration). Throws MidiParseError on malformed data.
MidiParseResult parse_midi(std::span<const std::uint8_t> bytes,
                           const MidiParseOptions& options = {});

MidiParseResult parse_midi_file(const std::string& path,
                                const MidiParseOptions& options = {});

}  // namespace chordlm::ingest
