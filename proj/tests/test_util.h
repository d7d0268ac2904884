#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "chordlm/common/text.h"
#include "chordlm/ingest/note_event.h"

namespace chordlm::testing {

inline std::string test_data(const std::string& name) { return std::string(CHORDLM_TEST_DATA_DIR) + "/" + name; }
inline std::string repo_data(const std::string& name) { return std::string(CHORDLM_DATA_DIR) + "/" + name; }

// "track onset duration pitch" lines, sorted, in the golden dump format.
inline std::vector<std::string> dump_notes(const std::vector<ingest::NoteEvent>& events) {
  std::vector<std::string> lines;
  for (const auto& e : events) {
    lines.push_back(std::to_string(e.track) + " " + to_string(e.onset) + " " + to_string(e.duration) + " " +
                    std::to_string(e.pitch));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  for (const auto& l : text::split(text::read_file(path), '\n')) {
    if (!l.empty()) lines.push_back(l);
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

// Minimal format-0 SMF writer: notes are (start tick, length in ticks, pitch)
// on channel 0, division 4 ticks per quarter.
inline std::vector<std::uint8_t> make_smf(const std::vector<std::tuple<int, int, int>>& notes) {
  std::vector<std::tuple<int, int, int>> events;  // tick, order (offs first), pitch
  for (const auto& [start, length, pitch] : notes) {
    events.emplace_back(start, 1, pitch);
    events.emplace_back(start + length, 0, pitch);
  }
  std::sort(events.begin(), events.end());
  std::vector<std::uint8_t> body;
  auto varlen = [&](int v) {
    std::vector<std::uint8_t> out{static_cast<std::uint8_t>(v & 0x7F)};
    for (v >>= 7; v > 0; v >>= 7) out.push_back(static_cast<std::uint8_t>((v & 0x7F) | 0x80));
    body.insert(body.end(), out.rbegin(), out.rend());
  };
  int last = 0;
  for (const auto& [tick, on, pitch] : events) {
    varlen(tick - last);
    last = tick;
    body.push_back(on ? 0x90 : 0x80);
    body.push_back(static_cast<std::uint8_t>(pitch));
    body.push_back(on ? 80 : 0);
  }
  varlen(0);
  body.insert(body.end(), {0xFF, 0x2F, 0x00});
  std::vector<std::uint8_t> out = {'M', 'T', 'h', 'd', 0, 0, 0, 6, 0, 0, 0, 1, 0, 4, 'M', 'T', 'r', 'k'};
  const auto n = static_cast<std::uint32_t>(body.size());
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(n >> shift));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

inline void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  text::write_file(path, std::string(bytes.begin(), bytes.end()));
}

}  // namespace chordlm::testing
