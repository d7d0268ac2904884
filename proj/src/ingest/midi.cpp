#include "chordlm/ingest/midi.h"

#include <algorithm>
#include <deque>
#include <map>
#include <utility>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::ingest {
namespace {

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  bool done() const { return pos_ >= end_; }
  std::size_t pos() const { return pos_; }

  std::uint8_t peek() const {
    if (done()) throw MidiParseError(pos_, "unexpected end of track data");
    return bytes_[pos_];
  }
  std::uint8_t u8() {
    std::uint8_t b = peek();
    ++pos_;
    return b;
  }
  std::uint32_t varlen() {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      std::uint8_t b = u8();
      value = (value << 7) | (b & 0x7Fu);
      if (!(b & 0x80u)) return value;
    }
    throw MidiParseError(pos_, "variable-length quantity longer than 4 bytes");
  }
  void skip(std::size_t n) {
    if (n > end_ - pos_) throw MidiParseError(pos_, "length runs past end of track");
    pos_ += n;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
  std::size_t end_;
};

std::uint32_t read_be(std::span<const std::uint8_t> bytes, std::size_t pos, int width) {
  if (pos + width > bytes.size()) throw MidiParseError(pos, "truncated file");
  std::uint32_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 8) | bytes[pos + i];
  return v;
}

struct OpenNote {
  std::uint64_t tick;
};

void parse_track(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end,
                 int track_index, int division, const MidiParseOptions& options,
                 MidiParseResult& result) {
  ByteReader in(bytes, begin, end);
  std::map<std::pair<int, int>, std::deque<OpenNote>> open;
  std::uint64_t tick = 0;
  int status = -1;

  auto emit = [&](int channel, int pitch, std::uint64_t start, std::uint64_t stop) {
    if (channel == 9 && !options.include_percussion) return;
    if (stop == start) {
      ++result.zero_length_notes;
      result.warnings.push_back("track " + std::to_string(track_index) + ": dropped zero-length note " +
                                std::to_string(pitch) + " at tick " + std::to_string(start));
      return;
    }
    NoteEvent e;
    e.onset = Rational(static_cast<std::int64_t>(start), division);
    e.duration = Rational(static_cast<std::int64_t>(stop - start), division);
    e.pitch = pitch;
    e.track = track_index;
    result.events.push_back(e);
  };

  while (!in.done()) {
    tick += in.varlen();
    std::size_t event_pos = in.pos();
    std::uint8_t b = in.peek();
    if (b == 0xFF) {
      in.u8();
      std::uint8_t kind = in.u8();
      std::uint32_t len = in.varlen();
      in.skip(len);
      status = -1;
      if (kind == 0x2F) break;
      continue;
    }
    if (b == 0xF0 || b == 0xF7) {
      in.u8();
      in.skip(in.varlen());
      status = -1;
      continue;
    }
    if (b & 0x80) {
      if (b >= 0xF0) throw MidiParseError(event_pos, "system message inside track");
      status = in.u8();
    } else if (status < 0) {
      throw MidiParseError(event_pos, "data byte without running status");
    }
    int kind = status & 0xF0;
    int channel = status & 0x0F;
    int data1 = in.u8();
    int data2 = (kind == 0xC0 || kind == 0xD0) ? 0 : in.u8();
    if ((data1 | data2) & 0x80) throw MidiParseError(event_pos, "data byte has its high bit set");

    if (kind == 0x90 && data2 > 0) {
      open[{channel, data1}].push_back({tick});
    } else if (kind == 0x80 || kind == 0x90) {
      auto it = open.find({channel, data1});
      if (it != open.end() && !it->second.empty()) {
        std::uint64_t start = it->second.front().tick;
        it->second.pop_front();
        emit(channel, data1, start, tick);
      }
    }
  }

  for (auto& [key, queue] : open) {
    for (const OpenNote& note : queue) {
      if (!(key.first == 9 && !options.include_percussion)) {
        ++result.unterminated_notes;
        result.warnings.push_back("track " + std::to_string(track_index) + ": note " +
                                  std::to_string(key.second) + " at tick " + std::to_string(note.tick) +
                                  " has no note-off; closed at end of track");
      }
      emit(key.first, key.second, note.tick, tick);
    }
  }
}

}  // namespace

MidiParseResult parse_midi(std::span<const std::uint8_t> bytes, const MidiParseOptions& options) {
  MidiParseResult result;
  if (bytes.size() < 14 || read_be(bytes, 0, 4) != 0x4D546864u) {  // "MThd"
    throw MidiParseError(0, "missing MThd header");
  }
  std::uint32_t header_len = read_be(bytes, 4, 4);
  if (header_len < 6) throw MidiParseError(4, "MThd length below 6");
  result.format = static_cast<int>(read_be(bytes, 8, 2));
  std::uint32_t ntracks = read_be(bytes, 10, 2);
  std::uint32_t division = read_be(bytes, 12, 2);
  if (result.format > 1) throw MidiParseError(8, "unsupported SMF format " + std::to_string(result.format));
  if (division & 0x8000u) throw MidiParseError(12, "SMPTE time division has no quarter-note unit");
  if (division == 0) throw MidiParseError(12, "zero ticks per quarter note");
  result.division = static_cast<int>(division);

  std::size_t pos = 8 + static_cast<std::size_t>(header_len);
  if (pos > bytes.size()) throw MidiParseError(4, "MThd length runs past end of file");
  int track_index = 0;
  while (pos < bytes.size() && static_cast<std::uint32_t>(track_index) < ntracks) {
    if (pos + 8 > bytes.size()) throw MidiParseError(pos, "truncated chunk header");
    std::uint32_t id = read_be(bytes, pos, 4);
    std::uint64_t len = read_be(bytes, pos + 4, 4);
    std::size_t body = pos + 8;
    if (body + len > bytes.size()) throw MidiParseError(pos + 4, "chunk length runs past end of file");
    if (id == 0x4D54726Bu) {  // "MTrk"
      parse_track(bytes, body, body + static_cast<std::size_t>(len), track_index, result.division, options,
                  result);
      ++track_index;
    }
    pos = body + static_cast<std::size_t>(len);
  }
  if (static_cast<std::uint32_t>(track_index) < ntracks) {
    result.warnings.push_back("header declares " + std::to_string(ntracks) + " tracks, found " +
                              std::to_string(track_index));
  }

  std::sort(result.events.begin(), result.events.end(), [](const NoteEvent& a, const NoteEvent& b) {
    if (a.onset != b.onset) return a.onset < b.onset;
    if (a.pitch != b.pitch) return a.pitch < b.pitch;
    if (a.track != b.track) return a.track < b.track;
    return a.duration < b.duration;
  });
  return result;
}

MidiParseResult parse_midi_file(const std::string& path, const MidiParseOptions& options) {
  std::string content = text::read_file(path);
  std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(content.data()), content.size());
  return parse_midi(bytes, options);
}

}  // namespace chordlm::ingest
