#include "chordlm/ingest/interchange.h"

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::ingest {
namespace {

constexpr std::string_view kMagic = "#chordlm-slices v1";

void check_id(const std::string& id, const char* what) {
  if (id.empty() || id.find_first_of("\t\r\n") != std::string::npos) {
    throw InputError(std::string("invalid ") + what + " id '" + id + "'");
  }
}

Rational read_rational(const std::string& num, const std::string& den) {
  auto d = text::parse_int(den, "denominator");
  if (d <= 0) throw InputError("non-positive denominator " + den);
  return Rational(text::parse_int(num, "numerator"), d);
}

}  // namespace

std::string write_slice_stream(const SliceStream& stream) {
  check_id(stream.composition, "composition");
  check_id(stream.dataset, "dataset");
  std::string out(kMagic);
  out += '\n';
  out += "H\t" + stream.composition + "\t" + stream.dataset + "\n";
  for (const NoteEvent& n : stream.notes) {
    out += "N\t" + stream.composition + "\t" + std::to_string(n.onset.numerator()) + "\t" +
           std::to_string(n.onset.denominator()) + "\t" + std::to_string(n.duration.numerator()) + "\t" +
           std::to_string(n.duration.denominator()) + "\t" + std::to_string(n.pitch) + "\t" +
           std::to_string(n.track) + "\n";
  }
  for (const Slice& s : stream.slices) {
    out += "S\t" + stream.composition + "\t" + std::to_string(s.onset.numerator()) + "\t" +
           std::to_string(s.onset.denominator()) + "\t";
    for (std::size_t i = 0; i < s.pitches.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s.pitches[i]);
    }
    out += '\n';
  }
  return out;
}

SliceStream read_slice_stream(std::string_view content) {
  SliceStream stream;
  bool header = false;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != kMagic) throw InputError("not a slice-stream file (bad first line)");
      continue;
    }
    if (line.empty()) continue;
    auto f = text::split(line, '\t');
    const std::string where = "line " + std::to_string(line_no);
    if (f[0] == "H" && f.size() == 3) {
      stream.composition = f[1];
      stream.dataset = f[2];
      header = true;
      continue;
    }
    if (!header) throw InputError(where + ": record before header");
    if (f.size() < 2 || f[1] != stream.composition) throw InputError(where + ": composition id mismatch");
    if (f[0] == "N" && f.size() == 8) {
      NoteEvent n;
      n.onset = read_rational(f[2], f[3]);
      n.duration = read_rational(f[4], f[5]);
      n.pitch = static_cast<int>(text::parse_int(f[6], "pitch"));
      n.track = static_cast<int>(text::parse_int(f[7], "track"));
      if (n.duration <= 0) throw InputError(where + ": non-positive duration");
      stream.notes.push_back(n);
    } else if (f[0] == "S" && f.size() == 5) {
      Slice s;
      s.onset = read_rational(f[2], f[3]);
      for (const std::string& p : text::split(f[4], ',')) s.pitches.push_back(static_cast<int>(text::parse_int(p, "pitch")));
      if (s.pitches.empty()) throw InputError(where + ": empty slice");
      for (std::size_t i = 1; i < s.pitches.size(); ++i) {
        if (s.pitches[i] <= s.pitches[i - 1]) throw InputError(where + ": slice pitches not strictly sorted");
      }
      if (!stream.slices.empty() && !(stream.slices.back().onset < s.onset)) {
        throw InputError(where + ": slice onsets not strictly increasing");
      }
      stream.slices.push_back(std::move(s));
    } else {
      throw InputError(where + ": unrecognized record");
    }
  }
  if (!header) throw InputError("slice-stream file has no header record");
  return stream;
}

void save_slice_stream(const std::string& path, const SliceStream& stream) {
  text::write_file(path, write_slice_stream(stream));
}

SliceStream load_slice_stream(const std::string& path) {
  try {
    return read_slice_stream(text::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace chordlm::ingest
