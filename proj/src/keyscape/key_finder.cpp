#include "chordlm/keyscape/key_finder.h"

#include <algorithm>
#include <cmath>

#include "chordlm/common/text.h"

namespace chordlm::keyscape {

std::string to_string(Mode mode) { return mode == Mode::kMajor ? "major" : "minor"; }

PitchClassVector window_histogram(const ingest::SliceStream& stream, const Rational& center,
                                  const WindowOptions& options) {
  const Rational lo = center - options.width / 2;
  const Rational hi = center + options.width / 2;
  PitchClassVector hist{};
  for (const ingest::NoteEvent& n : stream.notes) {
    const Rational start = std::max(lo, n.onset);
    const Rational stop = std::min(hi, n.offset());
    if (!(start < stop)) continue;
    hist[n.pitch % 12] += options.weighting == Weighting::kDuration ? to_double(stop - start) : 1.0;
  }
  return hist;
}

PitchClassVector whole_piece_histogram(const ingest::SliceStream& stream, Weighting weighting) {
  PitchClassVector hist{};
  for (const ingest::NoteEvent& n : stream.notes) {
    hist[n.pitch % 12] += weighting == Weighting::kDuration ? to_double(n.duration) : 1.0;
  }
  return hist;
}

double pearson(const PitchClassVector& a, const PitchClassVector& b) {
  double ma = 0, mb = 0;
  for (int i = 0; i < 12; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= 12;
  mb /= 12;
  double sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < 12; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0 || sbb == 0) throw UndefinedCorrelation();
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::array<std::array<double, 12>, 2> key_scores(const PitchClassVector& histogram, const KeyProfile& profile) {
  std::array<std::array<double, 12>, 2> scores{};
  for (int m = 0; m < 2; ++m) {
    const PitchClassVector& weights = m == 0 ? profile.major : profile.minor;
    for (int tonic = 0; tonic < 12; ++tonic) {
      PitchClassVector rotated{};
      for (int pc = 0; pc < 12; ++pc) rotated[pc] = weights[(pc - tonic + 12) % 12];
      scores[m][tonic] = pearson(histogram, rotated);
    }
  }
  return scores;
}

std::optional<KeyEstimate> estimate_key(const PitchClassVector& histogram, const KeyProfile& profile) {
  if (std::all_of(histogram.begin(), histogram.end(), [&](double x) { return x == histogram[0]; })) {
    return std::nullopt;
  }
  const auto scores = key_scores(histogram, profile);
  KeyEstimate best{0, Mode::kMajor, scores[0][0]};
  for (int tonic = 0; tonic < 12; ++tonic) {
    for (int m = 0; m < 2; ++m) {
      if (scores[m][tonic] > best.score) best = {tonic, m == 0 ? Mode::kMajor : Mode::kMinor, scores[m][tonic]};
    }
  }
  return best;
}

std::optional<KeyEstimate> estimate_key(const ingest::SliceStream& stream, const Rational& center,
                                        const KeyProfile& profile, const WindowOptions& options) {
  return estimate_key(window_histogram(stream, center, options), profile);
}

std::vector<KeyTraceEntry> estimate_keys(const ingest::SliceStream& stream, const KeyProfile& profile,
                                         const WindowOptions& options) {
  std::vector<KeyTraceEntry> trace;
  trace.reserve(stream.slices.size());
  for (const ingest::Slice& slice : stream.slices) {
    KeyTraceEntry entry;
    entry.onset = slice.onset;
    if (auto key = estimate_key(stream, slice.onset, profile, options)) {
      entry.key = *key;
    } else if (!trace.empty()) {
      entry.key = trace.back().key;
      entry.source = KeySource::kPrevious;
    } else if (auto whole = estimate_key(whole_piece_histogram(stream, options.weighting), profile)) {
      entry.key = *whole;
      entry.source = KeySource::kWholePiece;
    } else {
      entry.key = KeyEstimate{0, Mode::kMajor, 0.0};
      entry.source = KeySource::kDefault;
    }
    trace.push_back(entry);
  }
  return trace;
}

std::string key_trace_csv(const std::vector<KeyTraceEntry>& trace) {
  std::string out = "onset,tonic,mode,r\n";
  for (const KeyTraceEntry& e : trace) {
    out += chordlm::to_string(e.onset) + "," + std::to_string(e.key.tonic) + "," + to_string(e.key.mode) + "," +
           text::format_fixed(e.key.score, 6) + "\n";
  }
  return out;
}

}  // namespace chordlm::keyscape
