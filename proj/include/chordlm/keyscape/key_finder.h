#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordlm/common/rational.h"
#include "chordlm/ingest/note_event.h"
#include "chordlm/keyscape/profiles.h"

namespace chordlm::keyscape {

enum class Mode { kMajor, kMinor };

std::string to_string(Mode mode);

struct KeyEstimate {
  int tonic = 0;  // pitch class 0-11
  Mode mode = Mode::kMajor;
  double score = 0.0;  // Pearson r of the winning candidate

  bool operator==(const KeyEstimate&) const = default;
};

enum class Weighting { kDuration, kCount };

struct WindowOptions {
  Rational width{16};  // quarter-note beats, centered on the onset
  Weighting weighting = Weighting::kDuration;
};

// Thrown by pearson() when either input is constant.
class UndefinedCorrelation : public std::domain_error {
 public:
  UndefinedCorrelation() : std::domain_error("correlation undefined for a constant vector") {}
};

// Pitch-class weights of all notes overlapping [center - width/2,
// center + width/2). With duration weighting each note adds its overlap with
// the window; with count weighting it adds 1.
PitchClassVector window_histogram(const ingest::SliceStream& stream, const Rational& center,
                                  const WindowOptions& options = {});

PitchClassVector whole_piece_histogram(const ingest::SliceStream& stream,
                                       Weighting weighting = Weighting::kDuration);

double pearson(const PitchClassVector& a, const PitchClassVector& b);

// Correlation with each of the 24 keys, indexed [mode][tonic].
std::array<std::array<double, 12>, 2> key_scores(const PitchClassVector& histogram, const KeyProfile& profile);

// Best of the 24 rotations; ties go to the lower tonic, then to major.
// Returns nullopt when the histogram is constant (no key signal).
std::optional<KeyEstimate> estimate_key(const PitchClassVector& histogram, const KeyProfile& profile);

std::optional<KeyEstimate> estimate_key(const ingest::SliceStream& stream, const Rational& center,
                                        const KeyProfile& profile, const WindowOptions& options = {});

enum class KeySource { kWindow, kPrevious, kWholePiece, kDefault };

struct KeyTraceEntry {
  Rational onset;
  KeyEstimate key;
  KeySource source = KeySource::kWindow;
};

// One key per slice. A window without a key signal reuses the previous
// onset's key; the first onset falls back to the whole-piece histogram, and
// failing that to C major.
std::vector<KeyTraceEntry> estimate_keys(const ingest::SliceStream& stream, const KeyProfile& profile,
                                         const WindowOptions& options = {});

// CSV with header "onset,tonic,mode,r".
std::string key_trace_csv(const std::vector<KeyTraceEntry>& trace);

}  // namespace chordlm::keyscape
