#pragma once

#include <string>
#include <string_view>

#include "chordlm/ingest/note_event.h"

namespace chordlm::ingest {

// Slice-stream interchange format. Line-oriented, tab-separated, UTF-8:
//
//   #chordlm-slices v1
//   H <composition> <dataset>
//   N <composition> <onset_num> <onset_den> <dur_num> <dur_den> <pitch> <track>
//   S <composition> <onset_num> <onset_den> <pitch>[,<pitch>...]
//
// All N records precede all S records; N records are in note order and S
// records in onset order. Composition and dataset ids may not contain tabs or
// newlines.
std::string write_slice_stream(const SliceStream& stream);
SliceStream read_slice_stream(std::string_view content);

void save_slice_stream(const std::string& path, const SliceStream& stream);
SliceStream load_slice_stream(const std::string& path);

}  // namespace chordlm::ingest
