#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chordlm/cli/config.h"
#include "chordlm/encoder/corpus.h"
#include "chordlm/evalkit/folds.h"
#include "chordlm/evalkit/reports.h"
#include "chordlm/ingest/midi.h"
#include "chordlm/ingest/note_event.h"
#include "chordlm/keyscape/profiles.h"
#include "chordlm/ppm/context_trie.h"

namespace chordlm::cli {

// MIDI files under the given paths: directories contribute their *.mid /
// *.midi files (non-recursive), sorted by name.
std::vector<std::string> collect_files(const std::vector<std::string>& paths, const std::vector<std::string>& extensions);

struct IngestReport {
  std::vector<ingest::SliceStream> streams;
  std::vector<std::string> written;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

// Parses and expands each file. Composition ids are file stems. With a
// non-empty `out_dir` each stream is also written as <out_dir>/<stem>.slices.
// Unreadable or empty files are logged in `errors` and skipped.
IngestReport ingest_files(const std::vector<std::string>& files, const std::string& dataset,
                          const ingest::MidiParseOptions& options, const std::string& out_dir);

// Encodes streams (in parallel) and builds the corpus. When `key_trace_dir`
// is non-empty a per-onset key CSV is written there per composition.
encoder::EncodedCorpus encode_streams(const std::vector<ingest::SliceStream>& streams,
                                      const keyscape::KeyProfile& profile,
                                      const encoder::StreamEncodingOptions& options, int threads,
                                      const std::string& key_trace_dir = {});

// Long-term trie trained on every composition outside `test_fold`.
ppm::ContextTrie train_fold(const encoder::EncodedCorpus& corpus, const evalkit::FoldPlan& plan, int test_fold,
                            int max_depth, bool update_exclusion);

struct EvalOutput {
  std::vector<evalkit::EvalRecord> records;
  std::vector<std::string> traces;  // per model, trace CSV text (when requested)
};

// Runs every model over every fold. `tries[f]` is the long-term trie for test
// fold f. Records come out grouped by model (in `models` order) then in
// corpus order.
EvalOutput evaluate(const encoder::EncodedCorpus& corpus, const evalkit::FoldPlan& plan,
                    const std::vector<ppm::ContextTrie>& tries, const std::vector<std::string>& models,
                    const ppm::ModelConfig& defaults, double rare_share, bool traces, int threads);

// Records for an external model from its per-token trace CSV.
std::vector<evalkit::EvalRecord> records_from_trace(const std::string& model, const std::string& trace_csv,
                                                    const encoder::EncodedCorpus& corpus,
                                                    const evalkit::FoldPlan& plan, double rare_share);

struct ReportFiles {
  std::string summary_csv;
  std::string regression_txt;
};

ReportFiles build_reports(const std::vector<evalkit::EvalRecord>& records, const std::vector<std::string>& models,
                          int replicates, double level, std::uint64_t seed,
                          const evalkit::RegressionOptions& regression, const std::vector<std::string>& preamble);

}  // namespace chordlm::cli
