#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chordlm/encoder/chord_type.h"
#include "chordlm/encoder/vocabulary.h"
#include "chordlm/ingest/note_event.h"
#include "chordlm/keyscape/key_finder.h"

namespace chordlm::encoder {

struct StreamEncodingOptions {
  EncoderOptions encoder;
  keyscape::WindowOptions window;
};

// Chord types for every slice of `stream`, each relative to the local key at
// its onset. The per-onset keys are appended to `trace` when given.
std::vector<ChordType> encode_stream(const ingest::SliceStream& stream, const keyscape::KeyProfile& profile,
                                     const StreamEncodingOptions& options = {},
                                     std::vector<keyscape::KeyTraceEntry>* trace = nullptr);

struct TypedComposition {
  std::string composition;
  std::string dataset;
  std::vector<ChordType> types;
};

struct EncodedComposition {
  std::string composition;
  std::string dataset;
  std::vector<int> tokens;

  bool operator==(const EncodedComposition&) const = default;
};

struct EncodedCorpus {
  std::vector<EncodedComposition> compositions;
  Vocabulary vocabulary;

  bool operator==(const EncodedCorpus&) const = default;
};

// Builds the vocabulary over all compositions and maps them to ids. Empty
// compositions are rejected with InputError.
EncodedCorpus assemble_corpus(const std::vector<TypedComposition>& compositions);

// Corpus file: "#chordlm-corpus v1", then "<composition>\t<dataset>\t<ids>"
// with ids space separated. Compositions stay in the given order.
std::string write_corpus_text(const EncodedCorpus& corpus);
std::vector<EncodedComposition> read_corpus_text(std::string_view content);

// Writes <dir>/corpus.tsv and <dir>/vocabulary.tsv; load reads them back and
// checks every token against the vocabulary.
void save_corpus(const std::string& dir, const EncodedCorpus& corpus);
EncodedCorpus load_corpus(const std::string& dir);

struct DatasetSummary {
  std::string dataset;
  std::int64_t pieces = 0;
  std::int64_t tokens = 0;
  std::int64_t types = 0;
};

// One row per dataset (sorted by id) followed by a "Total" row whose type
// count is over the whole corpus.
std::vector<DatasetSummary> summarize(const EncodedCorpus& corpus);
std::string summary_csv(const std::vector<DatasetSummary>& rows);

}  // namespace chordlm::encoder
