#include "chordlm/encoder/corpus.h"

#include <filesystem>
#include <map>
#include <set>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::encoder {

std::vector<ChordType> encode_stream(const ingest::SliceStream& stream, const keyscape::KeyProfile& profile,
                                     const StreamEncodingOptions& options,
                                     std::vector<keyscape::KeyTraceEntry>* trace) {
  auto keys = keyscape::estimate_keys(stream, profile, options.window);
  std::vector<ChordType> types;
  types.reserve(stream.slices.size());
  for (std::size_t i = 0; i < stream.slices.size(); ++i) {
    types.push_back(encode_slice(stream.slices[i], keys[i].key, options.encoder));
  }
  if (trace) trace->insert(trace->end(), keys.begin(), keys.end());
  return types;
}

EncodedCorpus assemble_corpus(const std::vector<TypedComposition>& compositions) {
  std::vector<std::vector<ChordType>> sequences;
  sequences.reserve(compositions.size());
  for (const TypedComposition& c : compositions) {
    if (c.types.empty()) throw InputError("composition '" + c.composition + "' has no chord onsets");
    sequences.push_back(c.types);
  }
  EncodedCorpus corpus;
  corpus.vocabulary = Vocabulary::build(sequences);
  for (const TypedComposition& c : compositions) {
    corpus.compositions.push_back({c.composition, c.dataset, corpus.vocabulary.encode_all(c.types)});
  }
  return corpus;
}

std::string write_corpus_text(const EncodedCorpus& corpus) {
  std::string out = "#chordlm-corpus v1\n";
  for (const EncodedComposition& c : corpus.compositions) {
    out += c.composition + "\t" + c.dataset + "\t";
    for (std::size_t i = 0; i < c.tokens.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c.tokens[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<EncodedComposition> read_corpus_text(std::string_view content) {
  std::vector<EncodedComposition> out;
  std::set<std::string> seen;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != "#chordlm-corpus v1") throw InputError("not an encoded-corpus file");
      continue;
    }
    if (line.empty()) continue;
    auto f = text::split(line, '\t');
    if (f.size() != 3) throw InputError("corpus line " + std::to_string(line_no) + ": expected 3 fields");
    EncodedComposition c{f[0], f[1], {}};
    for (const std::string& tok : text::split_ws(f[2])) c.tokens.push_back(static_cast<int>(text::parse_int(tok, "token")));
    if (c.tokens.empty()) throw InputError("corpus line " + std::to_string(line_no) + ": empty token sequence");
    if (!seen.insert(c.composition).second) throw InputError("duplicate composition id '" + c.composition + "'");
    out.push_back(std::move(c));
  }
  return out;
}

void save_corpus(const std::string& dir, const EncodedCorpus& corpus) {
  std::filesystem::create_directories(dir);
  text::write_file(dir + "/corpus.tsv", write_corpus_text(corpus));
  text::write_file(dir + "/vocabulary.tsv", corpus.vocabulary.to_text());
}

EncodedCorpus load_corpus(const std::string& dir) {
  EncodedCorpus corpus;
  corpus.vocabulary = Vocabulary::from_text(text::read_file(dir + "/vocabulary.tsv"));
  corpus.compositions = read_corpus_text(text::read_file(dir + "/corpus.tsv"));
  for (const EncodedComposition& c : corpus.compositions) {
    for (int t : c.tokens) {
      if (t < 0 || t >= corpus.vocabulary.size()) {
        throw InputError("composition '" + c.composition + "' has token " + std::to_string(t) +
                         " outside the vocabulary");
      }
    }
  }
  return corpus;
}

std::vector<DatasetSummary> summarize(const EncodedCorpus& corpus) {
  std::map<std::string, DatasetSummary> rows;
  std::map<std::string, std::set<int>> types;
  std::set<int> all_types;
  DatasetSummary total{"Total"};
  for (const EncodedComposition& c : corpus.compositions) {
    auto& row = rows[c.dataset];
    row.dataset = c.dataset;
    ++row.pieces;
    row.tokens += static_cast<std::int64_t>(c.tokens.size());
    types[c.dataset].insert(c.tokens.begin(), c.tokens.end());
    all_types.insert(c.tokens.begin(), c.tokens.end());
    ++total.pieces;
    total.tokens += static_cast<std::int64_t>(c.tokens.size());
  }
  std::vector<DatasetSummary> out;
  for (auto& [name, row] : rows) {
    row.types = static_cast<std::int64_t>(types[name].size());
    out.push_back(row);
  }
  total.types = static_cast<std::int64_t>(all_types.size());
  out.push_back(total);
  return out;
}

std::string summary_csv(const std::vector<DatasetSummary>& rows) {
  std::string out = "dataset,pieces,tokens,types\n";
  for (const DatasetSummary& r : rows) {
    out += r.dataset + "," + std::to_string(r.pieces) + "," + std::to_string(r.tokens) + "," +
           std::to_string(r.types) + "\n";
  }
  return out;
}

}  // namespace chordlm::encoder
