#include "chordlm/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <map>
#include <set>
#include <thread>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"
#include "chordlm/evalkit/cross_entropy.h"
#include "chordlm/evalkit/predictors.h"
#include "chordlm/ingest/expansion.h"
#include "chordlm/ingest/interchange.h"
#include "chordlm/keyscape/key_finder.h"
#include "chordlm/ppm/model.h"

namespace fs = std::filesystem;

namespace chordlm::cli {
namespace {

std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

// Runs fn(0..n-1) on up to `threads` workers. The exception of the lowest
// failing index is rethrown so errors do not depend on scheduling.
template <typename Fn>
void parallel_for(int n, int threads, Fn fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<std::string> collect_files(const std::vector<std::string>& paths,
                                       const std::vector<std::string>& extensions) {
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = lower(entry.path().extension().string());
        if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw InputError("no such file or directory: " + p);
    }
  }
  return files;
}

IngestReport ingest_files(const std::vector<std::string>& files, const std::string& dataset,
                          const ingest::MidiParseOptions& options, const std::string& out_dir) {
  IngestReport report;
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::set<std::string> seen;
  for (const std::string& file : files) {
    const std::string stem = fs::path(file).stem().string();
    if (!seen.insert(stem).second) {
      report.errors.push_back(file + ": duplicate composition id '" + stem + "', skipped");
      continue;
    }
    ingest::MidiParseResult parsed;
    try {
      parsed = ingest::parse_midi_file(file, options);
    } catch (const InputError& e) {
      report.errors.push_back(file + ": " + e.what());
      continue;
    }
    for (const std::string& w : parsed.warnings) report.warnings.push_back(file + ": " + w);
    if (parsed.events.empty()) {
      report.errors.push_back(file + ": no notes");
      continue;
    }
    ingest::SliceStream stream;
    stream.composition = stem;
    stream.dataset = dataset;
    stream.notes = std::move(parsed.events);
    stream.slices = ingest::full_expand(stream.notes);
    if (!out_dir.empty()) {
      const std::string path = (fs::path(out_dir) / (stem + ".slices")).string();
      ingest::save_slice_stream(path, stream);
      report.written.push_back(path);
    }
    report.streams.push_back(std::move(stream));
  }
  return report;
}

encoder::EncodedCorpus encode_streams(const std::vector<ingest::SliceStream>& streams,
                                      const keyscape::KeyProfile& profile,
                                      const encoder::StreamEncodingOptions& options, int threads,
                                      const std::string& key_trace_dir) {
  std::vector<encoder::TypedComposition> typed(streams.size());
  if (!key_trace_dir.empty()) fs::create_directories(key_trace_dir);
  parallel_for(static_cast<int>(streams.size()), threads, [&](int i) {
    const ingest::SliceStream& s = streams[static_cast<std::size_t>(i)];
    std::vector<keyscape::KeyTraceEntry> trace;
    auto& out = typed[static_cast<std::size_t>(i)];
    out.composition = s.composition;
    out.dataset = s.dataset;
    out.types = encoder::encode_stream(s, profile, options, key_trace_dir.empty() ? nullptr : &trace);
    if (!key_trace_dir.empty()) {
      text::write_file((fs::path(key_trace_dir) / (s.composition + ".keys.csv")).string(),
                       keyscape::key_trace_csv(trace));
    }
  });
  return encoder::assemble_corpus(typed);
}

ppm::ContextTrie train_fold(const encoder::EncodedCorpus& corpus, const evalkit::FoldPlan& plan, int test_fold,
                            int max_depth, bool update_exclusion) {
  ppm::ContextTrie trie(corpus.vocabulary.size(), max_depth);
  for (const auto& c : corpus.compositions) {
    if (plan.fold(c.composition) != test_fold) trie.train(c.tokens, update_exclusion);
  }
  return trie;
}

EvalOutput evaluate(const encoder::EncodedCorpus& corpus, const evalkit::FoldPlan& plan,
                    const std::vector<ppm::ContextTrie>& tries, const std::vector<std::string>& models,
                    const ppm::ModelConfig& defaults, double rare_share, bool traces, int threads) {
  if (static_cast<int>(tries.size()) != plan.k) throw InvariantError("one trie per fold expected");
  const evalkit::CorpusProfile profile = evalkit::make_corpus_profile(corpus.vocabulary, rare_share);
  const std::size_t n = corpus.compositions.size();
  std::vector<int> fold_of(n);
  std::vector<std::vector<std::size_t>> by_fold(static_cast<std::size_t>(plan.k));
  std::vector<evalkit::Predictors> predictors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = corpus.compositions[i];
    fold_of[i] = plan.fold(c.composition);
    by_fold[static_cast<std::size_t>(fold_of[i])].push_back(i);
    predictors[i] = evalkit::compute_predictors(c.tokens, profile);
  }

  EvalOutput out;
  for (const std::string& spec : models) {
    const ppm::ModelConfig config = ppm::parse_model_spec(spec, defaults);
    std::vector<double> h(n);
    std::vector<std::string> trace_parts(traces ? n : 0);
    parallel_for(plan.k, threads, [&](int f) {
      const ppm::ContextTrie& base = tries[static_cast<std::size_t>(f)];
      for (std::size_t i : by_fold[static_cast<std::size_t>(f)]) {
        const auto& c = corpus.compositions[i];
        const std::vector<double> p = ppm::run_sequence(c.tokens, config, base);
        h[i] = evalkit::cross_entropy(p);
        if (traces) trace_parts[i] = evalkit::trace_csv_rows(c.composition, c.tokens, p);
      }
    });
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = corpus.compositions[i];
      out.records.push_back({spec, c.composition, c.dataset, fold_of[i], h[i], predictors[i]});
    }
    if (traces) {
      std::string csv = evalkit::trace_csv_header();
      for (const auto& part : trace_parts) csv += part;
      out.traces.push_back(std::move(csv));
    }
  }
  return out;
}

std::vector<evalkit::EvalRecord> records_from_trace(const std::string& model, const std::string& trace_csv,
                                                    const encoder::EncodedCorpus& corpus,
                                                    const evalkit::FoldPlan& plan, double rare_share) {
  const auto rows = evalkit::read_trace_csv(trace_csv);
  const auto entropy = evalkit::entropy_by_composition(rows);
  std::map<std::string, std::vector<int>> trace_tokens;
  for (const auto& r : rows) {
    auto& tokens = trace_tokens[r.composition];
    if (tokens.size() <= static_cast<std::size_t>(r.index)) tokens.resize(static_cast<std::size_t>(r.index) + 1);
    tokens[static_cast<std::size_t>(r.index)] = r.token;
  }
  const evalkit::CorpusProfile profile = evalkit::make_corpus_profile(corpus.vocabulary, rare_share);
  std::vector<evalkit::EvalRecord> records;
  std::set<std::string> known;
  for (const auto& c : corpus.compositions) {
    known.insert(c.composition);
    auto it = entropy.find(c.composition);
    if (it == entropy.end()) continue;
    if (trace_tokens[c.composition] != c.tokens) {
      throw InputError("trace for model '" + model + "': tokens of '" + c.composition +
                       "' do not match the corpus");
    }
    records.push_back(
        {model, c.composition, c.dataset, plan.fold(c.composition), it->second.h,
         evalkit::compute_predictors(c.tokens, profile)});
  }
  for (const auto& [composition, unused] : entropy) {
    if (!known.count(composition)) {
      throw InputError("trace for model '" + model + "': unknown composition '" + composition + "'");
    }
  }
  if (records.empty()) throw InputError("trace for model '" + model + "' has no rows");
  return records;
}

ReportFiles build_reports(const std::vector<evalkit::EvalRecord>& records, const std::vector<std::string>& models,
                          int replicates, double level, std::uint64_t seed,
                          const evalkit::RegressionOptions& regression, const std::vector<std::string>& preamble) {
  std::vector<evalkit::SummaryRow> rows;
  std::string regression_text = evalkit::comment_block(preamble);
  for (const std::string& model : models) {
    rows.push_back(evalkit::summarize_model(model, records, replicates, level, seed));
    std::vector<evalkit::EvalRecord> subset;
    for (const auto& r : records) {
      if (r.model == model) subset.push_back(r);
    }
    regression_text += "\n";
    try {
      regression_text += evalkit::regression_report(model, evalkit::regress_records(subset, regression));
    } catch (const InputError& e) {
      regression_text += "Model: " + model + "\n  regression skipped: " + std::string(e.what()) + "\n";
    }
  }
  return {evalkit::summary_csv(rows, preamble), regression_text};
}

}  // namespace chordlm::cli
