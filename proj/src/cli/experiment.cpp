#include "chordlm/cli/experiment.h"

#include <filesystem>
#include <set>
#include <thread>

#include "chordlm/cli/commands.h"
#include "chordlm/common/error.h"
#include "chordlm/common/text.h"
#include "chordlm/keyscape/profiles.h"

namespace fs = std::filesystem;

namespace chordlm::cli {

std::vector<std::string> report_preamble(const ExperimentConfig& config, const encoder::EncodedCorpus& corpus) {
  std::vector<std::string> preamble = describe(config);
  preamble.push_back("compositions: " + std::to_string(corpus.compositions.size()));
  preamble.push_back("alphabet: " + std::to_string(corpus.vocabulary.size()));
  preamble.push_back(
      "note: absolute H_m values depend on the corpus; values obtained on a larger multi-dataset corpus are not "
      "reproducible from this one");
  return preamble;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.corpora.empty()) throw ConfigError("no corpus given");
  const std::string out = config.output_dir.empty() ? default_output_root() : config.output_dir;
  fs::create_directories(out);
  const keyscape::KeyProfile profile = keyscape::resolve_profile(config.profile);

  ExperimentResult result;
  std::vector<ingest::SliceStream> streams;
  std::set<std::string> ids;
  ingest::MidiParseOptions parse_options;
  parse_options.include_percussion = config.include_percussion;
  for (const CorpusInput& input : config.corpora) {
    const auto files = collect_files({input.path}, {".mid", ".midi"});
    if (files.empty()) throw InputError("no input: no MIDI files under " + input.path);
    IngestReport report = ingest_files(files, input.dataset, parse_options, "");
    result.log.push_back("ingest " + input.dataset + ": " + std::to_string(files.size()) + " files, " +
                         std::to_string(report.streams.size()) + " read, " +
                         std::to_string(report.errors.size()) + " errors, " +
                         std::to_string(report.warnings.size()) + " warnings");
    for (const auto& e : report.errors) result.log.push_back("error: " + e);
    for (const auto& w : report.warnings) result.log.push_back("warning: " + w);
    result.ingest_errors += static_cast<int>(report.errors.size());
    for (auto& s : report.streams) {
      if (!ids.insert(s.composition).second) {
        throw InputError("composition id '" + s.composition + "' occurs in more than one dataset");
      }
      streams.push_back(std::move(s));
    }
  }
  if (streams.empty()) throw InputError("no readable compositions");

  result.corpus = encode_streams(streams, profile, config.encoding, config.threads);
  streams.clear();
  encoder::save_corpus(out, result.corpus);
  result.table = encoder::summarize(result.corpus);
  text::write_file((fs::path(out) / "table1.csv").string(), encoder::summary_csv(result.table));

  std::vector<evalkit::CompositionRef> refs;
  for (const auto& c : result.corpus.compositions) refs.push_back({c.composition, c.dataset});
  std::vector<std::string> fold_warnings;
  const evalkit::FoldPlan plan = evalkit::make_folds(refs, config.folds, config.seed, &fold_warnings);
  for (const auto& w : fold_warnings) result.log.push_back("warning: " + w);
  text::write_file((fs::path(out) / "folds.tsv").string(), evalkit::write_folds(plan));

  std::vector<ppm::ContextTrie> tries;
  for (int f = 0; f < plan.k; ++f) {
    tries.push_back(train_fold(result.corpus, plan, f, config.max_depth, config.model_defaults.update_exclusion));
  }

  EvalOutput eval = evaluate(result.corpus, plan, tries, config.models, config.model_defaults, config.rare_share,
                             config.traces, config.threads);
  tries.clear();
  result.records = std::move(eval.records);

  const std::vector<std::string> preamble = report_preamble(config, result.corpus);
  text::write_file((fs::path(out) / "results.csv").string(), evalkit::results_csv(result.records, preamble));
  if (config.traces) {
    fs::create_directories(fs::path(out) / "traces");
    for (std::size_t m = 0; m < config.models.size(); ++m) {
      text::write_file((fs::path(out) / "traces" / (config.models[m] + ".csv")).string(), eval.traces[m]);
    }
  }
  const ReportFiles reports = build_reports(result.records, config.models, config.replicates, config.level,
                                            config.seed, config.regression, preamble);
  text::write_file((fs::path(out) / "summary.csv").string(), reports.summary_csv);
  text::write_file((fs::path(out) / "regression.txt").string(), reports.regression_txt);
  for (const auto& m : config.models) {
    result.summary.push_back(
        evalkit::summarize_model(m, result.records, config.replicates, config.level, config.seed));
  }

  std::string log;
  for (const auto& line : result.log) log += line + "\n";
  text::write_file((fs::path(out) / "experiment.log").string(), log);
  return result;
}

}  // namespace chordlm::cli
