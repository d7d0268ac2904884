// chordlm: chord-sequence corpus pipeline and PPM evaluation.
//
// Exit codes: 0 success, 1 input error, 2 configuration error, 3 internal
// invariant violation.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>

#include "chordlm/cli/commands.h"
#include "chordlm/cli/config.h"
#include "chordlm/cli/experiment.h"
#include "chordlm/common/error.h"
#include "chordlm/common/text.h"
#include "chordlm/ingest/interchange.h"
#include "chordlm/keyscape/profiles.h"

namespace fs = std::filesystem;
using namespace chordlm;

namespace {

struct SharedOptions {
  std::string config_path;
  std::vector<std::string> settings;
};

void add_shared(CLI::App* app, SharedOptions& shared) {
  app->add_option("-c,--config", shared.config_path, "Config file (key = value lines)");
  app->add_option("-s,--set", shared.settings, "Override a setting, e.g. --set seed=7")->take_all();
}

cli::ExperimentConfig resolve(const SharedOptions& shared) {
  cli::ExperimentConfig config = shared.config_path.empty() ? cli::ExperimentConfig{}
                                                            : cli::load_config(shared.config_path);
  for (const auto& s : shared.settings) cli::apply_override(config, s);
  return config;
}

std::string snapshot_path(const std::string& dir, int fold) {
  return (fs::path(dir) / ("ltm_fold" + std::to_string(fold) + ".trie")).string();
}

void print_lines(const std::vector<std::string>& lines, std::ostream& os) {
  for (const auto& l : lines) os << l << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"chordlm: chord-type corpora and PPM language models"};
  app.require_subcommand(1);
  SharedOptions shared;

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse MIDI files into slice streams");
  std::vector<std::string> ingest_inputs;
  std::string ingest_dataset = "default";
  std::string ingest_out;
  ingest_cmd->add_option("inputs", ingest_inputs, "MIDI files or directories")->required();
  ingest_cmd->add_option("-d,--dataset", ingest_dataset, "Dataset id");
  ingest_cmd->add_option("-o,--out", ingest_out, "Output directory for .slices files");
  add_shared(ingest_cmd, shared);

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Key-find and encode slice streams into a corpus");
  std::vector<std::string> encode_inputs;
  std::string encode_out;
  std::string key_traces;
  encode_cmd->add_option("inputs", encode_inputs, ".slices files or directories")->required();
  encode_cmd->add_option("-o,--out", encode_out, "Corpus directory");
  encode_cmd->add_option("--key-traces", key_traces, "Directory for per-onset key CSVs");
  add_shared(encode_cmd, shared);

  // folds
  auto* folds_cmd = app.add_subcommand("folds", "Assign compositions to cross-validation folds");
  std::string folds_corpus;
  std::string folds_out;
  folds_cmd->add_option("--corpus", folds_corpus, "Corpus directory")->required();
  folds_cmd->add_option("-o,--out", folds_out, "Fold file (default <corpus>/folds.tsv)");
  add_shared(folds_cmd, shared);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train long-term models, one per test fold");
  std::string train_corpus;
  std::string train_folds;
  std::string train_out;
  std::vector<int> train_which;
  train_cmd->add_option("--corpus", train_corpus, "Corpus directory")->required();
  train_cmd->add_option("--folds", train_folds, "Fold file (default <corpus>/folds.tsv)");
  train_cmd->add_option("--fold", train_which, "Test fold(s) to train for (default all)");
  train_cmd->add_option("-o,--out", train_out, "Snapshot directory (default <corpus>/models)");
  add_shared(train_cmd, shared);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate models over all folds");
  std::string eval_corpus;
  std::string eval_folds;
  std::string eval_snapshots;
  std::string eval_out;
  bool regenerate = false;
  eval_cmd->add_option("--corpus", eval_corpus, "Corpus directory")->required();
  eval_cmd->add_option("--folds", eval_folds, "Fold file (default <corpus>/folds.tsv)");
  eval_cmd->add_option("--models-dir", eval_snapshots, "Snapshot directory (default <corpus>/models)");
  eval_cmd->add_flag("--regenerate", regenerate, "Train snapshots that are missing instead of failing");
  eval_cmd->add_option("-o,--out", eval_out, "Output directory (default <corpus>)");
  add_shared(eval_cmd, shared);

  // report
  auto* report_cmd = app.add_subcommand("report", "Summaries, confidence intervals and regressions");
  std::string report_results;
  std::vector<std::string> report_traces;
  std::string report_corpus;
  std::string report_folds;
  std::string report_out;
  report_cmd->add_option("--results", report_results, "results.csv from eval");
  report_cmd->add_option("--trace", report_traces, "External model trace, NAME=path.csv");
  report_cmd->add_option("--corpus", report_corpus, "Corpus directory (needed with --trace)");
  report_cmd->add_option("--folds", report_folds, "Fold file (default <corpus>/folds.tsv)");
  report_cmd->add_option("-o,--out", report_out, "Output directory")->required();
  add_shared(report_cmd, shared);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run the whole pipeline from a config");
  std::string exp_out;
  exp_cmd->add_option("-o,--out", exp_out, "Output directory (overrides the config)");
  add_shared(exp_cmd, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const cli::ExperimentConfig config = resolve(shared);
  const std::string root = config.output_dir.empty() ? cli::default_output_root() : config.output_dir;
  auto folds_file = [](const std::string& given, const std::string& corpus) {
    return given.empty() ? (fs::path(corpus) / "folds.tsv").string() : given;
  };

  if (*ingest_cmd) {
    const auto files = cli::collect_files(ingest_inputs, {".mid", ".midi"});
    if (files.empty()) throw InputError("no input: no MIDI files found");
    ingest::MidiParseOptions options;
    options.include_percussion = config.include_percussion;
    const std::string out = ingest_out.empty() ? (fs::path(root) / "slices" / ingest_dataset).string() : ingest_out;
    const auto report = cli::ingest_files(files, ingest_dataset, options, out);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
    std::cout << "ingested " << report.streams.size() << " of " << files.size() << " files into " << out << " ("
              << report.errors.size() << " errors, " << report.warnings.size() << " warnings)\n";
    return report.streams.empty() ? 1 : 0;
  }

  if (*encode_cmd) {
    std::vector<ingest::SliceStream> streams;
    for (const auto& f : cli::collect_files(encode_inputs, {".slices"})) {
      streams.push_back(ingest::load_slice_stream(f));
    }
    if (streams.empty()) throw InputError("no slice streams given");
    const auto profile = keyscape::resolve_profile(config.profile);
    const std::string out = encode_out.empty() ? (fs::path(root) / "corpus").string() : encode_out;
    const auto corpus = cli::encode_streams(streams, profile, config.encoding, config.threads, key_traces);
    encoder::save_corpus(out, corpus);
    const std::string table = encoder::summary_csv(encoder::summarize(corpus));
    text::write_file((fs::path(out) / "table1.csv").string(), table);
    std::cout << table;
    return 0;
  }

  if (*folds_cmd) {
    const auto corpus = encoder::load_corpus(folds_corpus);
    std::vector<evalkit::CompositionRef> refs;
    for (const auto& c : corpus.compositions) refs.push_back({c.composition, c.dataset});
    std::vector<std::string> warnings;
    const auto plan = evalkit::make_folds(refs, config.folds, config.seed, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    const std::string out = folds_file(folds_out, folds_corpus);
    text::write_file(out, evalkit::write_folds(plan));
    std::cout << "wrote " << out << "\n";
    return 0;
  }

  if (*train_cmd) {
    const auto corpus = encoder::load_corpus(train_corpus);
    const auto plan = evalkit::read_folds(text::read_file(folds_file(train_folds, train_corpus)));
    const std::string out = train_out.empty() ? (fs::path(train_corpus) / "models").string() : train_out;
    fs::create_directories(out);
    if (train_which.empty()) {
      for (int f = 0; f < plan.k; ++f) train_which.push_back(f);
    }
    for (int f : train_which) {
      if (f < 0 || f >= plan.k) throw ConfigError("fold " + std::to_string(f) + " out of range");
      const auto trie = cli::train_fold(corpus, plan, f, config.max_depth, config.model_defaults.update_exclusion);
      text::write_file(snapshot_path(out, f), trie.to_text());
      std::cout << "wrote " << snapshot_path(out, f) << "\n";
    }
    return 0;
  }

  if (*eval_cmd) {
    const auto corpus = encoder::load_corpus(eval_corpus);
    const auto plan = evalkit::read_folds(text::read_file(folds_file(eval_folds, eval_corpus)));
    for (const auto& c : corpus.compositions) plan.fold(c.composition);
    const std::string snapshots = eval_snapshots.empty() ? (fs::path(eval_corpus) / "models").string() : eval_snapshots;
    std::vector<ppm::ContextTrie> tries;
    for (int f = 0; f < plan.k; ++f) {
      const std::string path = snapshot_path(snapshots, f);
      if (fs::exists(path)) {
        tries.push_back(ppm::ContextTrie::from_text(text::read_file(path)));
        if (tries.back().alphabet_size() != corpus.vocabulary.size()) {
          throw InputError(path + ": alphabet size does not match the corpus vocabulary");
        }
      } else if (regenerate) {
        tries.push_back(cli::train_fold(corpus, plan, f, config.max_depth, config.model_defaults.update_exclusion));
        std::cerr << "regenerated missing snapshot for fold " << f << "\n";
      } else {
        throw InputError("missing model snapshot " + path + " (use --regenerate to train it)");
      }
    }
    const auto result = cli::evaluate(corpus, plan, tries, config.models, config.model_defaults, config.rare_share,
                                      config.traces, config.threads);
    const std::string out = eval_out.empty() ? eval_corpus : eval_out;
    fs::create_directories(out);
    const auto preamble = cli::report_preamble(config, corpus);
    text::write_file((fs::path(out) / "results.csv").string(), evalkit::results_csv(result.records, preamble));
    for (std::size_t m = 0; m < result.traces.size(); ++m) {
      fs::create_directories(fs::path(out) / "traces");
      text::write_file((fs::path(out) / "traces" / (config.models[m] + ".csv")).string(), result.traces[m]);
    }
    std::cout << "wrote " << (fs::path(out) / "results.csv").string() << "\n";
    return 0;
  }

  if (*report_cmd) {
    std::vector<evalkit::EvalRecord> records;
    std::vector<std::string> models;
    if (!report_results.empty()) {
      records = evalkit::read_results_csv(text::read_file(report_results));
      for (const auto& r : records) {
        if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
      }
    }
    if (!report_traces.empty()) {
      if (report_corpus.empty()) throw ConfigError("--trace needs --corpus");
      const auto corpus = encoder::load_corpus(report_corpus);
      const auto plan = evalkit::read_folds(text::read_file(folds_file(report_folds, report_corpus)));
      for (const auto& spec : report_traces) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--trace expects NAME=path, got '" + spec + "'");
        const std::string name = spec.substr(0, eq);
        if (std::find(models.begin(), models.end(), name) != models.end()) {
          throw ConfigError("model '" + name + "' given twice");
        }
        auto extra = cli::records_from_trace(name, text::read_file(spec.substr(eq + 1)), corpus, plan,
                                             config.rare_share);
        records.insert(records.end(), extra.begin(), extra.end());
        models.push_back(name);
      }
    }
    if (models.empty()) throw ConfigError("report needs --results or --trace");
    std::vector<std::string> preamble = cli::describe(config);
    preamble.push_back(
        "note: absolute H_m values depend on the corpus; values obtained on a larger multi-dataset corpus are not "
        "reproducible from this one");
    const auto files = cli::build_reports(records, models, config.replicates, config.level, config.seed,
                                          config.regression, preamble);
    fs::create_directories(report_out);
    text::write_file((fs::path(report_out) / "summary.csv").string(), files.summary_csv);
    text::write_file((fs::path(report_out) / "regression.txt").string(), files.regression_txt);
    std::cout << files.summary_csv;
    return 0;
  }

  if (*exp_cmd) {
    cli::ExperimentConfig exp_config = config;
    if (!exp_out.empty()) exp_config.output_dir = exp_out;
    if (exp_config.output_dir.empty()) exp_config.output_dir = root;
    const auto result = cli::run_experiment(exp_config);
    print_lines(result.log, std::cerr);
    std::cout << encoder::summary_csv(result.table);
    std::cout << evalkit::summary_csv(result.summary, {});
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
