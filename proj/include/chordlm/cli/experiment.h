#pragma once

#include <string>
#include <vector>

#include "chordlm/cli/config.h"
#include "chordlm/encoder/corpus.h"
#include "chordlm/evalkit/reports.h"

namespace chordlm::cli {

struct ExperimentResult {
  encoder::EncodedCorpus corpus;
  std::vector<encoder::DatasetSummary> table;
  std::vector<evalkit::EvalRecord> records;
  std::vector<evalkit::SummaryRow> summary;
  std::vector<std::string> log;
  int ingest_errors = 0;
};

// Full pipeline: ingest, encode, folds, train, evaluate, report. Writes into
// config.output_dir: corpus.tsv, vocabulary.tsv, table1.csv, folds.tsv,
// results.csv, summary.csv, regression.txt, experiment.log and (optionally)
// traces/<model>.csv.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Report header lines: resolved settings, corpus size and a reproducibility note.
std::vector<std::string> report_preamble(const ExperimentConfig& config, const encoder::EncodedCorpus& corpus);

}  // namespace chordlm::cli
