#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "chordlm/cli/commands.h"
#include "chordlm/cli/config.h"
#include "chordlm/cli/experiment.h"
#include "chordlm/common/error.h"
#include "chordlm/common/text.h"
#include "chordlm/evalkit/cross_entropy.h"
#include "test_util.h"

namespace chordlm::cli {
namespace {

namespace fs = std::filesystem;

// Four-voice block chords over a random diatonic progression.
std::vector<std::uint8_t> toy_piece(std::mt19937_64& rng, int chords) {
  static const int kTriads[7][4] = {{48, 64, 67, 72}, {50, 65, 69, 74}, {52, 67, 71, 76}, {53, 65, 69, 72},
                                    {55, 62, 67, 71}, {57, 64, 69, 72}, {47, 62, 65, 74}};
  std::vector<std::tuple<int, int, int>> notes;
  int tick = 0;
  for (int c = 0; c < chords; ++c) {
    const auto& triad = kTriads[rng() % 7];
    const int len = 2 + 2 * static_cast<int>(rng() % 2);
    for (int v = 0; v < 4; ++v) {
      if (v == 3 && rng() % 3 == 0) {
        notes.emplace_back(tick, len / 2, triad[v]);
        notes.emplace_back(tick + len / 2, len / 2, triad[v] + 2);
      } else {
        notes.emplace_back(tick, len, triad[v]);
      }
    }
    tick += len;
  }
  return testing::make_smf(notes);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("chordlm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_ / "midi");
    std::mt19937_64 rng(77);
    for (int i = 0; i < 12; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "piece%02d.mid", i);
      testing::write_bytes((root_ / "midi" / name).string(), toy_piece(rng, 10 + static_cast<int>(rng() % 20)));
    }
  }
  void TearDown() override { fs::remove_all(root_); }

  ExperimentConfig toy_config(const std::string& out) const {
    ExperimentConfig c = parse_config("corpus = toy: " + (root_ / "midi").string() + "\nreplicates = 200\n");
    c.output_dir = (root_ / out).string();
    return c;
  }

  fs::path root_;
};

TEST_F(CliTest, IngestWritesOneFilePerComposition) {
  const auto files = collect_files({(root_ / "midi").string()}, {".mid"});
  ASSERT_EQ(files.size(), 12u);
  const auto report = ingest_files(files, "toy", {}, (root_ / "slices").string());
  EXPECT_EQ(report.streams.size(), 12u);
  EXPECT_EQ(report.written.size(), 12u);
  EXPECT_TRUE(report.errors.empty());
  EXPECT_TRUE(fs::exists(root_ / "slices" / "piece00.slices"));
}

TEST_F(CliTest, CorruptFilesAreLoggedAndSkipped) {
  text::write_file((root_ / "midi" / "broken.mid").string(), "MThd garbage");
  const auto files = collect_files({(root_ / "midi").string()}, {".mid"});
  const auto report = ingest_files(files, "toy", {}, "");
  EXPECT_EQ(report.streams.size(), 12u);
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_NE(report.errors[0].find("broken.mid"), std::string::npos);
  EXPECT_THROW(collect_files({(root_ / "nope").string()}, {".mid"}), InputError);
}

TEST(ConfigTest, ParsesSettingsAndOverrides) {
  auto c = parse_config(
      "# comment\n"
      "corpus = bach: data/bach   # trailing comment\n"
      "corpus = other: /x/y\n"
      "models = ltm+, stm@2\n"
      "folds = 5\nseed = 9\nbias = 1.5\noverflow = most-frequent\nweighting = count\n"
      "stepwise = aic\nupdate_exclusion = on\ntraces = yes\n");
  ASSERT_EQ(c.corpora.size(), 2u);
  EXPECT_EQ(c.corpora[0].dataset, "bach");
  EXPECT_EQ(c.corpora[0].path, "data/bach");
  EXPECT_EQ(c.models, (std::vector<std::string>{"ltm+", "stm@2"}));
  EXPECT_EQ(c.folds, 5);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.model_defaults.bias, 1.5);
  EXPECT_TRUE(c.model_defaults.update_exclusion);
  EXPECT_TRUE(c.traces);
  apply_override(c, "seed=11");
  EXPECT_EQ(c.seed, 11u);
  const auto lines = describe(c);
  EXPECT_NE(std::find(lines.begin(), lines.end(), "seed: 11"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "escape: C"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "bias: 1.5"), lines.end());
}

TEST(ConfigTest, RejectsBadSettings) {
  for (const char* bad : {"colour = red", "folds = 1", "models = lstm", "bias = x", "level = 2", "corpus = nocolon",
                          "overflow = largest", "seed = -1", "noequals"}) {
    EXPECT_THROW(parse_config(bad), ConfigError) << bad;
  }
}

TEST_F(CliTest, StmSummaryEqualsTraceAverage) {
  ExperimentConfig c = toy_config("stm");
  c.models = {"stm"};
  c.traces = true;
  const auto result = run_experiment(c);
  ASSERT_EQ(result.summary.size(), 1u);
  const auto rows = evalkit::read_trace_csv(text::read_file((root_ / "stm" / "traces" / "stm.csv").string()));
  const auto per = evalkit::entropy_by_composition(rows);
  ASSERT_EQ(per.size(), 12u);
  double mean = 0;
  for (const auto& [name, e] : per) mean += e.h / 12;
  EXPECT_NEAR(result.summary[0].mean_h, mean, 1e-12);
  EXPECT_EQ(result.records.size(), 12u);
}

TEST_F(CliTest, EveryCompositionOncePerModel) {
  ExperimentConfig c = toy_config("all");
  c.models = {"ltm+", "both+"};
  const auto result = run_experiment(c);
  ASSERT_EQ(result.records.size(), 24u);
  std::map<std::string, int> seen;
  for (const auto& r : result.records) ++seen[r.model + "/" + r.composition];
  for (const auto& [key, n] : seen) EXPECT_EQ(n, 1) << key;
  ASSERT_EQ(result.summary.size(), 2u);
  EXPECT_EQ(result.summary[1].model, "both+");
  const std::string summary = text::read_file((root_ / "all" / "summary.csv").string());
  EXPECT_NE(summary.find("# seed: 1"), std::string::npos);
  EXPECT_NE(summary.find("not reproducible"), std::string::npos);
  EXPECT_NE(summary.find("both+,"), std::string::npos);
  const std::string regression = text::read_file((root_ / "all" / "regression.txt").string());
  EXPECT_NE(regression.find("Model: ltm+"), std::string::npos);
}

TEST_F(CliTest, SameConfigTwiceGivesIdenticalFiles) {
  ExperimentConfig a = toy_config("run1");
  ExperimentConfig b = toy_config("run2");
  a.traces = b.traces = true;
  a.threads = 1;
  b.threads = 4;
  run_experiment(a);
  run_experiment(b);
  for (const char* f : {"results.csv", "summary.csv", "regression.txt", "table1.csv", "folds.tsv", "corpus.tsv",
                        "vocabulary.tsv", "traces/ltm+.csv", "traces/both+.csv"}) {
    const std::string x = text::read_file((root_ / "run1" / f).string());
    const std::string y = text::read_file((root_ / "run2" / f).string());
    // The output directory is not part of any report, so the files match.
    EXPECT_EQ(x, y) << f;
  }
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CHORDLM_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, SubcommandPipelineAndExitCodes) {
  const std::string r = root_.string();
  EXPECT_EQ(run_cli("ingest " + r + "/midi --dataset toy --out " + r + "/slices"), 0);
  EXPECT_EQ(run_cli("encode " + r + "/slices --out " + r + "/corpus"), 0);
  EXPECT_EQ(run_cli("folds --corpus " + r + "/corpus"), 0);
  EXPECT_EQ(run_cli("eval --corpus " + r + "/corpus --set models=stm"), 1);  // no snapshots yet
  EXPECT_EQ(run_cli("train --corpus " + r + "/corpus"), 0);
  EXPECT_TRUE(fs::exists(root_ / "corpus" / "models" / "ltm_fold3.trie"));
  EXPECT_EQ(run_cli("eval --corpus " + r + "/corpus --set traces=on"), 0);
  EXPECT_EQ(run_cli("report --results " + r + "/corpus/results.csv --out " + r + "/report --set replicates=100"), 0);
  const std::string summary = text::read_file(r + "/report/summary.csv");
  EXPECT_NE(summary.find("\nstm,"), std::string::npos);

  // An external model enters through its trace file.
  EXPECT_EQ(run_cli("report --trace ext=" + r + "/corpus/traces/stm.csv --corpus " + r + "/corpus --out " + r +
                    "/ext --set replicates=100"),
            0);
  EXPECT_NE(text::read_file(r + "/ext/summary.csv").find("\next,"), std::string::npos);

  fs::create_directories(root_ / "empty");
  EXPECT_EQ(run_cli("ingest " + r + "/empty"), 1);
  EXPECT_EQ(run_cli("experiment --set folds=1"), 2);
  EXPECT_EQ(run_cli("experiment --set colour=red"), 2);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  EXPECT_EQ(run_cli("--help"), 0);
  fs::remove_all(root_ / "corpus" / "models");
  EXPECT_EQ(run_cli("eval --corpus " + r + "/corpus --regenerate"), 0);
}

}  // namespace
}  // namespace chordlm::cli
