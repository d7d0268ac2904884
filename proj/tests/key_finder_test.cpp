#include "chordlm/keyscape/key_finder.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chordlm/common/error.h"
#include "chordlm/ingest/expansion.h"
#include "chordlm/ingest/midi.h"
#include "chordlm/keyscape/profiles.h"
#include "test_util.h"

namespace chordlm::keyscape {
namespace {

using ingest::NoteEvent;
using ingest::SliceStream;

SliceStream stream_of(std::vector<NoteEvent> notes) {
  SliceStream s;
  s.composition = "t";
  s.dataset = "d";
  s.notes = std::move(notes);
  s.slices = ingest::full_expand(s.notes);
  return s;
}

// Two-pass textbook Pearson correlation.
double pearson_oracle(const PitchClassVector& a, const PitchClassVector& b) {
  double ma = 0, mb = 0;
  for (int i = 0; i < 12; ++i) ma += a[i] / 12;
  for (int i = 0; i < 12; ++i) mb += b[i] / 12;
  double cov = 0, va = 0, vb = 0;
  for (int i = 0; i < 12; ++i) cov += (a[i] - ma) * (b[i] - mb);
  for (int i = 0; i < 12; ++i) va += (a[i] - ma) * (a[i] - ma);
  for (int i = 0; i < 12; ++i) vb += (b[i] - mb) * (b[i] - mb);
  return cov / std::sqrt(va) / std::sqrt(vb);
}

// Histogram by exact integration on a 1/60-beat grid.
PitchClassVector histogram_oracle(const SliceStream& s, const Rational& center) {
  PitchClassVector h{};
  const Rational step(1, 60);
  for (Rational t = center - 8; t < center + 8; t += step) {
    for (const auto& n : s.notes) {
      if (n.onset <= t && t < n.offset()) h[n.pitch % 12] += to_double(step);
    }
  }
  return h;
}

// All 24 keys scored independently; strict improvement keeps the earliest
// (lowest tonic, major before minor).
KeyEstimate argmax_oracle(const PitchClassVector& h, const KeyProfile& p) {
  KeyEstimate best{-1, Mode::kMajor, -2.0};
  for (int tonic = 0; tonic < 12; ++tonic) {
    for (Mode mode : {Mode::kMajor, Mode::kMinor}) {
      PitchClassVector rotated{};
      for (int pc = 0; pc < 12; ++pc) rotated[(pc + tonic) % 12] = (mode == Mode::kMajor ? p.major : p.minor)[pc];
      const double r = pearson_oracle(h, rotated);
      if (r > best.score) best = {tonic, mode, r};
    }
  }
  return best;
}

std::vector<NoteEvent> random_notes(std::mt19937_64& rng, int n) {
  std::vector<NoteEvent> notes;
  for (int i = 0; i < n; ++i) {
    notes.push_back({Rational(static_cast<long>(rng() % 96), static_cast<long>(1 + rng() % 6)),
                     Rational(static_cast<long>(1 + rng() % 12), static_cast<long>(1 + rng() % 6)),
                     static_cast<int>(40 + rng() % 40), 0});
  }
  return notes;
}

TEST(PearsonTest, MatchesTwoPassOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 500; ++trial) {
    PitchClassVector a{}, b{};
    for (int i = 0; i < 12; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    ASSERT_NEAR(pearson(a, b), pearson_oracle(a, b), 1e-12);
  }
}

TEST(PearsonTest, ConstantInputIsUndefined) {
  PitchClassVector flat{};
  flat.fill(2.0);
  EXPECT_THROW(pearson(flat, default_profile().major), UndefinedCorrelation);
}

TEST(WindowTest, DurationWeightsClipToTheWindow) {
  // C4 from -10 to 10 overlaps [-8, 8) for 16 beats; E4 at 7 for 4 beats overlaps 1.
  const auto s = stream_of({{Rational(-10), Rational(20), 60, 0}, {Rational(7), Rational(4), 64, 0}});
  const auto h = window_histogram(s, Rational(0));
  EXPECT_DOUBLE_EQ(h[0], 16.0);
  EXPECT_DOUBLE_EQ(h[4], 1.0);
  WindowOptions count;
  count.weighting = Weighting::kCount;
  const auto c = window_histogram(s, Rational(0), count);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_DOUBLE_EQ(c[4], 1.0);
}

TEST(WindowTest, WindowIsHalfOpen) {
  const auto s = stream_of({{Rational(8), Rational(1), 62, 0}, {Rational(-9), Rational(1), 64, 0}});
  const auto h = window_histogram(s, Rational(0));
  EXPECT_EQ(h[2], 0.0);  // starts at the excluded upper bound
  EXPECT_EQ(h[4], 0.0);  // ends exactly at the lower bound
}

TEST(WindowTest, MatchesGridIntegrationOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = stream_of(random_notes(rng, 15));
    for (const auto& slice : s.slices) {
      const auto got = window_histogram(s, slice.onset);
      const auto want = histogram_oracle(s, slice.onset);
      for (int pc = 0; pc < 12; ++pc) ASSERT_NEAR(got[pc], want[pc], 1e-9);
    }
  }
}

TEST(KeyTest, MatchesTwentyFourKeyEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 5);
  for (const KeyProfile& profile : builtin_profiles()) {
    for (int trial = 0; trial < 500; ++trial) {
      PitchClassVector h{};
      for (double& x : h) x = u(rng);
      const auto got = estimate_key(h, profile);
      const auto want = argmax_oracle(h, profile);
      ASSERT_TRUE(got.has_value());
      ASSERT_EQ(got->tonic, want.tonic);
      ASSERT_EQ(got->mode, want.mode);
      ASSERT_NEAR(got->score, want.score, 1e-12);
    }
  }
}

TEST(KeyTest, ScalesFindTheirKeys) {
  PitchClassVector c_major{};
  for (int pc : {0, 2, 4, 5, 7, 9, 11}) c_major[pc] = 1;
  c_major[0] = 3;
  c_major[7] = 2;
  c_major[4] = 2;
  auto key = estimate_key(c_major, default_profile());
  ASSERT_TRUE(key);
  EXPECT_EQ(key->tonic, 0);
  EXPECT_EQ(key->mode, Mode::kMajor);

  PitchClassVector a_minor{};
  for (int pc : {9, 11, 0, 2, 4, 5, 8}) a_minor[pc] = 1;
  a_minor[9] = 3;
  a_minor[4] = 2;
  a_minor[0] = 2;
  key = estimate_key(a_minor, default_profile());
  ASSERT_TRUE(key);
  EXPECT_EQ(key->tonic, 9);
  EXPECT_EQ(key->mode, Mode::kMinor);
}

TEST(KeyTest, TranspositionMovesTheTonic) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    PitchClassVector h{};
    for (double& x : h) x = u(rng);
    const int k = static_cast<int>(rng() % 12);
    PitchClassVector shifted{};
    for (int pc = 0; pc < 12; ++pc) shifted[(pc + k) % 12] = h[pc];
    const auto a = estimate_key(h, default_profile());
    const auto b = estimate_key(shifted, default_profile());
    ASSERT_EQ((a->tonic + k) % 12, b->tonic);
    ASSERT_EQ(a->mode, b->mode);
  }
}

TEST(KeyTest, TiesGoToLowestTonicThenMajor) {
  KeyProfile periodic{"periodic", {}, {}};
  for (int pc = 0; pc < 12; ++pc) periodic.major[pc] = periodic.minor[pc] = pc % 6 == 0 ? 5 : (pc % 2 ? 1 : 2);
  PitchClassVector h{};
  for (int pc = 0; pc < 12; ++pc) h[pc] = periodic.major[(pc + 12 - 3) % 12];
  const auto key = estimate_key(h, periodic);
  ASSERT_TRUE(key);
  EXPECT_EQ(key->tonic, 3);  // 3 and 9 tie in both modes
  EXPECT_EQ(key->mode, Mode::kMajor);
}

TEST(KeyTest, ConstantHistogramHasNoKey) {
  PitchClassVector h{};
  EXPECT_FALSE(estimate_key(h, default_profile()).has_value());
  h.fill(1.5);
  EXPECT_FALSE(estimate_key(h, default_profile()).has_value());
}

std::vector<NoteEvent> cluster(Rational at) {
  std::vector<NoteEvent> out;
  for (int p = 60; p < 72; ++p) out.push_back({at, Rational(1), p, 0});
  return out;
}

TEST(KeyTraceTest, SilentWindowReusesPreviousKey) {
  std::vector<NoteEvent> notes = {{Rational(0), Rational(1), 67, 0}, {Rational(0), Rational(1), 71, 0},
                                  {Rational(0), Rational(1), 74, 0}, {Rational(0), Rational(2), 55, 0}};
  for (const auto& n : cluster(Rational(30))) notes.push_back(n);
  const auto trace = estimate_keys(stream_of(notes), default_profile());
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0].source, KeySource::kWindow);
  EXPECT_EQ(trace[1].source, KeySource::kPrevious);
  EXPECT_EQ(trace[1].key, trace[0].key);
}

TEST(KeyTraceTest, FirstOnsetFallsBackToWholePieceThenC) {
  std::vector<NoteEvent> notes = cluster(Rational(0));
  for (int p : {62, 66, 69}) notes.push_back({Rational(30), Rational(4), p, 0});
  const auto trace = estimate_keys(stream_of(notes), default_profile());
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0].source, KeySource::kWholePiece);
  EXPECT_EQ(trace[0].key.tonic, estimate_key(whole_piece_histogram(stream_of(notes)), default_profile())->tonic);

  const auto flat = estimate_keys(stream_of(cluster(Rational(0))), default_profile());
  ASSERT_EQ(flat.size(), 1u);
  EXPECT_EQ(flat[0].source, KeySource::kDefault);
  EXPECT_EQ(flat[0].key.tonic, 0);
  EXPECT_EQ(flat[0].key.mode, Mode::kMajor);
}

TEST(KeyTraceTest, BachOpeningIsInGMajor) {
  const auto parsed = ingest::parse_midi_file(testing::repo_data("bach_chorales/r001_bwv269.mid"));
  const auto s = stream_of(parsed.events);
  const auto key = estimate_key(s, Rational(0), default_profile());
  ASSERT_TRUE(key);
  EXPECT_EQ(key->tonic, 7);
  EXPECT_EQ(key->mode, Mode::kMajor);
}

TEST(KeyTraceTest, CsvLayout) {
  std::vector<KeyTraceEntry> trace = {{Rational(5, 2), {7, Mode::kMinor, 0.5}, KeySource::kWindow}};
  EXPECT_EQ(key_trace_csv(trace), "onset,tonic,mode,r\n5/2,7,minor,0.500000\n");
}

TEST(ProfileTest, BuiltinsAndFiles) {
  ASSERT_EQ(builtin_profiles().size(), 2u);
  EXPECT_EQ(default_profile().name, "albrecht-shanahan");
  const auto from_file = load_profiles(testing::repo_data("key_profiles.txt"));
  ASSERT_EQ(from_file.size(), builtin_profiles().size());
  for (std::size_t i = 0; i < from_file.size(); ++i) {
    EXPECT_EQ(from_file[i].name, builtin_profiles()[i].name);
    EXPECT_EQ(from_file[i].major, builtin_profiles()[i].major);
    EXPECT_EQ(from_file[i].minor, builtin_profiles()[i].minor);
  }
  EXPECT_EQ(resolve_profile("krumhansl-kessler").name, "krumhansl-kessler");
  EXPECT_EQ(resolve_profile(testing::repo_data("key_profiles.txt") + ":krumhansl-kessler").major,
            resolve_profile("krumhansl-kessler").major);
  EXPECT_THROW(resolve_profile("no-such-profile"), ConfigError);
  EXPECT_THROW(parse_profiles("short 1 2 3\n"), InputError);
}

}  // namespace
}  // namespace chordlm::keyscape
