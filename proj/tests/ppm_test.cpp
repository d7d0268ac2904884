#include "chordlm/ppm/model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "chordlm/common/error.h"
#include "chordlm/ppm/context_trie.h"
#include "oracles/ppm_oracle.h"

namespace chordlm::ppm {
namespace {

using Seq = std::vector<int>;

double sum(const std::vector<double>& p) {
  double s = 0;
  for (double x : p) s += x;
  return s;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Seq random_seq(std::mt19937_64& rng, int alphabet, int max_len, int min_len = 0) {
  Seq s(static_cast<std::size_t>(min_len + static_cast<int>(rng() % static_cast<unsigned>(max_len - min_len + 1))));
  for (int& x : s) x = static_cast<int>(rng() % static_cast<unsigned>(alphabet));
  return s;
}

ModelConfig config(ModelMode mode, std::optional<int> bound = std::nullopt) {
  ModelConfig c;
  c.mode = mode;
  c.order_bound = bound;
  return c;
}

TEST(ContextTrieTest, CountsMatchBruteForceNgrams) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int v = 2 + static_cast<int>(rng() % 3);
    std::vector<Seq> train;
    ContextTrie trie(v);
    for (int i = 0; i < 3; ++i) {
      train.push_back(random_seq(rng, v, 10));
      trie.train(train.back());
    }
    std::map<Seq, long> brute;
    long total = 0;
    for (const auto& s : train) {
      total += static_cast<long>(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j <= s.size(); ++j) ++brute[Seq(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(j))];
      }
    }
    ASSERT_EQ(trie.total(), total);
    ASSERT_EQ(trie.node_count(), brute.size() + 1);
    for (const auto& [gram, count] : brute) {
      const auto node = trie.find(gram);
      ASSERT_NE(node, ContextTrie::kNone);
      ASSERT_EQ(trie.count(node), count);
      // A context is followed by something at most as often as it occurs.
      ASSERT_LE(trie.continuation_total(node), trie.count(node));
    }
  }
}

TEST(ContextTrieTest, TrainingOrderDoesNotMatter) {
  const Seq a = {0, 1, 2, 1, 0}, b = {2, 2, 1};
  ContextTrie x(3), y(3);
  x.train(a);
  x.train(b);
  y.train(b);
  y.train(a);
  EXPECT_EQ(x, y);
  EXPECT_EQ(x.to_text(), y.to_text());
}

TEST(ContextTrieTest, MaxDepthCapsStoredNgrams) {
  ContextTrie trie(2, 2);
  trie.train(Seq{0, 1, 0, 1, 1});
  EXPECT_NE(trie.find(Seq{0, 1}), ContextTrie::kNone);
  EXPECT_EQ(trie.find(Seq{0, 1, 0}), ContextTrie::kNone);
  EXPECT_EQ(trie.count(trie.find(Seq{0, 1})), 2);
}

TEST(ContextTrieTest, UpdateExclusionSkipsLowerOrders) {
  ContextTrie full(1), excl(1);
  full.train(Seq{0, 0, 0});
  excl.train(Seq{0, 0, 0}, true);
  EXPECT_EQ(full.count(full.find(Seq{0})), 3);
  EXPECT_EQ(excl.count(excl.find(Seq{0})), 2);
  EXPECT_EQ(excl.total(), 3);
}

TEST(ContextTrieTest, SnapshotRoundTrip) {
  std::mt19937_64 rng(5);
  for (int depth : {0, 1, 3}) {
    ContextTrie trie(4, depth);
    for (int i = 0; i < 5; ++i) trie.train(random_seq(rng, 4, 15));
    const std::string text = trie.to_text();
    const ContextTrie back = ContextTrie::from_text(text);
    EXPECT_EQ(back, trie);
    EXPECT_EQ(back.max_depth(), depth);
    EXPECT_EQ(back.node_count(), trie.node_count());
  }
  EXPECT_THROW(ContextTrie::from_text("#chordlm-trie v1\nalphabet 2\n"), InputError);
  EXPECT_THROW(ContextTrie::from_text("garbage"), InputError);
}

TEST(ContextTrieTest, RejectsSymbolsOutsideTheAlphabet) {
  ContextTrie trie(3);
  EXPECT_THROW(trie.train(Seq{0, 3}), InputError);
  EXPECT_THROW(trie.train(Seq{-1}), InputError);
  EXPECT_EQ(trie.total(), 0);
}

TEST(PpmTest, MethodCHandExample) {
  // "aaab", order 0 only: a:3 b:1, t = 2, n = 4, escape 2/6.
  ContextTrie trie(2);
  trie.train(Seq{0, 0, 0, 1});
  const auto p = predict(trie, Seq{}, config(ModelMode::kLtm, 0));
  EXPECT_NEAR(p[0], 3.0 / 6 + 2.0 / 6 * 0.5, 1e-15);
  EXPECT_NEAR(p[1], 1.0 / 6 + 2.0 / 6 * 0.5, 1e-15);
}

TEST(PpmTest, EmptyModelIsUniform) {
  ContextTrie trie(7);
  const auto p = predict(trie, Seq{1, 2}, config(ModelMode::kLtm));
  for (double x : p) EXPECT_DOUBLE_EQ(x, 1.0 / 7);
}

TEST(PpmTest, DeterministicContextStartsTheBlend) {
  // After "a b", the order-1 context "b" always continued with "a": PPM*
  // starts there even though "a b" (order 2) also matched.
  ContextTrie trie(3);
  trie.train(Seq{0, 1, 0, 2, 0, 1, 0});
  const Seq history = {0, 1};
  ContextTrie::Cursor cursor;
  for (int s : history) trie.advance(cursor, s);
  const CountSource src{&trie, &cursor};
  EXPECT_EQ(start_order(std::span<const CountSource>(&src, 1), config(ModelMode::kLtm)), 1);
  EXPECT_EQ(start_order(std::span<const CountSource>(&src, 1), config(ModelMode::kLtm, 0)), 0);
}

// Every sequence up to length 8 over three symbols: the trie-based model must
// equal the recursive definition, both online (short-term) and after training
// on the whole sequence.
TEST(PpmTest, ExhaustiveAgreementWithRecursiveOracle) {
  double worst = 0, worst_sum = 0;
  Seq s;
  std::function<void(int)> walk = [&](int remaining) {
    const ContextTrie empty(3);
    const auto online = run_sequence(s, config(ModelMode::kStm), empty);
    ContextTrie trained(3);
    trained.train(s);
    const oracle::PpmOracle whole(3, {s});
    for (std::size_t i = 0; i <= s.size(); ++i) {
      const Seq prefix(s.begin(), s.begin() + static_cast<long>(i));
      const auto p = predict(trained, prefix, config(ModelMode::kLtm));
      worst = std::max(worst, max_diff(p, whole.predict(prefix)));
      worst_sum = std::max(worst_sum, std::abs(sum(p) - 1));
      if (i < s.size()) {
        const oracle::PpmOracle stm(3, {prefix});
        worst = std::max(worst, std::abs(online[i] - stm.predict(prefix)[static_cast<std::size_t>(s[i])]));
      }
    }
    if (remaining == 0) return;
    for (int x = 0; x < 3; ++x) {
      s.push_back(x);
      walk(remaining - 1);
      s.pop_back();
    }
  };
  walk(8);
  EXPECT_LT(worst, 1e-9);
  EXPECT_LT(worst_sum, 1e-9);
}

TEST(PpmTest, RandomAgreementWithRecursiveOracle) {
  std::mt19937_64 rng(2718);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 5);
    const int depth = trial % 4 == 0 ? static_cast<int>(1 + rng() % 4) : 0;
    std::optional<int> bound;
    if (trial % 3 == 1) bound = static_cast<int>(rng() % 4);
    std::vector<Seq> train;
    ContextTrie trie(v, depth);
    for (unsigned i = 0, n = 1 + static_cast<unsigned>(rng() % 3); i < n; ++i) {
      train.push_back(random_seq(rng, v, 12));
      trie.train(train.back());
    }
    const Seq context = random_seq(rng, v, 4);
    const auto p = predict(trie, context, config(ModelMode::kLtm, bound));
    const auto q = oracle::PpmOracle(v, train, bound, depth).predict(context);
    worst = std::max(worst, max_diff(p, q));
    ASSERT_NEAR(sum(p), 1.0, 1e-9);
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(PpmTest, OnlineModelsMatchOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int v = 2 + static_cast<int>(rng() % 4);
    std::vector<Seq> train;
    ContextTrie base(v);
    for (int i = 0; i < 3; ++i) {
      train.push_back(random_seq(rng, v, 12, 1));
      base.train(train.back());
    }
    const Seq test = random_seq(rng, v, 12, 1);
    const auto ltm_plus = run_sequence(test, config(ModelMode::kLtmPlus), base);
    const auto ltm = run_sequence(test, config(ModelMode::kLtm), base);
    const auto stm = run_sequence(test, config(ModelMode::kStm), base);
    const auto both = run_sequence(test, config(ModelMode::kBothPlus), base);
    for (std::size_t i = 0; i < test.size(); ++i) {
      const Seq prefix(test.begin(), test.begin() + static_cast<long>(i));
      auto plus_train = train;
      plus_train.push_back(prefix);
      const auto p_plus = oracle::PpmOracle(v, plus_train).predict(prefix);
      const auto p_ltm = oracle::PpmOracle(v, train).predict(prefix);
      const auto p_stm = oracle::PpmOracle(v, {prefix}).predict(prefix);
      const auto p_both = oracle::combine({p_plus, p_stm}, 2.0);
      const auto x = static_cast<std::size_t>(test[i]);
      ASSERT_NEAR(ltm_plus[i], p_plus[x], 1e-9);
      ASSERT_NEAR(ltm[i], p_ltm[x], 1e-9);
      ASSERT_NEAR(stm[i], p_stm[x], 1e-9);
      ASSERT_NEAR(both[i], p_both[x], 1e-9);
    }
  }
}

TEST(PpmTest, EveryDistributionSumsToOne) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 2 + static_cast<int>(rng() % 6);
    ContextTrie base(v);
    base.train(random_seq(rng, v, 30, 1));
    const Seq test = random_seq(rng, v, 30, 1);
    for (auto mode : {ModelMode::kLtmPlus, ModelMode::kLtm, ModelMode::kStm, ModelMode::kBothPlus, ModelMode::kBoth}) {
      for (auto smoothing : {Smoothing::kInterpolated, Smoothing::kBackoff}) {
        for (bool exclusion : {false, true}) {
          ModelConfig c = config(mode);
          c.smoothing = smoothing;
          c.update_exclusion = exclusion;
          OnlineModel model(base, c);
          for (int x : test) {
            const auto p = model.predict();
            ASSERT_NEAR(sum(p), 1.0, 1e-9);
            for (double q : p) ASSERT_GT(q, 0.0);
            model.observe(x);
          }
        }
      }
    }
  }
}

TEST(PpmTest, BackoffUsesOnlyTheMatchedOrderForSeenSymbols) {
  // "aaab", order 0 bound: seen symbols take c / (n + t); nothing escapes
  // to the uniform order because every symbol was seen.
  ContextTrie trie(3);
  trie.train(Seq{0, 0, 0, 1});
  ModelConfig c = config(ModelMode::kLtm, 0);
  c.smoothing = Smoothing::kBackoff;
  const auto p = predict(trie, Seq{}, c);
  // Before renormalizing: a 3/6, b 1/6, c (escape) 2/6 * 1.
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 1.0 / 6, 1e-15);
  EXPECT_NEAR(p[2], 2.0 / 6, 1e-15);
}

TEST(PpmTest, PredictionPrecedesUpdate) {
  const ContextTrie empty(4);
  const auto p = run_sequence(Seq{2, 2}, config(ModelMode::kStm), empty);
  EXPECT_DOUBLE_EQ(p[0], 0.25);
  // After one "2": order 0 has c=1, n=1, t=1 -> 1/2 + 1/2 * 1/4.
  EXPECT_DOUBLE_EQ(p[1], 0.625);
}

TEST(CombineTest, MatchesDirectFormula) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.01, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t v = 2 + rng() % 20;
    std::vector<double> a(v), b(v);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const double sa = sum(a), sb = sum(b);
    for (auto& x : a) x /= sa;
    for (auto& x : b) x /= sb;
    for (double bias : {0.0, 1.0, 2.0, 3.5}) {
      const auto got = combine_geometric(a, b, bias);
      const auto want = oracle::combine({a, b}, bias);
      ASSERT_LT(max_diff(got, want), 1e-12);
    }
  }
}

TEST(CombineTest, FavorsTheMoreCertainModel) {
  const std::vector<double> sharp = {0.97, 0.01, 0.01, 0.01};
  const std::vector<double> flat = {0.25, 0.25, 0.25, 0.25};
  const auto c = combine_geometric(sharp, flat, 2.0);
  EXPECT_GT(c[0], 0.9);
  const auto same = combine_geometric(flat, flat, 2.0);
  for (double x : same) EXPECT_NEAR(x, 0.25, 1e-15);
}

TEST(ModelSpecTest, ParseAndFormat) {
  ModelConfig base;
  base.bias = 3;
  const auto c = parse_model_spec("both+", base);
  EXPECT_EQ(c.mode, ModelMode::kBothPlus);
  EXPECT_EQ(c.bias, 3);
  EXPECT_FALSE(c.order_bound);
  const auto f = parse_model_spec("ltm@2");
  EXPECT_EQ(f.mode, ModelMode::kLtm);
  EXPECT_EQ(f.order_bound, 2);
  for (const char* s : {"ltm+", "ltm", "stm", "both+", "both", "stm@0", "ltm+@5"}) {
    EXPECT_EQ(model_spec(parse_model_spec(s)), s);
  }
  EXPECT_THROW(parse_model_spec("lstm"), ConfigError);
  EXPECT_THROW(parse_model_spec("ltm@x"), ConfigError);
  EXPECT_THROW(parse_model_spec("ltm@-1"), ConfigError);
}

}  // namespace
}  // namespace chordlm::ppm
