#include "chordlm/ppm/model.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::ppm {
namespace {

// Pooled continuation counts of one context order.
struct OrderStats {
  std::int64_t total = 0;
  int distinct = 0;
  std::vector<std::pair<int, std::int64_t>> counts;  // ascending symbol, count > 0
};

int deepest_order(std::span<const CountSource> sources, const ModelConfig& config) {
  int k = -1;
  for (const CountSource& s : sources) k = std::max(k, s.cursor->longest());
  if (config.order_bound) k = std::min(k, *config.order_bound);
  return k;
}

OrderStats gather(std::span<const CountSource> sources, int order) {
  OrderStats stats;
  for (const CountSource& s : sources) {
    if (s.cursor->longest() < order) continue;
    const auto node = s.cursor->nodes()[static_cast<std::size_t>(order)];
    std::vector<std::pair<int, std::int64_t>> merged;
    merged.reserve(stats.counts.size() + s.trie->children(node).size());
    auto a = stats.counts.begin();
    for (const ContextTrie::Edge& e : s.trie->children(node)) {
      const std::int64_t c = s.trie->count(e.node);
      if (c == 0) continue;
      while (a != stats.counts.end() && a->first < e.symbol) merged.push_back(*a++);
      if (a != stats.counts.end() && a->first == e.symbol) {
        merged.emplace_back(e.symbol, a->second + c);
        ++a;
      } else {
        merged.emplace_back(e.symbol, c);
      }
    }
    merged.insert(merged.end(), a, stats.counts.end());
    stats.counts = std::move(merged);
  }
  for (const auto& [sym, c] : stats.counts) stats.total += c;
  stats.distinct = static_cast<int>(stats.counts.size());
  return stats;
}

int choose_start(const std::vector<OrderStats>& stats, const ModelConfig& config) {
  int longest = -1;
  for (int k = static_cast<int>(stats.size()) - 1; k >= 0; --k) {
    if (stats[static_cast<std::size_t>(k)].total > 0) {
      longest = k;
      break;
    }
  }
  if (config.order_bound || longest < 0) return longest;
  for (int k = 0; k <= longest; ++k) {
    const OrderStats& s = stats[static_cast<std::size_t>(k)];
    if (s.total > 0 && s.distinct == 1) return k;
  }
  return longest;
}

std::vector<OrderStats> gather_all(std::span<const CountSource> sources, const ModelConfig& config) {
  std::vector<OrderStats> stats;
  const int deepest = deepest_order(sources, config);
  for (int k = 0; k <= deepest; ++k) stats.push_back(gather(sources, k));
  return stats;
}

PredictionDistribution blend_interpolated(const std::vector<OrderStats>& stats, int start, int alphabet_size) {
  PredictionDistribution dist(static_cast<std::size_t>(alphabet_size), 0.0);
  double weight = 1.0;
  for (int k = start; k >= 0; --k) {
    const OrderStats& s = stats[static_cast<std::size_t>(k)];
    if (s.total == 0) continue;
    const double denom = static_cast<double>(s.total + s.distinct);
    for (const auto& [sym, c] : s.counts) dist[static_cast<std::size_t>(sym)] += weight * static_cast<double>(c) / denom;
    weight *= static_cast<double>(s.distinct) / denom;
  }
  const double uniform = weight / alphabet_size;
  for (double& p : dist) p += uniform;
  return dist;
}

PredictionDistribution blend_backoff(const std::vector<OrderStats>& stats, int start, int alphabet_size) {
  PredictionDistribution dist(static_cast<std::size_t>(alphabet_size), 0.0);
  std::vector<char> excluded(static_cast<std::size_t>(alphabet_size), 0);
  int n_excluded = 0;
  double weight = 1.0;
  for (int k = start; k >= 0; --k) {
    std::int64_t total = 0;
    int distinct = 0;
    for (const auto& [sym, c] : stats[static_cast<std::size_t>(k)].counts) {
      if (excluded[static_cast<std::size_t>(sym)]) continue;
      total += c;
      ++distinct;
    }
    if (total == 0) continue;
    const double denom = static_cast<double>(total + distinct);
    for (const auto& [sym, c] : stats[static_cast<std::size_t>(k)].counts) {
      if (excluded[static_cast<std::size_t>(sym)]) continue;
      dist[static_cast<std::size_t>(sym)] = weight * static_cast<double>(c) / denom;
      excluded[static_cast<std::size_t>(sym)] = 1;
      ++n_excluded;
    }
    weight *= static_cast<double>(distinct) / denom;
  }
  if (n_excluded < alphabet_size) {
    const double uniform = weight / (alphabet_size - n_excluded);
    for (std::size_t x = 0; x < dist.size(); ++x) {
      if (!excluded[x]) dist[x] = uniform;
    }
  }
  double sum = 0;
  for (double p : dist) sum += p;
  for (double& p : dist) p /= sum;
  return dist;
}

int pooled_exclusion_floor(std::span<const CountSource> sources, int symbol) {
  int deepest = -1;
  for (const CountSource& s : sources) deepest = std::max(deepest, s.cursor->longest());
  for (int k = deepest; k >= 0; --k) {
    for (const CountSource& s : sources) {
      if (s.cursor->longest() < k) continue;
      auto c = s.trie->child(s.cursor->nodes()[static_cast<std::size_t>(k)], symbol);
      if (c != ContextTrie::kNone && s.trie->count(c) > 0) return k;
    }
  }
  return 0;
}

}  // namespace

std::string to_string(ModelMode mode) {
  switch (mode) {
    case ModelMode::kLtmPlus: return "ltm+";
    case ModelMode::kLtm: return "ltm";
    case ModelMode::kStm: return "stm";
    case ModelMode::kBothPlus: return "both+";
    case ModelMode::kBoth: return "both";
  }
  return "?";
}

std::string to_string(EscapeMethod) { return "C"; }

std::string to_string(Smoothing smoothing) {
  return smoothing == Smoothing::kInterpolated ? "interpolated" : "backoff";
}

ModelConfig parse_model_spec(const std::string& spec, const ModelConfig& base) {
  ModelConfig config = base;
  std::string name = spec;
  config.order_bound.reset();
  if (auto at = spec.find('@'); at != std::string::npos) {
    name = spec.substr(0, at);
    long long bound = 0;
    try {
      bound = text::parse_int(spec.substr(at + 1), "order bound");
    } catch (const InputError&) {
      throw ConfigError("invalid order bound in model '" + spec + "'");
    }
    if (bound < 0) throw ConfigError("negative order bound in model '" + spec + "'");
    config.order_bound = static_cast<int>(bound);
  }
  for (ModelMode m : {ModelMode::kLtmPlus, ModelMode::kLtm, ModelMode::kStm, ModelMode::kBothPlus, ModelMode::kBoth}) {
    if (to_string(m) == name) {
      config.mode = m;
      return config;
    }
  }
  throw ConfigError("unknown model '" + spec + "' (expected ltm+, ltm, stm, both+ or both)");
}

std::string model_spec(const ModelConfig& config) {
  std::string s = to_string(config.mode);
  if (config.order_bound) s += "@" + std::to_string(*config.order_bound);
  return s;
}

int start_order(std::span<const CountSource> sources, const ModelConfig& config) {
  return choose_start(gather_all(sources, config), config);
}

PredictionDistribution predict(std::span<const CountSource> sources, int alphabet_size, const ModelConfig& config) {
  const auto stats = gather_all(sources, config);
  const int start = choose_start(stats, config);
  if (config.smoothing == Smoothing::kBackoff) return blend_backoff(stats, start, alphabet_size);
  return blend_interpolated(stats, start, alphabet_size);
}

PredictionDistribution predict(const ContextTrie& trie, std::span<const int> context, const ModelConfig& config) {
  ContextTrie::Cursor cursor;
  for (int s : context) {
    trie.check_symbol(s);
    trie.advance(cursor, s);
  }
  const CountSource source{&trie, &cursor};
  return predict(std::span<const CountSource>(&source, 1), trie.alphabet_size(), config);
}

double entropy_bits(std::span<const double> distribution) {
  double h = 0;
  for (double p : distribution) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

PredictionDistribution combine_geometric(std::span<const PredictionDistribution> distributions, double bias) {
  require_invariant(!distributions.empty(), "combine_geometric: no distributions");
  const std::size_t size = distributions.front().size();
  for (const auto& d : distributions) require_invariant(d.size() == size, "combine_geometric: alphabet mismatch");
  if (size == 1) return distributions.front();

  const double max_entropy = std::log2(static_cast<double>(size));
  std::vector<double> weights;
  double weight_sum = 0;
  for (const auto& d : distributions) {
    const double relative = entropy_bits(d) / max_entropy;
    weights.push_back(std::pow(relative, -bias));
    weight_sum += weights.back();
  }
  for (double& w : weights) w /= weight_sum;

  PredictionDistribution out(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    double log_p = 0;
    for (std::size_t m = 0; m < distributions.size(); ++m) log_p += weights[m] * std::log(distributions[m][x]);
    out[x] = log_p;
  }
  // Normalize in log space to avoid underflow.
  const double top = *std::max_element(out.begin(), out.end());
  double sum = 0;
  for (double& v : out) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : out) v /= sum;
  return out;
}

PredictionDistribution combine_geometric(const PredictionDistribution& p, const PredictionDistribution& q,
                                         double bias) {
  const PredictionDistribution both[] = {p, q};
  return combine_geometric(std::span<const PredictionDistribution>(both), bias);
}

OnlineModel::OnlineModel(const ContextTrie& base, const ModelConfig& config)
    : base_(base),
      config_(config),
      ltm_delta_(base.alphabet_size(), base.max_depth()),
      stm_(base.alphabet_size(), base.max_depth()) {}

PredictionDistribution OnlineModel::predict_ltm() const {
  const CountSource sources[] = {{&base_, &base_cursor_}, {&ltm_delta_, &ltm_delta_cursor_}};
  const std::size_t n = config_.ltm_online() ? 2 : 1;
  return ppm::predict(std::span<const CountSource>(sources, n), base_.alphabet_size(), config_);
}

PredictionDistribution OnlineModel::predict_stm() const {
  const CountSource source{&stm_, &stm_cursor_};
  return ppm::predict(std::span<const CountSource>(&source, 1), base_.alphabet_size(), config_);
}

PredictionDistribution OnlineModel::predict() const {
  switch (config_.mode) {
    case ModelMode::kLtmPlus:
    case ModelMode::kLtm:
      return predict_ltm();
    case ModelMode::kStm:
      return predict_stm();
    case ModelMode::kBothPlus:
    case ModelMode::kBoth:
      return combine_geometric(predict_ltm(), predict_stm(), config_.bias);
  }
  throw InvariantError("unhandled model mode");
}

void OnlineModel::observe(int symbol) {
  base_.check_symbol(symbol);
  if (config_.ltm_online()) {
    int floor = 0;
    if (config_.update_exclusion) {
      const CountSource sources[] = {{&base_, &base_cursor_}, {&ltm_delta_, &ltm_delta_cursor_}};
      floor = pooled_exclusion_floor(sources, symbol);
    }
    ltm_delta_.update(ltm_delta_cursor_, symbol, floor);
  }
  if (config_.uses_ltm()) base_.advance(base_cursor_, symbol);
  if (config_.uses_stm()) {
    stm_.update(stm_cursor_, symbol, config_.update_exclusion ? stm_.exclusion_floor(stm_cursor_, symbol) : 0);
  }
}

std::vector<double> run_sequence(std::span<const int> test, const ModelConfig& config, const ContextTrie& base) {
  OnlineModel model(base, config);
  std::vector<double> probabilities;
  probabilities.reserve(test.size());
  for (int symbol : test) {
    base.check_symbol(symbol);
    probabilities.push_back(model.predict()[static_cast<std::size_t>(symbol)]);
    model.observe(symbol);
  }
  return probabilities;
}

}  // namespace chordlm::ppm
