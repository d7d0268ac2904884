#include "chordlm/ppm/context_trie.h"

#include <algorithm>

#include "chordlm/common/error.h"

namespace chordlm::ppm {

ContextTrie::ContextTrie(int alphabet_size, int max_depth)
    : alphabet_size_(alphabet_size), max_depth_(max_depth), nodes_(1) {
  if (alphabet_size < 1) throw ConfigError("alphabet size must be positive");
  if (max_depth < 0) throw ConfigError("max depth must be non-negative");
}

ContextTrie::NodeId ContextTrie::child(NodeId node, int symbol) const {
  const auto& edges = nodes_[static_cast<std::size_t>(node)].children;
  auto it = std::lower_bound(edges.begin(), edges.end(), symbol,
                             [](const Edge& e, int s) { return e.symbol < s; });
  return (it != edges.end() && it->symbol == symbol) ? it->node : kNone;
}

ContextTrie::NodeId ContextTrie::child_or_create(NodeId node, int symbol) {
  auto& edges = nodes_[static_cast<std::size_t>(node)].children;
  auto it = std::lower_bound(edges.begin(), edges.end(), symbol,
                             [](const Edge& e, int s) { return e.symbol < s; });
  if (it != edges.end() && it->symbol == symbol) return it->node;
  const auto id = static_cast<NodeId>(nodes_.size());
  edges.insert(it, Edge{symbol, id});
  nodes_.emplace_back();  // may reallocate; `edges` is not used past this point
  return id;
}

ContextTrie::NodeId ContextTrie::find(std::span<const int> ngram) const {
  NodeId node = kRoot;
  for (int s : ngram) {
    node = child(node, s);
    if (node == kNone) return kNone;
  }
  return node;
}

std::int64_t ContextTrie::continuation_total(NodeId node) const {
  std::int64_t n = 0;
  for (const Edge& e : children(node)) n += nodes_[static_cast<std::size_t>(e.node)].count;
  return n;
}

void ContextTrie::check_symbol(int symbol) const {
  if (symbol < 0 || symbol >= alphabet_size_) {
    throw InputError("token " + std::to_string(symbol) + " outside the alphabet of size " +
                     std::to_string(alphabet_size_));
  }
}

void ContextTrie::advance(Cursor& cursor, int symbol) const {
  std::vector<NodeId> next{kRoot};
  for (NodeId ctx : cursor.nodes_) {
    if (max_depth_ != kUnbounded && static_cast<int>(next.size()) >= max_depth_) break;
    NodeId c = child(ctx, symbol);
    if (c == kNone) break;
    next.push_back(c);
  }
  cursor.nodes_ = std::move(next);
}

void ContextTrie::update(Cursor& cursor, int symbol, int lowest_order) {
  check_symbol(symbol);
  ++nodes_[kRoot].count;
  std::vector<NodeId> next{kRoot};
  for (std::size_t k = 0; k < cursor.nodes_.size(); ++k) {
    if (max_depth_ != kUnbounded && static_cast<int>(k) + 1 > max_depth_) break;
    NodeId c = child_or_create(cursor.nodes_[k], symbol);
    if (static_cast<int>(k) >= lowest_order) ++nodes_[static_cast<std::size_t>(c)].count;
    if (max_depth_ == kUnbounded || static_cast<int>(k) + 1 < max_depth_) next.push_back(c);
  }
  cursor.nodes_ = std::move(next);
}

int ContextTrie::exclusion_floor(const Cursor& cursor, int symbol) const {
  for (int k = cursor.longest(); k >= 0; --k) {
    NodeId c = child(cursor.nodes_[static_cast<std::size_t>(k)], symbol);
    if (c != kNone && count(c) > 0) return k;
  }
  return 0;
}

void ContextTrie::train(std::span<const int> sequence, bool update_exclusion) {
  for (int s : sequence) check_symbol(s);
  Cursor cursor;
  for (int s : sequence) update(cursor, s, update_exclusion ? exclusion_floor(cursor, s) : 0);
}

bool ContextTrie::operator==(const ContextTrie& other) const {
  return to_text() == other.to_text();
}

}  // namespace chordlm::ppm
