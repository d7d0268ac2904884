#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chordlm::ppm {

// Counts of every n-gram seen in training, stored as a trie. The node reached
// by the path a1..ak holds how often symbol ak followed the context a1..ak-1,
// so the children of a context node are its continuation counts.
//
// Node existence is suffix-closed: if a1..ak is present so is a2..ak. Nodes
// can carry a zero count when update exclusion skipped them.
class ContextTrie {
 public:
  using NodeId = std::int32_t;
  static constexpr NodeId kNone = -1;
  static constexpr NodeId kRoot = 0;
  static constexpr int kUnbounded = 0;

  struct Edge {
    std::int32_t symbol;
    NodeId node;
  };

  // `max_depth` caps the stored n-gram length (kUnbounded for no cap).
  explicit ContextTrie(int alphabet_size, int max_depth = kUnbounded);

  int alphabet_size() const { return alphabet_size_; }
  int max_depth() const { return max_depth_; }
  std::size_t node_count() const { return nodes_.size(); }

  // Number of symbols inserted (the root's count).
  std::int64_t total() const { return nodes_[kRoot].count; }
  std::int64_t count(NodeId node) const { return nodes_[static_cast<std::size_t>(node)].count; }
  std::span<const Edge> children(NodeId node) const { return nodes_[static_cast<std::size_t>(node)].children; }
  NodeId child(NodeId node, int symbol) const;

  // Node for an n-gram, or kNone.
  NodeId find(std::span<const int> ngram) const;

  // Total continuation count of the context ending at `node`.
  std::int64_t continuation_total(NodeId node) const;

  // Suffix contexts of a history: nodes()[k] is the node of the length-k
  // suffix, for every k whose node exists (and k < max depth).
  class Cursor {
   public:
    Cursor() : nodes_{kRoot} {}
    std::span<const NodeId> nodes() const { return nodes_; }
    int longest() const { return static_cast<int>(nodes_.size()) - 1; }
    void reset() { nodes_.assign(1, kRoot); }

   private:
    friend class ContextTrie;
    std::vector<NodeId> nodes_;
  };

  // Moves the cursor past `symbol` without modifying the trie.
  void advance(Cursor& cursor, int symbol) const;

  // Counts `symbol` after each context in the cursor whose order is at least
  // `lowest_order`, creating nodes as needed, then moves the cursor past it.
  // The root total always grows by one.
  void update(Cursor& cursor, int symbol, int lowest_order = 0);

  // Highest order whose context has already seen `symbol` (0 if none). Under
  // update exclusion only orders at or above it are counted.
  int exclusion_floor(const Cursor& cursor, int symbol) const;

  // Incremental training on one sequence; contexts never span sequences.
  // Throws InputError for ids outside the alphabet.
  void train(std::span<const int> sequence, bool update_exclusion = false);

  void check_symbol(int symbol) const;

  // Versioned text snapshot. Nodes are written depth-first with children in
  // ascending symbol order, so equal tries serialize identically.
  std::string to_text() const;
  static ContextTrie from_text(std::string_view content);

  bool operator==(const ContextTrie& other) const;

 private:
  struct Node {
    std::int64_t count = 0;
    std::vector<Edge> children;  // sorted by symbol
  };

  NodeId child_or_create(NodeId node, int symbol);

  int alphabet_size_;
  int max_depth_;
  std::vector<Node> nodes_;
};

}  // namespace chordlm::ppm
