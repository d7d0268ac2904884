#include <vector>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"
#include "chordlm/ppm/context_trie.h"

namespace chordlm::ppm {
namespace {

constexpr std::string_view kMagic = "#chordlm-trie v1";

}  // namespace

// Layout:
//   #chordlm-trie v1
//   alphabet <V>
//   max_depth <D>
//   root <count>
//   <depth> <symbol> <count>     one line per non-root node, depth-first
std::string ContextTrie::to_text() const {
  std::string out(kMagic);
  out += "\nalphabet " + std::to_string(alphabet_size_) + "\nmax_depth " + std::to_string(max_depth_) +
         "\nroot " + std::to_string(nodes_[kRoot].count) + "\n";
  struct Frame {
    NodeId node;
    int depth;
  };
  std::vector<Frame> stack;
  auto push_children = [&](NodeId node, int depth) {
    const auto& edges = nodes_[static_cast<std::size_t>(node)].children;
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) stack.push_back({it->node, depth + 1});
  };
  std::vector<std::int32_t> symbol_of(nodes_.size(), -1);
  for (const Node& n : nodes_) {
    for (const Edge& e : n.children) symbol_of[static_cast<std::size_t>(e.node)] = e.symbol;
  }
  push_children(kRoot, 0);
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    out += std::to_string(f.depth) + " " + std::to_string(symbol_of[static_cast<std::size_t>(f.node)]) + " " +
           std::to_string(nodes_[static_cast<std::size_t>(f.node)].count) + "\n";
    push_children(f.node, f.depth);
  }
  return out;
}

ContextTrie ContextTrie::from_text(std::string_view content) {
  auto lines = text::split(content, '\n');
  auto header = [&](std::size_t i, std::string_view key) -> long long {
    if (i >= lines.size()) throw InputError("trie snapshot truncated");
    auto f = text::split_ws(lines[i]);
    if (f.size() != 2 || f[0] != key) throw InputError("trie snapshot: expected '" + std::string(key) + "'");
    return text::parse_int(f[1], key);
  };
  if (lines.empty() || text::trim(lines[0]) != kMagic) throw InputError("not a trie snapshot");
  ContextTrie trie(static_cast<int>(header(1, "alphabet")), static_cast<int>(header(2, "max_depth")));
  trie.nodes_[kRoot].count = header(3, "root");

  std::vector<NodeId> path{kRoot};
  for (std::size_t i = 4; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    auto f = text::split_ws(lines[i]);
    if (f.size() != 3) throw InputError("trie snapshot line " + std::to_string(i + 1) + ": expected 3 fields");
    auto depth = text::parse_int(f[0], "depth");
    auto symbol = static_cast<int>(text::parse_int(f[1], "symbol"));
    auto count = text::parse_int(f[2], "count");
    if (depth < 1 || depth > static_cast<long long>(path.size())) {
      throw InputError("trie snapshot line " + std::to_string(i + 1) + ": bad depth");
    }
    trie.check_symbol(symbol);
    path.resize(static_cast<std::size_t>(depth));
    NodeId parent = path.back();
    const auto& siblings = trie.nodes_[static_cast<std::size_t>(parent)].children;
    if (!siblings.empty() && siblings.back().symbol >= symbol) {
      throw InputError("trie snapshot line " + std::to_string(i + 1) + ": children out of order");
    }
    NodeId node = trie.child_or_create(parent, symbol);
    trie.nodes_[static_cast<std::size_t>(node)].count = count;
    path.push_back(node);
  }
  return trie;
}

}  // namespace chordlm::ppm
