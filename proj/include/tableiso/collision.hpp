#pragma once

// Generic bidirectional collision detection over choice trees. One side
// enumerates all depth-d prefixes extended arbitrarily to leaves, the other
// enumerates all completions of a single depth-d prefix; a common leaf
// fingerprint is the collision. detect_common intersects the two fingerprint
// streams in delta-sized chunks so at most 2*delta fingerprints are ever
// resident; streams are re-enumerated per chunk round rather than cached.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tableiso/errors.hpp"

namespace tableiso {

template <typename T>
concept ChoiceTree = requires(const T& t, const typename T::Label& label) {
  typename T::Label;
  { t.root() } -> std::convertible_to<typename T::Label>;
  { t.children(label) } -> std::convertible_to<std::vector<typename T::Label>>;
  { t.is_leaf(label) } -> std::convertible_to<bool>;
};

// A path is the label sequence below the root; the empty path is the root.
template <typename Tree>
using TreePath = std::vector<typename Tree::Label>;

// Opaque byte-string identity of a leaf; equality is byte-exact.
struct Fingerprint {
  std::string bytes;
  auto operator<=>(const Fingerprint&) const = default;
};

// Chunk budget for the time-space tradeoff. delta counts fingerprints
// resident per side; kUnbounded means a single chunk round.
struct ChunkPlan {
  static constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

  std::size_t delta = kUnbounded;

  static ChunkPlan unbounded() { return ChunkPlan{}; }

  static ChunkPlan with_delta(std::size_t d) {
    if (d == 0) fail(errc::invalid_order, "chunk delta must be >= 1");
    return ChunkPlan{d};
  }

  bool is_unbounded() const { return delta == kUnbounded; }

  // clamp so stats stay meaningful for unbounded plans
  std::size_t effective_delta(std::size_t f, std::size_t g) const {
    std::size_t top = std::max<std::size_t>(std::max(f, g), 1);
    return std::min(delta, top);
  }
};

struct TradeoffStats {
  std::uint64_t chunk_pairs = 0;
  std::uint64_t peak_space_units = 0;
};

// ceil(f/delta) * ceil(g/delta) chunk pairs, 2*delta resident units.
inline TradeoffStats tradeoffstats_impl(std::uint64_t f, std::uint64_t g, std::size_t delta) {
  TradeoffStats s;
  std::uint64_t fr = (f + delta - 1) / delta;
  std::uint64_t gr = (g + delta - 1) / delta;
  s.chunk_pairs = fr * gr;
  s.peak_space_units = 2 * static_cast<std::uint64_t>(delta);
  return s;
}

inline TradeoffStats tradeoff_stats(std::uint64_t f, std::uint64_t g, const ChunkPlan& plan) {
  return tradeoffstats_impl(f, g, plan.effective_delta(f, g));
}

// Pull-based fingerprint stream; nullopt signals exhaustion. Factories hand
// out fresh streams so chunk rounds can re-enumerate from the start.
using FingerprintSource = std::function<std::optional<Fingerprint>()>;
using FingerprintStreamFactory = std::function<FingerprintSource()>;

struct DetectStats {
  std::uint64_t a_count = 0;  // full A stream length (measured)
  std::uint64_t b_count = 0;  // full B stream length (measured)
  std::uint64_t chunk_pairs_examined = 0;
  std::uint64_t peak_resident = 0;
};

namespace detail {

// resident A chunk: unique fingerprints, each with its least stream index
struct SortedChunk {
  std::vector<std::pair<Fingerprint, std::size_t>> entries;

  void build(std::vector<std::pair<Fingerprint, std::size_t>>&& raw) {
    std::sort(raw.begin(), raw.end());
    entries.clear();
    for (auto& e : raw)
      if (entries.empty() || entries.back().first != e.first) entries.push_back(std::move(e));
  }

  const std::size_t* find(const Fingerprint& fp) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), fp,
                               [](const auto& e, const Fingerprint& k) { return e.first < k; });
    if (it == entries.end() || it->first != fp) return nullptr;
    return &it->second;
  }
};

struct RoundResult {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::uint64_t pairs_examined = 0;
  std::uint64_t peak_resident = 0;
  std::uint64_t b_count = 0;
  bool a_exhausted = false;
  std::uint64_t a_count = 0;  // valid once a_exhausted
};

// One chunk round: load the round-th A chunk, stream all of B against it in
// delta-sized blocks, return the lexicographically least (a,b) match if any.
inline RoundResult run_round(const FingerprintStreamFactory& a_factory,
                             const FingerprintStreamFactory& b_factory, std::size_t delta,
                             std::size_t round) {
  RoundResult out;
  FingerprintSource a = a_factory();
  std::size_t a_base = round * delta;
  for (std::size_t i = 0; i < a_base; ++i) {
    if (!a()) {  // fewer than a_base elements: nothing to do this round
      out.a_exhausted = true;
      out.a_count = i;
      return out;
    }
  }
  std::vector<std::pair<Fingerprint, std::size_t>> raw;
  for (std::size_t i = 0; i < delta; ++i) {
    auto fp = a();
    if (!fp) {
      out.a_exhausted = true;
      out.a_count = a_base + i;
      break;
    }
    raw.emplace_back(std::move(*fp), a_base + i);
  }
  if (raw.empty()) return out;
  std::size_t a_resident = raw.size();
  SortedChunk chunk;
  chunk.build(std::move(raw));

  FingerprintSource b = b_factory();
  std::size_t b_index = 0;
  std::vector<Fingerprint> block;
  bool done = false;
  while (!done) {
    block.clear();
    while (block.size() < delta) {
      auto fp = b();
      if (!fp) {
        done = true;
        break;
      }
      block.push_back(std::move(*fp));
    }
    if (block.empty()) break;
    ++out.pairs_examined;
    out.peak_resident = std::max<std::uint64_t>(out.peak_resident, a_resident + block.size());
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (const std::size_t* a_idx = chunk.find(block[j])) {
        std::pair<std::size_t, std::size_t> cand{*a_idx, b_index + j};
        if (!out.best || cand < *out.best) out.best = cand;
      }
    }
    b_index += block.size();
  }
  out.b_count = b_index;
  return out;
}

}  // namespace detail

// Returns the match with lexicographically least (A-index, B-index), or
// nullopt. Peak resident fingerprints <= 2*delta per worker; chunk rounds may
// run concurrently (threads > 1), reduced with a deterministic min.
inline std::optional<std::pair<std::size_t, std::size_t>> detect_common(
    const FingerprintStreamFactory& a_factory, const FingerprintStreamFactory& b_factory,
    const ChunkPlan& plan, int threads = 1, DetectStats* stats = nullptr) {
  DetectStats local;
  DetectStats& st = stats ? *stats : local;
  st = DetectStats{};

  // measure stream lengths up front (streams are pure and re-enumerable)
  {
    FingerprintSource a = a_factory();
    while (a()) ++st.a_count;
    FingerprintSource b = b_factory();
    while (b()) ++st.b_count;
  }
  if (st.a_count == 0 || st.b_count == 0) return std::nullopt;

  std::size_t delta = plan.effective_delta(st.a_count, st.b_count);
  std::size_t rounds = (st.a_count + delta - 1) / delta;
  int workers = std::max(1, threads);

  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t base = 0; base < rounds && !best; base += static_cast<std::size_t>(workers)) {
    std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(workers), rounds - base);
    std::vector<detail::RoundResult> results(batch);
    if (batch == 1) {
      results[0] = detail::run_round(a_factory, b_factory, delta, base);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(batch);
      for (std::size_t k = 0; k < batch; ++k)
        pool.emplace_back([&, k] { results[k] = detail::run_round(a_factory, b_factory, delta, base + k); });
      for (auto& t : pool) t.join();
    }
    for (std::size_t k = 0; k < batch; ++k) {
      st.chunk_pairs_examined += results[k].pairs_examined;
      st.peak_resident = std::max(st.peak_resident, results[k].peak_resident);
      if (results[k].best && !best) best = results[k].best;  // lowest round wins
    }
  }
  return best;
}

// All root-paths of length exactly depth, plus shorter root-to-leaf paths.
// Children are visited in the tree's stated order (DFS).
template <ChoiceTree Tree>
std::vector<TreePath<Tree>> prefix_paths(const Tree& tree, int depth) {
  if (depth < 0) fail(errc::invalid_order, "prefix depth must be >= 0");
  std::vector<TreePath<Tree>> out;
  TreePath<Tree> path;
  auto walk = [&](auto&& self, const typename Tree::Label& node) -> void {
    if (static_cast<int>(path.size()) == depth) {
      out.push_back(path);
      return;
    }
    if (tree.is_leaf(node)) {
      out.push_back(path);
      return;
    }
    for (const auto& child : tree.children(node)) {
      path.push_back(child);
      self(self, child);
      path.pop_back();
    }
  };
  walk(walk, tree.root());
  return out;
}

// Extends a path to a leaf by always taking the first child. Leaf paths come
// back unchanged.
template <ChoiceTree Tree>
TreePath<Tree> extend_arbitrarily(const Tree& tree, TreePath<Tree> path) {
  typename Tree::Label cur = path.empty() ? tree.root() : path.back();
  while (!tree.is_leaf(cur)) {
    cur = tree.children(cur).front();
    path.push_back(cur);
  }
  return path;
}

// All root-to-leaf paths extending prefix (prefix itself when it ends at a
// leaf).
template <ChoiceTree Tree>
std::vector<TreePath<Tree>> suffix_paths(const Tree& tree, const TreePath<Tree>& prefix) {
  std::vector<TreePath<Tree>> out;
  TreePath<Tree> path = prefix;
  auto walk = [&](auto&& self, const typename Tree::Label& node) -> void {
    if (tree.is_leaf(node)) {
      out.push_back(path);
      return;
    }
    for (const auto& child : tree.children(node)) {
      path.push_back(child);
      self(self, child);
      path.pop_back();
    }
  };
  walk(walk, prefix.empty() ? tree.root() : prefix.back());
  return out;
}

// Restartable lazy DFS cursor over the same path families as prefix_paths /
// suffix_paths; the building block for fingerprint streams.
template <ChoiceTree Tree>
class PathCursor {
 public:
  // paths of length exactly depth plus shorter root-to-leaf paths
  static PathCursor prefixes(const Tree& tree, int depth) {
    if (depth < 0) fail(errc::invalid_order, "prefix depth must be >= 0");
    return PathCursor(tree, {}, depth);
  }

  // root-to-leaf paths extending prefix
  static PathCursor completions(const Tree& tree, TreePath<Tree> prefix) {
    return PathCursor(tree, std::move(prefix), -1);
  }

  // advances to the next path; false when exhausted
  bool next() {
    if (fresh_) {
      fresh_ = false;
      typename Tree::Label cur = path_.empty() ? tree_->root() : path_.back();
      if (at_limit() || tree_->is_leaf(cur)) return true;
      push_children(cur);
      return descend();
    }
    // pop frames whose children are spent, then advance a sibling
    while (!stack_.empty() && stack_.back().next >= stack_.back().children.size()) {
      stack_.pop_back();
      path_.pop_back();
    }
    if (stack_.empty()) return false;
    Frame& f = stack_.back();
    path_.back() = f.children[f.next++];
    typename Tree::Label cur = path_.back();
    if (at_limit() || tree_->is_leaf(cur)) return true;
    push_children(cur);
    return descend();
  }

  const TreePath<Tree>& current() const { return path_; }

  void reset() {
    stack_.clear();
    path_ = base_;
    fresh_ = true;
  }

 private:
  struct Frame {
    std::vector<typename Tree::Label> children;
    std::size_t next = 0;
  };

  PathCursor(const Tree& tree, TreePath<Tree> base, int depth)
      : tree_(&tree), base_(std::move(base)), depth_(depth) {
    reset();
  }

  bool at_limit() const { return depth_ >= 0 && static_cast<int>(path_.size()) >= depth_; }

  void push_children(const typename Tree::Label& node) {
    Frame f;
    f.children = tree_->children(node);
    stack_.push_back(std::move(f));
    path_.push_back(typename Tree::Label{});  // placeholder, set by descend/advance
  }

  // walk down first children until a yieldable node; frames already pushed
  bool descend() {
    while (true) {
      Frame& f = stack_.back();
      if (f.next >= f.children.size()) return false;  // non-leaf with no children: contract breach
      path_.back() = f.children[f.next++];
      typename Tree::Label cur = path_.back();
      if (at_limit() || tree_->is_leaf(cur)) return true;
      push_children(cur);
    }
  }

  const Tree* tree_;
  TreePath<Tree> base_;
  int depth_;  // -1: to leaves
  std::vector<Frame> stack_;
  TreePath<Tree> path_;
  bool fresh_ = true;
};

// Node counters used to check the path-count budget (|A| <= f, |B| <= g where
// f, g count tree nodes walked).
template <ChoiceTree Tree>
std::uint64_t node_count_to_depth(const Tree& tree, int depth) {
  std::uint64_t count = 0;
  auto walk = [&](auto&& self, const typename Tree::Label& node, int d) -> void {
    ++count;
    if (d == depth || tree.is_leaf(node)) return;
    for (const auto& child : tree.children(node)) self(self, child, d + 1);
  };
  walk(walk, tree.root(), 0);
  return count;
}

template <ChoiceTree Tree>
std::uint64_t subtree_node_count(const Tree& tree, const TreePath<Tree>& prefix) {
  std::uint64_t count = 0;
  auto walk = [&](auto&& self, const typename Tree::Label& node) -> void {
    ++count;
    if (tree.is_leaf(node)) return;
    for (const auto& child : tree.children(node)) self(self, child);
  };
  walk(walk, prefix.empty() ? tree.root() : prefix.back());
  return count;
}

}  // namespace tableiso
