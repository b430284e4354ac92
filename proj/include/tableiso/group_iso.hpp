#pragma once

// Group isomorphism deciders. generator_enumeration is the one-sided
// baseline: fix one irredundant generating sequence of G and try every
// irredundant target tuple in H. The bidirectional decider splits the
// generator tree at depth d = max(1, floor(log_p(n)/2)): side A enumerates
// every depth-d irredundant prefix extended arbitrarily to a full generating
// sequence, side B enumerates every completion of one arbitrary depth-d
// prefix, and a collision of canonical fingerprints exhibits an isomorphism.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tableiso/cayley.hpp"
#include "tableiso/collision.hpp"
#include "tableiso/errors.hpp"

namespace tableiso {

inline constexpr std::size_t kNoLimit = static_cast<std::size_t>(-1);

// Irredundant-prefix tree of a group: nodes are generator sequences, children
// append one element outside the prefix closure (ascending), leaves generate.
struct GeneratorTree {
  using Label = GeneratorSequence;

  const CayleyTable* group = nullptr;

  Label root() const { return Label{}; }

  bool is_leaf(const Label& label) const {
    return closure_of_sequence(*group, label).size() == group->n;
  }

  std::vector<Label> children(const Label& label) const {
    std::vector<Label> out;
    ElementSet cl = closure_of_sequence(*group, label);
    if (cl.size() == group->n) return out;
    for (int x = 0; x < group->n; ++x) {
      if (cl.contains(x)) continue;
      Label child = label;
      child.elems.push_back(x);
      out.push_back(std::move(child));
    }
    return out;
  }
};

// Recursive insertion of extensions: while the prefix is non-generating and
// shorter than m, branch on every element outside its closure (ascending),
// otherwise deliver the prefix to the sink. m = kNoLimit means "to leaves".
template <typename Sink>
void insert_extensions(const GeneratorSequence& prefix, const CayleyTable& g, Sink&& sink,
                       std::size_t j, std::size_t m) {
  ElementSet cl = closure_of_sequence(g, prefix);
  if (cl.size() < g.n && j < m) {
    for (int x = 0; x < g.n; ++x) {
      if (cl.contains(x)) continue;
      GeneratorSequence next = prefix;
      next.elems.push_back(x);
      insert_extensions(next, g, sink, j + 1, m);
    }
  } else {
    sink(prefix);
  }
}

namespace detail {

inline void append_u16(std::string& out, unsigned v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

inline void append_u32(std::string& out, unsigned long v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<char>((v >> shift) & 0xff));
}

// BFS word-order relabeling from a generating sequence: identity first, then
// multiply known elements by the generators in fixed order, indexing elements
// in discovery order. Isomorphism-invariant given matched generator images.
inline std::pair<std::vector<int>, std::vector<int>> bfs_relabel(const CayleyTable& g,
                                                                 const std::vector<int>& gens) {
  std::vector<int> new_to_old;
  new_to_old.reserve(static_cast<std::size_t>(g.n));
  std::vector<int> old_to_new(static_cast<std::size_t>(g.n), -1);
  new_to_old.push_back(g.identity);
  old_to_new[static_cast<std::size_t>(g.identity)] = 0;
  for (std::size_t q = 0; q < new_to_old.size(); ++q) {
    int x = new_to_old[q];
    for (int s : gens) {
      int y = g.mul(x, s);
      if (old_to_new[static_cast<std::size_t>(y)] < 0) {
        old_to_new[static_cast<std::size_t>(y)] = static_cast<int>(new_to_old.size());
        new_to_old.push_back(y);
      }
    }
  }
  return {std::move(new_to_old), std::move(old_to_new)};
}

inline void append_relabeled_table(std::string& out, const CayleyTable& g,
                                   const std::vector<int>& new_to_old,
                                   const std::vector<int>& old_to_new) {
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      append_u16(out, static_cast<unsigned>(old_to_new[static_cast<std::size_t>(
                          g.mul(new_to_old[static_cast<std::size_t>(a)],
                                new_to_old[static_cast<std::size_t>(b)]))]));
}

}  // namespace detail

// Canonical leaf fingerprint: relabel by the BFS word order of gens and emit
// the relabeled table plus the relabeled generator indices as bytes. Two
// fingerprints are equal iff some isomorphism maps one generating sequence to
// the other, positionwise.
inline Fingerprint canonical_fingerprint(const CayleyTable& g, const GeneratorSequence& gens) {
  if (g.n > 0xffff) fail(errc::too_large, "fingerprint encoding caps order at 65535");
  ElementSet cl = closure_of_sequence(g, gens);
  if (cl.size() != g.n) fail(errc::not_generating, "fingerprint needs a generating sequence");
  auto [new_to_old, old_to_new] = detail::bfs_relabel(g, gens.elems);
  Fingerprint fp;
  fp.bytes.reserve(9 + 2 * gens.size() + 2 * static_cast<std::size_t>(g.n) * g.n);
  fp.bytes.push_back('G');
  detail::append_u32(fp.bytes, static_cast<unsigned long>(g.n));
  detail::append_u32(fp.bytes, static_cast<unsigned long>(gens.size()));
  for (int s : gens.elems)
    detail::append_u16(fp.bytes, static_cast<unsigned>(old_to_new[static_cast<std::size_t>(s)]));
  detail::append_relabeled_table(fp.bytes, g, new_to_old, old_to_new);
  return fp;
}

struct IsoWitness {
  std::vector<int> map;  // map[x in G] = image in H
};

// Extends gens_g -> gens_h to the unique candidate map via parallel BFS and
// checks it is an isomorphism. pre: gens_g generates G, |gens_g| = |gens_h|.
inline std::optional<IsoWitness> induced_isomorphism(const CayleyTable& g,
                                                     const GeneratorSequence& gens_g,
                                                     const CayleyTable& h,
                                                     const GeneratorSequence& gens_h) {
  if (gens_g.size() != gens_h.size())
    fail(errc::invalid_order, "induced_isomorphism: sequence lengths differ");
  if (closure_of_sequence(g, gens_g).size() != g.n)
    fail(errc::not_generating, "induced_isomorphism: sequence does not generate G");
  if (g.n != h.n) return std::nullopt;

  std::vector<int> map(static_cast<std::size_t>(g.n), -1);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(g.n));
  map[static_cast<std::size_t>(g.identity)] = h.identity;
  order.push_back(g.identity);
  for (std::size_t q = 0; q < order.size(); ++q) {
    int x = order[q];
    for (std::size_t i = 0; i < gens_g.size(); ++i) {
      int y = g.mul(x, gens_g.elems[i]);
      int img = h.mul(map[static_cast<std::size_t>(x)], gens_h.elems[i]);
      if (map[static_cast<std::size_t>(y)] < 0) {
        map[static_cast<std::size_t>(y)] = img;
        order.push_back(y);
      }
    }
  }
  // full edge consistency: map(x*gi) = map(x)*hi for every x, i
  for (int x = 0; x < g.n; ++x)
    for (std::size_t i = 0; i < gens_g.size(); ++i)
      if (map[static_cast<std::size_t>(g.mul(x, gens_g.elems[i]))] !=
          h.mul(map[static_cast<std::size_t>(x)], gens_h.elems[i]))
        return std::nullopt;
  std::vector<bool> hit(static_cast<std::size_t>(h.n), false);
  for (int x = 0; x < g.n; ++x) {
    int y = map[static_cast<std::size_t>(x)];
    if (hit[static_cast<std::size_t>(y)]) return std::nullopt;
    hit[static_cast<std::size_t>(y)] = true;
  }
  return IsoWitness{std::move(map)};
}

struct DecisionStats {
  std::string algorithm;  // "genenum" | "bidi" | "series"
  int n = 0;
  int p = 0;
  int d = 0;  // split depth; carries t for the series pipeline
  std::optional<std::size_t> delta;  // nullopt: unbounded / not chunked
  std::uint64_t a_count = 0;
  std::uint64_t b_count = 0;
  std::uint64_t chunk_pairs = 0;
  std::uint64_t peak_fingerprints = 0;
  std::uint64_t millis = 0;
};

struct IsoDecision {
  bool isomorphic = false;
  std::optional<IsoWitness> witness;
  DecisionStats stats;
};

// largest d >= 1 with p^(2d) <= n (and at least 1)
inline int bidi_split_depth(int n, int p) {
  long long v = 1;
  int d = 0;
  while (v * p * p <= n) {
    v *= static_cast<long long>(p) * p;
    ++d;
  }
  return d < 1 ? 1 : d;
}

namespace detail {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::uint64_t millis() const {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// sequence to path of cumulative prefixes, the tree's labeling
inline TreePath<GeneratorTree> sequence_to_path(const GeneratorSequence& seq) {
  TreePath<GeneratorTree> path;
  GeneratorSequence prefix;
  for (int x : seq.elems) {
    prefix.elems.push_back(x);
    path.push_back(prefix);
  }
  return path;
}

inline GeneratorSequence terminal(const TreePath<GeneratorTree>& path) {
  return path.empty() ? GeneratorSequence{} : path.back();
}

}  // namespace detail

// Number of irredundant chains of length exactly len (the baseline tuple
// count generator_enumeration worst-cases over).
inline std::uint64_t count_irredundant_chains(const CayleyTable& g, std::size_t len) {
  GeneratorTree tree{&g};
  std::uint64_t count = 0;
  auto cursor = PathCursor<GeneratorTree>::prefixes(tree, static_cast<int>(len));
  while (cursor.next())
    if (cursor.current().size() == len) ++count;
  return count;
}

// Baseline decider: fix the first irredundant generating sequence of G, try
// every irredundant chain of the same length in H.
inline IsoDecision generator_enumeration(const CayleyTable& g, const CayleyTable& h) {
  detail::Timer timer;
  if (g.n != h.n)
    fail(errc::order_mismatch,
         "orders differ: " + std::to_string(g.n) + " vs " + std::to_string(h.n));
  IsoDecision out;
  out.stats.algorithm = "genenum";
  out.stats.n = g.n;
  if (g.n >= 2) {
    out.stats.p = smallest_prime_divisor(g.n);
    out.stats.d = bidi_split_depth(g.n, out.stats.p);
  }

  GeneratorTree tree_g{&g};
  GeneratorSequence fixed = detail::terminal(extend_arbitrarily(tree_g, TreePath<GeneratorTree>{}));
  out.stats.a_count = 1;

  GeneratorTree tree_h{&h};
  auto cursor = PathCursor<GeneratorTree>::prefixes(tree_h, static_cast<int>(fixed.size()));
  while (cursor.next()) {
    if (cursor.current().size() != fixed.size()) continue;
    ++out.stats.b_count;
    GeneratorSequence cand = detail::terminal(cursor.current());
    if (auto w = induced_isomorphism(g, fixed, h, cand)) {
      out.isomorphic = true;
      out.witness = std::move(w);
      break;
    }
  }
  out.stats.millis = timer.millis();
  return out;
}

struct BidiSets {
  std::vector<GeneratorSequence> a;
  std::vector<GeneratorSequence> b;
  GeneratorSequence bob_prefix;
  int p = 0;
  int d = 0;
};

struct BidiOutcome {
  std::optional<IsoDecision> decided;  // fallback or small-generator refusal
  std::optional<BidiSets> sets;
};

namespace detail {

enum class BidiAction { fallback_genenum, not_isomorphic, split };

struct BidiPlanned {
  int p = 0;
  int d = 0;
  BidiAction action = BidiAction::split;
  GeneratorSequence bob_prefix;
};

// lines 1-8 of the bidirectional algorithm plus Bob's arbitrary depth-d
// prefix (first child at every level)
inline BidiPlanned plan_bidirectional(const CayleyTable& g, const CayleyTable& h) {
  if (g.n != h.n)
    fail(errc::order_mismatch,
         "orders differ: " + std::to_string(g.n) + " vs " + std::to_string(h.n));
  if (g.n < 2) fail(errc::invalid_order, "bidirectional split needs order >= 2");
  BidiPlanned plan;
  plan.p = smallest_prime_divisor(g.n);
  plan.d = bidi_split_depth(g.n, plan.p);
  if (has_generating_sequence_of_size(g, plan.d)) {
    plan.action = BidiAction::fallback_genenum;
  } else if (has_generating_sequence_of_size(h, plan.d)) {
    plan.action = BidiAction::not_isomorphic;  // minimal generating sizes differ
  } else {
    plan.action = BidiAction::split;
    ElementSet cl(h.n);
    cl.insert(h.identity);
    for (int step = 0; step < plan.d; ++step) {
      int x = 0;
      while (cl.contains(x)) ++x;  // guarded: no generating set of size <= d
      plan.bob_prefix.elems.push_back(x);
      cl.insert(x);
      cl = closure(h, cl);
    }
    return plan;
  }
  return plan;
}

}  // namespace detail

// The bidirectional split, materialized: either an outright decision (shared
// with the baseline) or the candidate sets A and B.
inline BidiOutcome bidirectional_generator_enumeration(const CayleyTable& g,
                                                       const CayleyTable& h) {
  detail::BidiPlanned plan = detail::plan_bidirectional(g, h);
  BidiOutcome out;
  if (plan.action == detail::BidiAction::fallback_genenum) {
    out.decided = generator_enumeration(g, h);
    return out;
  }
  if (plan.action == detail::BidiAction::not_isomorphic) {
    IsoDecision dec;
    dec.isomorphic = false;
    dec.stats.algorithm = "bidi";
    dec.stats.n = g.n;
    dec.stats.p = plan.p;
    dec.stats.d = plan.d;
    out.decided = std::move(dec);
    return out;
  }

  BidiSets sets;
  sets.p = plan.p;
  sets.d = plan.d;
  sets.bob_prefix = plan.bob_prefix;
  GeneratorTree tree_g{&g};
  for (const auto& prefix : prefix_paths(tree_g, plan.d))
    sets.a.push_back(detail::terminal(extend_arbitrarily(tree_g, prefix)));
  GeneratorTree tree_h{&h};
  for (const auto& full : suffix_paths(tree_h, detail::sequence_to_path(plan.bob_prefix)))
    sets.b.push_back(detail::terminal(full));
  out.sets = std::move(sets);
  return out;
}

namespace detail {

// fingerprint stream over side A: depth-d prefixes extended arbitrarily.
// The tree is heap-held next to the cursor, which points into it.
inline FingerprintStreamFactory a_stream(const CayleyTable& g, int d) {
  return [&g, d]() -> FingerprintSource {
    auto tree = std::make_shared<GeneratorTree>();
    tree->group = &g;
    auto cursor = std::make_shared<PathCursor<GeneratorTree>>(
        PathCursor<GeneratorTree>::prefixes(*tree, d));
    return [&g, tree, cursor]() -> std::optional<Fingerprint> {
      if (!cursor->next()) return std::nullopt;
      GeneratorSequence seq = terminal(extend_arbitrarily(*tree, cursor->current()));
      return canonical_fingerprint(g, seq);
    };
  };
}

// fingerprint stream over side B: completions of Bob's prefix
inline FingerprintStreamFactory b_stream(const CayleyTable& h, const GeneratorSequence& prefix) {
  TreePath<GeneratorTree> base = sequence_to_path(prefix);
  return [&h, base]() -> FingerprintSource {
    auto tree = std::make_shared<GeneratorTree>();
    tree->group = &h;
    auto cursor = std::make_shared<PathCursor<GeneratorTree>>(
        PathCursor<GeneratorTree>::completions(*tree, base));
    return [&h, tree, cursor]() -> std::optional<Fingerprint> {
      if (!cursor->next()) return std::nullopt;
      return canonical_fingerprint(h, terminal(cursor->current()));
    };
  };
}

inline GeneratorSequence nth_a_sequence(const CayleyTable& g, int d, std::size_t index) {
  GeneratorTree tree{&g};
  auto cursor = PathCursor<GeneratorTree>::prefixes(tree, d);
  for (std::size_t i = 0; i <= index; ++i)
    if (!cursor.next()) throw std::logic_error("A index out of range");
  return terminal(extend_arbitrarily(tree, cursor.current()));
}

inline GeneratorSequence nth_b_sequence(const CayleyTable& h, const GeneratorSequence& prefix,
                                        std::size_t index) {
  GeneratorTree tree{&h};
  auto cursor = PathCursor<GeneratorTree>::completions(tree, sequence_to_path(prefix));
  for (std::size_t i = 0; i <= index; ++i)
    if (!cursor.next()) throw std::logic_error("B index out of range");
  return terminal(cursor.current());
}

}  // namespace detail

// Full decider: order checks, small-generator fallback, then the streamed
// bidirectional collision under the chunk plan. The witness, when present, is
// an isomorphism carrying the matched A sequence to the matched B sequence.
inline IsoDecision is_isomorphic_groups(const CayleyTable& g, const CayleyTable& h,
                                        const ChunkPlan& plan = ChunkPlan::unbounded(),
                                        int threads = 1) {
  detail::Timer timer;
  if (g.n != h.n)
    fail(errc::order_mismatch,
         "orders differ: " + std::to_string(g.n) + " vs " + std::to_string(h.n));
  if (g.n == 1) {
    IsoDecision dec;
    dec.isomorphic = true;
    dec.witness = IsoWitness{{h.identity}};
    dec.stats.algorithm = "bidi";
    dec.stats.n = 1;
    dec.stats.millis = timer.millis();
    return dec;
  }

  detail::BidiPlanned bp = detail::plan_bidirectional(g, h);
  if (bp.action == detail::BidiAction::fallback_genenum) {
    IsoDecision dec = generator_enumeration(g, h);
    dec.stats.millis = timer.millis();
    return dec;
  }
  IsoDecision dec;
  dec.stats.algorithm = "bidi";
  dec.stats.n = g.n;
  dec.stats.p = bp.p;
  dec.stats.d = bp.d;
  if (!plan.is_unbounded()) dec.stats.delta = plan.delta;
  if (bp.action == detail::BidiAction::not_isomorphic) {
    dec.isomorphic = false;
    dec.stats.millis = timer.millis();
    return dec;
  }

  DetectStats dstats;
  auto match = detect_common(detail::a_stream(g, bp.d), detail::b_stream(h, bp.bob_prefix), plan,
                             threads, &dstats);
  dec.stats.a_count = dstats.a_count;
  dec.stats.b_count = dstats.b_count;
  dec.stats.chunk_pairs = tradeoff_stats(dstats.a_count, dstats.b_count, plan).chunk_pairs;
  dec.stats.peak_fingerprints = dstats.peak_resident;
  if (match) {
    GeneratorSequence a_seq = detail::nth_a_sequence(g, bp.d, match->first);
    GeneratorSequence b_seq = detail::nth_b_sequence(h, bp.bob_prefix, match->second);
    auto w = induced_isomorphism(g, a_seq, h, b_seq);
    if (!w) throw std::logic_error("fingerprint collision without induced isomorphism");
    dec.isomorphic = true;
    dec.witness = std::move(w);
  }
  dec.stats.millis = timer.millis();
  return dec;
}

}  // namespace tableiso
