#pragma once

// Ring isomorphism mirrors the group machinery on the additive structure.
// Candidate maps come from additive generating sequences; the canonical
// fingerprint covers both operation tables, so equal fingerprints exhibit an
// isomorphism of rings. Rings need not be unital or commutative; only the
// additive group is required to be abelian.

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
#include "tableiso/group_iso.hpp"

namespace tableiso {

struct RingTable {
  int n = 0;
  CayleyTable add;             // abelian; add.identity is the zero element
  std::vector<int> mul_table;  // mul_table[a*n + b] = a*b

  int mul(int a, int b) const { return mul_table[static_cast<std::size_t>(a) * n + b]; }
  int zero() const { return add.identity; }
};

inline RingTable validate_ring(int n, const std::vector<std::vector<int>>& add_raw,
                               const std::vector<std::vector<int>>& mul_raw) {
  RingTable r;
  r.n = n;
  try {
    r.add = validate_cayley_table(n, add_raw);
  } catch (const Error& e) {
    fail(errc::add_not_abelian_group, std::string("additive table: ") + e.what());
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r.add.mul(a, b) != r.add.mul(b, a))
        fail(errc::add_not_abelian_group, "addition not commutative at (" + std::to_string(a) +
                                              "," + std::to_string(b) + ")");

  if (static_cast<int>(mul_raw.size()) != n)
    fail(errc::entry_out_of_range, "multiplication table must have " + std::to_string(n) + " rows");
  r.mul_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(mul_raw[static_cast<std::size_t>(a)].size()) != n)
      fail(errc::entry_out_of_range, "multiplication row " + std::to_string(a) + " must have " +
                                         std::to_string(n) + " entries");
    for (int b = 0; b < n; ++b) {
      int v = mul_raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (v < 0 || v >= n)
        fail(errc::entry_out_of_range, "multiplication entry " + std::to_string(v) +
                                           " out of range at (" + std::to_string(a) + "," +
                                           std::to_string(b) + ")");
      r.mul_table[static_cast<std::size_t>(a) * n + b] = v;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          fail(errc::mul_not_associative, "multiplication not associative at (" +
                                              std::to_string(a) + "," + std::to_string(b) + "," +
                                              std::to_string(c) + ")");
        if (r.mul(a, r.add.mul(b, c)) != r.add.mul(r.mul(a, b), r.mul(a, c)) ||
            r.mul(r.add.mul(a, b), c) != r.add.mul(r.mul(a, c), r.mul(b, c)))
          fail(errc::not_distributive, "distributivity fails at (" + std::to_string(a) + "," +
                                           std::to_string(b) + "," + std::to_string(c) + ")");
      }
  return r;
}

// Canonical leaf fingerprint over an additive generating sequence: the BFS
// word-order relabeling applied to both tables.
inline Fingerprint ring_fingerprint(const RingTable& r, const GeneratorSequence& gens) {
  if (r.n > 0xffff) fail(errc::too_large, "fingerprint encoding caps order at 65535");
  ElementSet cl = closure_of_sequence(r.add, gens);
  if (cl.size() != r.n) fail(errc::not_generating, "fingerprint needs an additive generating sequence");
  auto [new_to_old, old_to_new] = detail::bfs_relabel(r.add, gens.elems);
  Fingerprint fp;
  fp.bytes.reserve(9 + 2 * gens.size() + 4 * static_cast<std::size_t>(r.n) * r.n);
  fp.bytes.push_back('R');
  detail::append_u32(fp.bytes, static_cast<unsigned long>(r.n));
  detail::append_u32(fp.bytes, static_cast<unsigned long>(gens.size()));
  for (int s : gens.elems)
    detail::append_u16(fp.bytes, static_cast<unsigned>(old_to_new[static_cast<std::size_t>(s)]));
  detail::append_relabeled_table(fp.bytes, r.add, new_to_old, old_to_new);
  for (int a = 0; a < r.n; ++a)
    for (int b = 0; b < r.n; ++b)
      detail::append_u16(fp.bytes, static_cast<unsigned>(old_to_new[static_cast<std::size_t>(
                                       r.mul(new_to_old[static_cast<std::size_t>(a)],
                                             new_to_old[static_cast<std::size_t>(b)]))]));
  return fp;
}

// The additive induced map, kept only if it also respects multiplication.
inline std::optional<IsoWitness> induced_ring_isomorphism(const RingTable& r1,
                                                          const GeneratorSequence& gens1,
                                                          const RingTable& r2,
                                                          const GeneratorSequence& gens2) {
  std::optional<IsoWitness> w = induced_isomorphism(r1.add, gens1, r2.add, gens2);
  if (!w) return std::nullopt;
  for (int a = 0; a < r1.n; ++a)
    for (int b = 0; b < r1.n; ++b)
      if (w->map[static_cast<std::size_t>(r1.mul(a, b))] !=
          r2.mul(w->map[static_cast<std::size_t>(a)], w->map[static_cast<std::size_t>(b)]))
        return std::nullopt;
  return w;
}

// Baseline decider: fix the first irredundant additive generating sequence of
// r1, try every additive chain of the same length in r2.
inline IsoDecision ring_generator_enumeration(const RingTable& r1, const RingTable& r2) {
  detail::Timer timer;
  if (r1.n != r2.n)
    fail(errc::order_mismatch,
         "orders differ: " + std::to_string(r1.n) + " vs " + std::to_string(r2.n));
  IsoDecision out;
  out.stats.algorithm = "genenum";
  out.stats.n = r1.n;
  if (r1.n >= 2) {
    out.stats.p = smallest_prime_divisor(r1.n);
    out.stats.d = bidi_split_depth(r1.n, out.stats.p);
  }

  GeneratorTree tree_g{&r1.add};
  GeneratorSequence fixed = detail::terminal(extend_arbitrarily(tree_g, TreePath<GeneratorTree>{}));
  out.stats.a_count = 1;

  GeneratorTree tree_h{&r2.add};
  auto cursor = PathCursor<GeneratorTree>::prefixes(tree_h, static_cast<int>(fixed.size()));
  while (cursor.next()) {
    if (cursor.current().size() != fixed.size()) continue;
    ++out.stats.b_count;
    GeneratorSequence cand = detail::terminal(cursor.current());
    if (auto w = induced_ring_isomorphism(r1, fixed, r2, cand)) {
      out.isomorphic = true;
      out.witness = std::move(w);
      break;
    }
  }
  out.stats.millis = timer.millis();
  return out;
}

namespace detail {

inline FingerprintStreamFactory ring_a_stream(const RingTable& r, int d) {
  return [&r, d]() -> FingerprintSource {
    auto tree = std::make_shared<GeneratorTree>();
    tree->group = &r.add;
    auto cursor = std::make_shared<PathCursor<GeneratorTree>>(
        PathCursor<GeneratorTree>::prefixes(*tree, d));
    return [&r, tree, cursor]() -> std::optional<Fingerprint> {
      if (!cursor->next()) return std::nullopt;
      GeneratorSequence seq = terminal(extend_arbitrarily(*tree, cursor->current()));
      return ring_fingerprint(r, seq);
    };
  };
}

inline FingerprintStreamFactory ring_b_stream(const RingTable& r, const GeneratorSequence& prefix) {
  TreePath<GeneratorTree> base = sequence_to_path(prefix);
  return [&r, base]() -> FingerprintSource {
    auto tree = std::make_shared<GeneratorTree>();
    tree->group = &r.add;
    auto cursor = std::make_shared<PathCursor<GeneratorTree>>(
        PathCursor<GeneratorTree>::completions(*tree, base));
    return [&r, tree, cursor]() -> std::optional<Fingerprint> {
      if (!cursor->next()) return std::nullopt;
      return ring_fingerprint(r, terminal(cursor->current()));
    };
  };
}

}  // namespace detail

// Full ring decider with the same split, fallback, and chunking behavior as
// the group decider, driven by the additive generator trees.
inline IsoDecision is_isomorphic_rings(const RingTable& r1, const RingTable& r2,
                                       const ChunkPlan& plan = ChunkPlan::unbounded(),
                                       int threads = 1) {
  detail::Timer timer;
  if (r1.n != r2.n)
    fail(errc::order_mismatch,
         "orders differ: " + std::to_string(r1.n) + " vs " + std::to_string(r2.n));
  if (r1.n == 1) {
    IsoDecision dec;
    dec.isomorphic = true;
    dec.witness = IsoWitness{{r2.add.identity}};
    dec.stats.algorithm = "bidi";
    dec.stats.n = 1;
    dec.stats.millis = timer.millis();
    return dec;
  }

  detail::BidiPlanned bp = detail::plan_bidirectional(r1.add, r2.add);
  if (bp.action == detail::BidiAction::fallback_genenum) {
    IsoDecision dec = ring_generator_enumeration(r1, r2);
    dec.stats.millis = timer.millis();
    return dec;
  }
  IsoDecision dec;
  dec.stats.algorithm = "bidi";
  dec.stats.n = r1.n;
  dec.stats.p = bp.p;
  dec.stats.d = bp.d;
  if (!plan.is_unbounded()) dec.stats.delta = plan.delta;
  if (bp.action == detail::BidiAction::not_isomorphic) {
    dec.isomorphic = false;
    dec.stats.millis = timer.millis();
    return dec;
  }

  DetectStats dstats;
  auto match = detect_common(detail::ring_a_stream(r1, bp.d), detail::ring_b_stream(r2, bp.bob_prefix),
                             plan, threads, &dstats);
  dec.stats.a_count = dstats.a_count;
  dec.stats.b_count = dstats.b_count;
  dec.stats.chunk_pairs = tradeoff_stats(dstats.a_count, dstats.b_count, plan).chunk_pairs;
  dec.stats.peak_fingerprints = dstats.peak_resident;
  if (match) {
    GeneratorSequence a_seq = detail::nth_a_sequence(r1.add, bp.d, match->first);
    GeneratorSequence b_seq = detail::nth_b_sequence(r2.add, bp.bob_prefix, match->second);
    auto w = induced_ring_isomorphism(r1, a_seq, r2, b_seq);
    if (!w) throw std::logic_error("fingerprint collision without induced ring isomorphism");
    dec.isomorphic = true;
    dec.witness = std::move(w);
  }
  dec.stats.millis = timer.millis();
  return dec;
}

}  // namespace tableiso
