#pragma once

// Finite groups as explicit multiplication tables, plus the subgroup
// machinery (closure, normal closure, quotients) everything else builds on.
// Element indices are 0-based rows/columns of the table; the identity is
// located by validation, never assumed to sit at index 0.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tableiso/errors.hpp"

namespace tableiso {

// default cap on accepted table orders; callers may raise or lower it
inline constexpr int kDefaultMaxOrder = 256;

class ElementSet;
inline int intersection_size(const ElementSet& a, const ElementSet& b);

// Bitset over the element indices of a fixed table, with a cached size.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe)
      : words_((static_cast<std::size_t>(universe) + 63) / 64, 0), universe_(universe) {}

  static ElementSet single(int universe, int x) {
    ElementSet s(universe);
    s.insert(x);
    return s;
  }

  static ElementSet full(int universe) {
    ElementSet s(universe);
    for (int x = 0; x < universe; ++x) s.insert(x);
    return s;
  }

  int universe() const { return universe_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(int x) const {
    return (words_[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1u;
  }

  // returns true if x was newly added
  bool insert(int x) {
    std::uint64_t& w = words_[static_cast<std::size_t>(x) >> 6];
    std::uint64_t bit = std::uint64_t(1) << (x & 63);
    if (w & bit) return false;
    w |= bit;
    ++size_;
    return true;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (int x = 0; x < universe_; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool operator==(const ElementSet& other) const {
    return universe_ == other.universe_ && words_ == other.words_;
  }

  // lexicographic on the ascending member lists, the deterministic order used
  // whenever sets of subgroups are sorted or deduplicated
  bool operator<(const ElementSet& other) const {
    return members() < other.members();
  }

  friend int intersection_size(const ElementSet& a, const ElementSet& b);
  friend ElementSet set_union(const ElementSet& a, const ElementSet& b);

 private:
  std::vector<std::uint64_t> words_;
  int universe_ = 0;
  int size_ = 0;
};

inline int intersection_size(const ElementSet& a, const ElementSet& b) {
  int count = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i)
    count += __builtin_popcountll(a.words_[i] & b.words_[i]);
  return count;
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out(a.universe());
  for (std::size_t i = 0; i < a.words_.size(); ++i)
    out.words_[i] = a.words_[i] | b.words_[i];
  out.size_ = 0;
  for (std::uint64_t w : out.words_) out.size_ += __builtin_popcountll(w);
  return out;
}

// Validated group multiplication table: row-major n*n entries, located
// identity, per-element inverses.
struct CayleyTable {
  int n = 0;
  int identity = 0;
  std::vector<int> table;    // table[a*n + b] = a*b
  std::vector<int> inverse;  // inverse[x]*x = x*inverse[x] = identity

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }
  int inv(int x) const { return inverse[static_cast<std::size_t>(x)]; }
};

// Ordered tuple of element indices of a fixed table. The algorithms only ever
// build irredundant chains: each element lies outside the closure of its
// prefix (see is_irredundant_chain).
struct GeneratorSequence {
  std::vector<int> elems;

  auto operator<=>(const GeneratorSequence&) const = default;
  std::size_t size() const { return elems.size(); }
  bool empty() const { return elems.empty(); }
};

// Checks the group axioms in O(n^3) and locates identity and inverses.
// Accepts exactly the tables a brute-force axiom check accepts.
inline CayleyTable validate_cayley_table(int n, const std::vector<std::vector<int>>& raw) {
  if (n < 1) fail(errc::invalid_order, "group order must be at least 1, got " + std::to_string(n));
  if (static_cast<int>(raw.size()) != n)
    fail(errc::entry_out_of_range, "expected " + std::to_string(n) + " rows, got " +
                                       std::to_string(raw.size()));
  CayleyTable g;
  g.n = n;
  g.table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(raw[a].size()) != n)
      fail(errc::entry_out_of_range,
           "row " + std::to_string(a) + " has " + std::to_string(raw[a].size()) + " entries");
    for (int b = 0; b < n; ++b) {
      int v = raw[a][b];
      if (v < 0 || v >= n)
        fail(errc::entry_out_of_range, "entry (" + std::to_string(a) + "," + std::to_string(b) +
                                           ") = " + std::to_string(v) + " out of range");
      g.table[static_cast<std::size_t>(a) * n + b] = v;
    }
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0) fail(errc::no_identity, "table has no two-sided identity");
  g.identity = identity;

  g.inverse.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == identity && g.mul(b, a) == identity) {
        g.inverse[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (g.inverse[static_cast<std::size_t>(a)] < 0)
      fail(errc::missing_inverse, "element " + std::to_string(a) + " has no two-sided inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          fail(errc::not_associative, "associativity fails at (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
  return g;
}

// Smallest subset containing seed and the identity that is closed under
// multiplication (the generated subgroup). Worklist BFS, O(|result|*|seed|)
// multiplications.
inline ElementSet closure(const CayleyTable& g, const ElementSet& seed) {
  ElementSet result(g.n);
  result.insert(g.identity);
  std::vector<int> gens = seed.members();
  std::vector<int> work;
  work.push_back(g.identity);
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int s : gens) {
      int y = g.mul(x, s);
      if (result.insert(y)) work.push_back(y);
    }
  }
  return result;
}

inline ElementSet closure_of_sequence(const CayleyTable& g, const GeneratorSequence& seq) {
  ElementSet seed(g.n);
  for (int x : seq.elems) seed.insert(x);
  return closure(g, seed);
}

// True if each element of seq lies outside the closure of its prefix.
inline bool is_irredundant_chain(const CayleyTable& g, const GeneratorSequence& seq) {
  ElementSet prefix(g.n);
  for (int x : seq.elems) {
    ElementSet grown = closure(g, prefix);
    if (grown.contains(x)) return false;
    prefix = grown;
    prefix.insert(x);
  }
  return true;
}

inline int element_order(const CayleyTable& g, int x) {
  int k = 1;
  int y = x;
  while (y != g.identity) {
    y = g.mul(y, x);
    ++k;
  }
  return k;
}

inline int smallest_prime_divisor(int n) {
  if (n < 2) fail(errc::invalid_order, "no prime divisor for " + std::to_string(n));
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

namespace detail {

// DFS over irredundant prefixes in ascending element order; returns the first
// generating sequence of length <= depth_limit found, if any.
inline bool first_generating_sequence(const CayleyTable& g, const ElementSet& closed,
                                      GeneratorSequence& seq, int depth_limit) {
  if (closed.size() == g.n) return true;
  if (static_cast<int>(seq.size()) >= depth_limit) return false;
  for (int x = 0; x < g.n; ++x) {
    if (closed.contains(x)) continue;
    seq.elems.push_back(x);
    ElementSet grown = set_union(closed, ElementSet::single(g.n, x));
    if (first_generating_sequence(g, closure(g, grown), seq, depth_limit)) return true;
    seq.elems.pop_back();
  }
  return false;
}

}  // namespace detail

// First (in deterministic DFS order) generating sequence of length <= d, or
// nullopt. Cost bounded by the number of irredundant prefixes of length <= d.
inline std::optional<GeneratorSequence> has_generating_sequence_of_size(const CayleyTable& g,
                                                                        int d) {
  if (d < 0) fail(errc::invalid_order, "generating sequence bound must be >= 0");
  GeneratorSequence seq;
  ElementSet trivial(g.n);
  trivial.insert(g.identity);
  if (detail::first_generating_sequence(g, trivial, seq, d)) return seq;
  return std::nullopt;
}

// Smallest normal subgroup containing x: close under conjugation and
// multiplication until a fixpoint.
inline ElementSet normal_closure(const CayleyTable& g, int x) {
  ElementSet s = closure(g, ElementSet::single(g.n, x));
  bool changed = true;
  while (changed) {
    changed = false;
    ElementSet grown = s;
    for (int y : s.members()) {
      for (int a = 0; a < g.n; ++a) {
        int c = g.mul(g.mul(a, y), g.inv(a));
        if (grown.insert(c)) changed = true;
      }
    }
    if (changed) s = closure(g, grown);
  }
  return s;
}

namespace detail {

inline void require_subgroup(const CayleyTable& g, const ElementSet& s, const char* who) {
  if (s.empty()) fail(errc::not_a_subgroup, std::string(who) + ": empty set is not a subgroup");
  std::vector<int> ms = s.members();
  for (int a : ms)
    for (int b : ms)
      if (!s.contains(g.mul(a, b)))
        fail(errc::not_a_subgroup, std::string(who) + ": set not closed at (" +
                                       std::to_string(a) + "," + std::to_string(b) + ")");
}

}  // namespace detail

// pre: s is a subgroup (throws NotASubgroup otherwise)
inline bool is_normal(const CayleyTable& g, const ElementSet& s) {
  detail::require_subgroup(g, s, "is_normal");
  for (int a = 0; a < g.n; ++a)
    for (int x : s.members())
      if (!s.contains(g.mul(g.mul(a, x), g.inv(a)))) return false;
  return true;
}

struct QuotientResult {
  CayleyTable quotient;
  std::vector<int> projection;     // element of g -> coset index
  std::vector<ElementSet> cosets;  // coset index -> members
};

// Cosets are numbered in order of their least member. The projection is a
// surjective homomorphism and the preimage of the quotient identity is
// exactly the input subgroup.
inline QuotientResult quotient(const CayleyTable& g, const ElementSet& normal_sub) {
  detail::require_subgroup(g, normal_sub, "quotient");
  if (!is_normal(g, normal_sub)) fail(errc::not_normal, "quotient: subgroup is not normal");

  QuotientResult out;
  out.projection.assign(static_cast<std::size_t>(g.n), -1);
  std::vector<int> sub = normal_sub.members();
  for (int x = 0; x < g.n; ++x) {
    if (out.projection[static_cast<std::size_t>(x)] >= 0) continue;
    int idx = static_cast<int>(out.cosets.size());
    ElementSet coset(g.n);
    for (int m : sub) {
      int y = g.mul(x, m);
      out.projection[static_cast<std::size_t>(y)] = idx;
      coset.insert(y);
    }
    out.cosets.push_back(coset);
  }

  int qn = static_cast<int>(out.cosets.size());
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(qn),
                                    std::vector<int>(static_cast<std::size_t>(qn)));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      raw[static_cast<std::size_t>(out.projection[static_cast<std::size_t>(a)])]
         [static_cast<std::size_t>(out.projection[static_cast<std::size_t>(b)])] =
             out.projection[static_cast<std::size_t>(g.mul(a, b))];
  out.quotient = validate_cayley_table(qn, raw);
  return out;
}

struct SubgroupTable {
  CayleyTable group;
  std::vector<int> embedding;  // subgroup element index -> original element
};

// pre: s is closed (throws NotASubgroup otherwise). The embedding is an
// injective homomorphism onto s.
inline SubgroupTable subgroup_table(const CayleyTable& g, const ElementSet& s) {
  detail::require_subgroup(g, s, "subgroup_table");
  SubgroupTable out;
  out.embedding = s.members();
  std::vector<int> to_new(static_cast<std::size_t>(g.n), -1);
  for (std::size_t i = 0; i < out.embedding.size(); ++i)
    to_new[static_cast<std::size_t>(out.embedding[i])] = static_cast<int>(i);
  int m = static_cast<int>(out.embedding.size());
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(m),
                                    std::vector<int>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          to_new[static_cast<std::size_t>(g.mul(out.embedding[static_cast<std::size_t>(i)],
                                                out.embedding[static_cast<std::size_t>(j)]))];
  out.group = validate_cayley_table(m, raw);
  return out;
}

}  // namespace tableiso
