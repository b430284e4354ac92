#pragma once

// Brute-force oracles for the test suite, written against the raw tables
// only. Everything here prefers clarity over speed and is independent of the
// library's search machinery: subgroups are grown by fixed-point closure
// over member vectors, isomorphisms by plain backtracking over bijections.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tableiso/cayley.hpp"
#include "tableiso/ring.hpp"
#include "tableiso/series.hpp"

namespace oracle {

using tableiso::CayleyTable;
using tableiso::RingTable;

using Members = std::vector<int>;  // sorted element list

inline int element_order(const CayleyTable& g, int x) {
  int order = 1;
  int cur = x;
  while (cur != g.identity) {
    cur = g.mul(cur, x);
    ++order;
  }
  return order;
}

inline Members closure_of(const CayleyTable& g, Members seed) {
  std::set<int> have(seed.begin(), seed.end());
  have.insert(g.identity);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> cur(have.begin(), have.end());
    for (int a : cur)
      for (int b : cur)
        if (have.insert(g.mul(a, b)).second) changed = true;
  }
  return Members(have.begin(), have.end());
}

inline std::vector<Members> all_subgroups(const CayleyTable& g) {
  std::set<Members> found;
  std::vector<Members> frontier{closure_of(g, {})};
  found.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<Members> next;
    for (const Members& s : frontier) {
      for (int x = 0; x < g.n; ++x) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        Members grown = s;
        grown.push_back(x);
        grown = closure_of(g, grown);
        if (found.insert(grown).second) next.push_back(grown);
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Members>(found.begin(), found.end());
}

inline bool is_normal(const CayleyTable& g, const Members& s) {
  for (int a = 0; a < g.n; ++a) {
    int ainv = g.inv(a);
    for (int x : s)
      if (!std::binary_search(s.begin(), s.end(), g.mul(g.mul(a, x), ainv))) return false;
  }
  return true;
}

inline std::vector<Members> all_normal_subgroups(const CayleyTable& g) {
  std::vector<Members> out;
  for (const Members& s : all_subgroups(g))
    if (is_normal(g, s)) out.push_back(s);
  return out;
}

// quotient of the subgroup spanned by big by the normal subgroup small;
// elements of the result are cosets, numbered by least member
inline CayleyTable factor_group(const CayleyTable& g, const Members& small, const Members& big) {
  std::map<int, int> coset_of;  // element of big -> coset index
  std::vector<int> reps;
  for (int x : big) {
    if (coset_of.count(x)) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int m : small) coset_of[g.mul(x, m)] = idx;
  }
  int qn = static_cast<int>(reps.size());
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(qn),
                                    std::vector<int>(static_cast<std::size_t>(qn)));
  for (int a = 0; a < qn; ++a)
    for (int b = 0; b < qn; ++b)
      raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          coset_of.at(g.mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]));
  return tableiso::validate_cayley_table(qn, raw);
}

inline bool is_simple_group(const CayleyTable& g) {
  if (g.n < 2) return false;
  for (const Members& s : all_normal_subgroups(g))
    if (static_cast<int>(s.size()) != 1 && static_cast<int>(s.size()) != g.n) return false;
  return true;
}

// Backtracking isomorphism search with product-closure propagation. fn is
// called with each complete isomorphism map; returning false stops the
// enumeration early.
template <typename Fn>
class IsoEnumerator {
 public:
  IsoEnumerator(const CayleyTable& g, const CayleyTable& h, Fn& fn)
      : g_(g), h_(h), fn_(fn), fwd_(static_cast<std::size_t>(g.n), -1),
        bwd_(static_cast<std::size_t>(h.n), -1) {
    for (int x = 0; x < g_.n; ++x) gorder_.push_back(oracle::element_order(g_, x));
    for (int y = 0; y < h_.n; ++y) horder_.push_back(oracle::element_order(h_, y));
  }

  // returns false if fn asked to stop
  bool run() {
    if (g_.n != h_.n) return true;
    std::vector<std::pair<int, int>> log;
    if (!propagate(g_.identity, h_.identity, log)) return true;
    bool keep_going = descend();
    rollback(log);
    return keep_going;
  }

 private:
  bool propagate(int x, int y, std::vector<std::pair<int, int>>& log) {
    std::vector<std::pair<int, int>> work{{x, y}};
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      if (fwd_[static_cast<std::size_t>(u)] != -1) {
        if (fwd_[static_cast<std::size_t>(u)] != v) return false;
        continue;
      }
      if (bwd_[static_cast<std::size_t>(v)] != -1) return false;
      if (gorder_[static_cast<std::size_t>(u)] != horder_[static_cast<std::size_t>(v)]) return false;
      fwd_[static_cast<std::size_t>(u)] = v;
      bwd_[static_cast<std::size_t>(v)] = u;
      log.emplace_back(u, v);
      for (int z = 0; z < g_.n; ++z) {
        int w = fwd_[static_cast<std::size_t>(z)];
        if (w == -1) continue;
        work.emplace_back(g_.mul(u, z), h_.mul(v, w));
        work.emplace_back(g_.mul(z, u), h_.mul(w, v));
      }
    }
    return true;
  }

  void rollback(const std::vector<std::pair<int, int>>& log) {
    for (auto [u, v] : log) {
      fwd_[static_cast<std::size_t>(u)] = -1;
      bwd_[static_cast<std::size_t>(v)] = -1;
    }
  }

  bool descend() {
    int x = -1;
    for (int cand = 0; cand < g_.n; ++cand)
      if (fwd_[static_cast<std::size_t>(cand)] == -1) {
        x = cand;
        break;
      }
    if (x == -1) return fn_(fwd_);
    for (int y = 0; y < h_.n; ++y) {
      if (bwd_[static_cast<std::size_t>(y)] != -1) continue;
      if (horder_[static_cast<std::size_t>(y)] != gorder_[static_cast<std::size_t>(x)]) continue;
      std::vector<std::pair<int, int>> log;
      bool ok = propagate(x, y, log);
      if (ok && !descend()) {
        rollback(log);
        return false;
      }
      rollback(log);
    }
    return true;
  }

  const CayleyTable& g_;
  const CayleyTable& h_;
  Fn& fn_;
  std::vector<int> fwd_, bwd_;
  std::vector<int> gorder_, horder_;
};

template <typename Fn>
inline void for_each_isomorphism(const CayleyTable& g, const CayleyTable& h, Fn fn) {
  IsoEnumerator<Fn> e(g, h, fn);
  e.run();
}

inline bool groups_isomorphic(const CayleyTable& g, const CayleyTable& h) {
  bool found = false;
  for_each_isomorphism(g, h, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

inline std::vector<std::vector<int>> all_isomorphisms(const CayleyTable& g, const CayleyTable& h) {
  std::vector<std::vector<int>> out;
  for_each_isomorphism(g, h, [&](const std::vector<int>& map) {
    out.push_back(map);
    return true;
  });
  return out;
}

inline bool is_group_isomorphism(const CayleyTable& g, const CayleyTable& h,
                                 const std::vector<int>& map) {
  if (g.n != h.n || static_cast<int>(map.size()) != g.n) return false;
  std::vector<char> hit(static_cast<std::size_t>(h.n), 0);
  for (int x = 0; x < g.n; ++x) {
    int y = map[static_cast<std::size_t>(x)];
    if (y < 0 || y >= h.n || hit[static_cast<std::size_t>(y)]) return false;
    hit[static_cast<std::size_t>(y)] = 1;
  }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (map[static_cast<std::size_t>(g.mul(a, b))] !=
          h.mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
        return false;
  return true;
}

inline bool rings_isomorphic(const RingTable& r1, const RingTable& r2) {
  if (r1.n != r2.n) return false;
  bool found = false;
  for_each_isomorphism(r1.add, r2.add, [&](const std::vector<int>& map) {
    for (int a = 0; a < r1.n; ++a)
      for (int b = 0; b < r1.n; ++b)
        if (map[static_cast<std::size_t>(r1.mul(a, b))] !=
            r2.mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
          return true;  // additive map fails on multiplication, keep searching
    found = true;
    return false;
  });
  return found;
}

inline bool is_ring_isomorphism(const RingTable& r1, const RingTable& r2,
                                const std::vector<int>& map) {
  if (!is_group_isomorphism(r1.add, r2.add, map)) return false;
  for (int a = 0; a < r1.n; ++a)
    for (int b = 0; b < r1.n; ++b)
      if (map[static_cast<std::size_t>(r1.mul(a, b))] !=
          r2.mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
        return false;
  return true;
}

// iterated socle preimages of g, outermost first: soc(G), then the preimage
// of soc(G/soc(G)), and so on; empty for simple (or trivial) groups at every
// level they are reached
inline std::vector<Members> socle_tower(const CayleyTable& g) {
  std::vector<Members> out;
  if (g.n == 1 || is_simple_group(g)) return out;

  std::vector<Members> normals = all_normal_subgroups(g);
  std::vector<Members> minimal;
  for (const Members& s : normals) {
    if (s.size() == 1) continue;
    bool is_min = true;
    for (const Members& other : normals) {
      if (other.size() == 1 || other == s) continue;
      if (other.size() < s.size() && std::includes(s.begin(), s.end(), other.begin(), other.end()))
        is_min = false;
    }
    if (is_min) minimal.push_back(s);
  }
  Members soc_seed;
  for (const Members& s : minimal) soc_seed.insert(soc_seed.end(), s.begin(), s.end());
  Members soc = closure_of(g, soc_seed);
  out.push_back(soc);
  if (static_cast<int>(soc.size()) == g.n) return out;

  // recurse on g/soc and pull the tower back through the projection
  std::map<int, int> coset_of;
  std::vector<int> reps;
  for (int x = 0; x < g.n; ++x) {
    if (coset_of.count(x)) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int m : soc) coset_of[g.mul(x, m)] = idx;
  }
  Members everything(static_cast<std::size_t>(g.n));
  for (int x = 0; x < g.n; ++x) everything[static_cast<std::size_t>(x)] = x;
  CayleyTable q = factor_group(g, soc, everything);
  for (const Members& level : socle_tower(q)) {
    Members pre;
    for (int x = 0; x < g.n; ++x)
      if (std::binary_search(level.begin(), level.end(), coset_of.at(x))) pre.push_back(x);
    out.push_back(pre);
  }
  return out;
}

// Full validity check of a produced composition series record: chain from 1
// to G, strictly ascending subgroups, each normal in its successor with a
// simple factor, and the socle marks sitting exactly on the socle tower.
inline bool is_valid_composition_series(const CayleyTable& g,
                                        const tableiso::CompositionSeriesRec& rec) {
  const auto& chain = rec.chain;
  if (chain.empty()) return false;
  if (chain.front().size() != 1 || !chain.front().contains(g.identity)) return false;
  if (chain.back().size() != g.n) return false;
  std::vector<Members> levels;
  for (const tableiso::ElementSet& s : chain) levels.push_back(s.members());
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i].size() >= levels[i + 1].size()) return false;
    if (!std::includes(levels[i + 1].begin(), levels[i + 1].end(), levels[i].begin(),
                       levels[i].end()))
      return false;
  }
  for (const Members& s : levels)
    if (closure_of(g, s) != s) return false;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    // normal in the successor, with a simple factor
    CayleyTable big = factor_group(g, {g.identity}, levels[i + 1]);  // relabeled copy of the subgroup
    std::map<int, int> to_big;
    for (std::size_t k = 0; k < levels[i + 1].size(); ++k)
      to_big[levels[i + 1][k]] = static_cast<int>(k);
    Members small;
    for (int x : levels[i]) small.push_back(to_big.at(x));
    std::sort(small.begin(), small.end());
    if (!is_normal(big, small)) return false;
    Members all(levels[i + 1].size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    if (!is_simple_group(factor_group(big, small, all))) return false;
  }

  std::vector<Members> tower = socle_tower(g);
  if (rec.socle_marks.size() != tower.size()) return false;
  for (std::size_t i = 0; i < tower.size(); ++i) {
    if (rec.socle_marks[i] >= chain.size()) return false;
    if (levels[rec.socle_marks[i]] != tower[i]) return false;
  }
  return true;
}

}  // namespace oracle
