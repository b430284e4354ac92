#pragma once

// Composition-series machinery for the second bidirectional pipeline. A
// series is built bottom-up: multiply simple subgroups of the minimal normal
// subgroups together until the socle is reached, label that level, then
// recurse on the quotient by the socle and pull the result back. Steps whose
// 1-based choice ordinal falls inside [a, b] are nondeterministic; all other
// steps take the first option in member order. Alice enumerates choices 1..t,
// Bob choices t+1 onward, with t derived from the socle layer sizes so that
// both sides stay near the square root of the total choice count.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tableiso/cayley.hpp"
#include "tableiso/errors.hpp"
#include "tableiso/group_iso.hpp"

namespace tableiso {

// Chain of subgroups from the trivial group to the whole group, strictly
// ascending, each normal in the next with simple factor. socle_marks are the
// chain indices of the iterated socles (socle of G, preimage of the socle of
// G/soc(G), ...), in ascending order.
struct CompositionSeriesRec {
  std::vector<ElementSet> chain;
  std::vector<std::size_t> socle_marks;

  bool operator==(const CompositionSeriesRec&) const = default;
};

// Nontrivial normal subgroups that are minimal by inclusion, sorted by
// ascending member lists. Every nontrivial normal subgroup contains the
// normal closure of each of its non-identity elements, so scanning single
// element closures finds them all.
inline std::vector<ElementSet> minimal_normal_subgroups(const CayleyTable& g) {
  std::vector<ElementSet> closures;
  for (int x = 0; x < g.n; ++x) {
    if (x == g.identity) continue;
    ElementSet c = normal_closure(g, x);
    if (std::find(closures.begin(), closures.end(), c) == closures.end())
      closures.push_back(std::move(c));
  }
  std::vector<ElementSet> out;
  for (const ElementSet& c : closures) {
    bool minimal = true;
    for (const ElementSet& other : closures)
      if (!(other == c) && other.is_subset_of(c)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_simple(const CayleyTable& g) {
  if (g.n < 2) return false;
  std::vector<ElementSet> mins = minimal_normal_subgroups(g);
  return mins.size() == 1 && mins[0] == ElementSet::full(g.n);
}

// Subgroup generated by all minimal normal subgroups.
inline ElementSet socle(const CayleyTable& g, const std::vector<ElementSet>& mins) {
  ElementSet seed = ElementSet::single(g.n, g.identity);
  for (const ElementSet& m : mins) seed = set_union(seed, m);
  return closure(g, seed);
}

// Simple minimal normal subgroups of each minimal normal subgroup of g,
// mapped back into g, deduplicated and sorted by member lists. This is the
// initial pool the socle tower draws from.
inline std::vector<ElementSet> simple_subgroup_pool(const CayleyTable& g,
                                                    const std::vector<ElementSet>& mins) {
  std::vector<ElementSet> pool;
  for (const ElementSet& n : mins) {
    SubgroupTable st = subgroup_table(g, n);
    for (const ElementSet& m : minimal_normal_subgroups(st.group)) {
      SubgroupTable inner = subgroup_table(st.group, m);
      if (!is_simple(inner.group)) continue;
      ElementSet lifted(g.n);
      for (int x : m.members()) lifted.insert(st.embedding[static_cast<std::size_t>(x)]);
      if (std::find(pool.begin(), pool.end(), lifted) == pool.end())
        pool.push_back(std::move(lifted));
    }
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Called with the number of options at a nondeterministic step; returns the
// index to take.
using Chooser = std::function<std::size_t(std::size_t)>;

namespace detail {

inline void insert_chain_member(std::vector<ElementSet>& chain, const ElementSet& sub) {
  for (const ElementSet& existing : chain)
    if (existing == sub) return;
  chain.push_back(sub);
  std::sort(chain.begin(), chain.end(),
            [](const ElementSet& a, const ElementSet& b) { return a.size() < b.size(); });
}

inline CompositionSeriesRec series_run(const CayleyTable& g, std::size_t a,
                                       std::optional<std::size_t> b, std::size_t& j,
                                       const Chooser& choose) {
  CompositionSeriesRec rec;
  ElementSet trivial = ElementSet::single(g.n, g.identity);
  ElementSet whole = ElementSet::full(g.n);
  rec.chain.push_back(trivial);
  if (g.n == 1) return rec;
  rec.chain.push_back(whole);

  std::vector<ElementSet> mins = minimal_normal_subgroups(g);
  bool simple = mins.size() == 1 && mins[0] == whole;
  ElementSet soc = socle(g, mins);
  std::vector<ElementSet> marked;

  if (!simple) {
    std::vector<ElementSet> pool = simple_subgroup_pool(g, mins);
    ElementSet k = trivial;
    while (!(k == soc)) {
      if (pool.empty()) throw std::logic_error("series_run: socle tower stalled");
      std::size_t ordinal = j + 1;
      bool nondet = a <= ordinal && (!b.has_value() || ordinal <= *b);
      std::size_t pick = 0;
      if (nondet) {
        pick = choose(pool.size());
        if (pick >= pool.size())
          fail(errc::choice_out_of_range, "series_run: choice " + std::to_string(pick) +
                                              " out of " + std::to_string(pool.size()));
      }
      k = closure(g, set_union(k, pool[pick]));
      insert_chain_member(rec.chain, k);
      j = ordinal;
      // keep one representative per distinct product with the new k
      std::vector<ElementSet> kept;
      std::vector<ElementSet> products;
      for (const ElementSet& cand : pool) {
        if (intersection_size(k, cand) != 1) continue;
        ElementSet prod = closure(g, set_union(k, cand));
        if (std::find(products.begin(), products.end(), prod) != products.end()) continue;
        kept.push_back(cand);
        products.push_back(std::move(prod));
      }
      pool = std::move(kept);
    }
    marked.push_back(soc);
  }

  if (!(soc == whole)) {
    QuotientResult q = quotient(g, soc);
    CompositionSeriesRec sub = series_run(q.quotient, a, b, j, choose);
    std::vector<ElementSet> pulled(sub.chain.size());
    for (std::size_t i = 0; i < sub.chain.size(); ++i) {
      ElementSet pre(g.n);
      for (int x = 0; x < g.n; ++x)
        if (sub.chain[i].contains(q.projection[static_cast<std::size_t>(x)])) pre.insert(x);
      pulled[i] = pre;
      insert_chain_member(rec.chain, pre);
    }
    for (std::size_t mark : sub.socle_marks) marked.push_back(pulled[mark]);
  }

  for (const ElementSet& m : marked)
    for (std::size_t i = 0; i < rec.chain.size(); ++i)
      if (rec.chain[i] == m) {
        rec.socle_marks.push_back(i);
        break;
      }
  std::sort(rec.socle_marks.begin(), rec.socle_marks.end());
  return rec;
}

}  // namespace detail

// One run with the given choice window [a, b] (b absent: unbounded) and
// starting choice ordinal offset j0.
inline CompositionSeriesRec composition_series(const CayleyTable& g, std::size_t a,
                                               std::optional<std::size_t> b, std::size_t j0,
                                               const Chooser& choose) {
  std::size_t j = j0;
  return detail::series_run(g, a, b, j, choose);
}

// The run where every step is arbitrary (empty choice window).
inline CompositionSeriesRec composition_series_arbitrary(const CayleyTable& g) {
  return composition_series(g, 1, 0, 0, [](std::size_t) -> std::size_t {
    throw std::logic_error("arbitrary series run must not reach a choice");
  });
}

struct SeriesEnumStats {
  std::uint64_t runs = 0;
  std::uint64_t choice_nodes = 0;
};

// All outputs of the nondeterministic runs over the window, deduplicated.
// Enumeration replays runs with an odometer over the observed option counts.
inline std::vector<CompositionSeriesRec> composition_series_all(const CayleyTable& g,
                                                                std::size_t a,
                                                                std::optional<std::size_t> b,
                                                                SeriesEnumStats* stats = nullptr) {
  std::vector<CompositionSeriesRec> out;
  std::vector<std::size_t> digits;
  std::vector<std::size_t> counts;
  for (;;) {
    std::size_t pos = 0;
    std::vector<std::size_t> seen;
    Chooser replay = [&](std::size_t options) -> std::size_t {
      if (pos >= digits.size()) digits.push_back(0);
      seen.push_back(options);
      return digits[pos++];
    };
    CompositionSeriesRec rec = composition_series(g, a, b, 0, replay);
    if (stats) {
      ++stats->runs;
      stats->choice_nodes += pos;
    }
    if (std::find(out.begin(), out.end(), rec) == out.end()) out.push_back(std::move(rec));
    counts = std::move(seen);
    std::size_t k = pos;
    while (k > 0 && digits[k - 1] + 1 >= counts[k - 1]) --k;
    if (k == 0) break;
    ++digits[k - 1];
    digits.resize(k);
  }
  return out;
}

inline std::vector<CompositionSeriesRec> composition_series_alice(const CayleyTable& g,
                                                                  std::size_t t,
                                                                  SeriesEnumStats* stats = nullptr) {
  return composition_series_all(g, 1, t, stats);
}

inline std::vector<CompositionSeriesRec> composition_series_bob(const CayleyTable& g,
                                                                std::size_t t,
                                                                SeriesEnumStats* stats = nullptr) {
  return composition_series_all(g, t + 1, std::nullopt, stats);
}

// Split point for the series pipeline plus the quantities it is derived
// from. For a p-group of order p^e the arbitrary run's socle marks sit at
// chain indices whose consecutive differences m_1..m_l are the socle layer
// ranks; layer i contributes T_i = m_i(m_i+1)/2 to the total choice-count
// exponent E (option counts at layer i are p^(m_i), p^(m_i)-ish, ...; only
// exponents matter, so all comparisons stay in exact integer arithmetic).
// t is the largest number of leading steps whose cumulative exponent stays
// within E/2.
struct TParams {
  std::size_t t = 0;
  int p = 0;
  std::size_t ell = 0;               // number of socle marks
  std::vector<std::size_t> layer_ranks;  // m_i
  std::uint64_t exponent_total = 0;  // E = sum of T_i
  CompositionSeriesRec arbitrary;
};

inline bool is_p_group(const CayleyTable& g, int* p_out = nullptr) {
  if (g.n < 2) return false;
  int p = smallest_prime_divisor(g.n);
  int rest = g.n;
  while (rest % p == 0) rest /= p;
  if (p_out) *p_out = p;
  return rest == 1;
}

inline TParams compute_t(const CayleyTable& g) {
  TParams out;
  if (g.n == 1) {
    out.arbitrary = composition_series_arbitrary(g);
    return out;
  }
  if (!is_p_group(g, &out.p))
    fail(errc::not_a_p_group, "compute_t: order " + std::to_string(g.n) + " is not a prime power");
  out.arbitrary = composition_series_arbitrary(g);

  std::size_t prev = 0;
  for (std::size_t mark : out.arbitrary.socle_marks) {
    if (mark > prev) out.layer_ranks.push_back(mark - prev);
    prev = mark;
  }
  out.ell = out.layer_ranks.size();
  if (out.ell == 0) return out;  // simple group, t = 0

  auto tri = [](std::uint64_t m) { return m * (m + 1) / 2; };
  for (std::size_t m : out.layer_ranks) out.exponent_total += tri(m);
  const std::uint64_t budget = out.exponent_total;

  // r: last layer whose predecessors' full exponents fit in half the budget
  std::size_t r = 1;
  std::uint64_t before = 0;
  while (r < out.ell && 2 * (before + tri(out.layer_ranks[r - 1])) <= budget) {
    before += tri(out.layer_ranks[r - 1]);
    ++r;
  }
  // u: steps taken inside layer r, exponents m_r, m_r - 1, ...
  std::uint64_t m_r = out.layer_ranks[r - 1];
  std::uint64_t u = 0;
  while (u < m_r && 2 * (before + (u + 1) * m_r - u * (u + 1) / 2) <= budget) ++u;

  std::size_t t = u;
  for (std::size_t i = 0; i + 1 < r; ++i) t += out.layer_ranks[i];
  out.t = t;
  return out;
}

namespace detail {

// first chain index whose subgroup contains each element
inline std::vector<int> chain_levels(const CayleyTable& g,
                                     const std::vector<ElementSet>& chain) {
  std::vector<int> level(static_cast<std::size_t>(g.n), -1);
  for (int x = 0; x < g.n; ++x)
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (chain[i].contains(x)) {
        level[static_cast<std::size_t>(x)] = static_cast<int>(i);
        break;
      }
  return level;
}

class SeriesIsoSearch {
 public:
  SeriesIsoSearch(const CayleyTable& g, const std::vector<int>& glevel, const CayleyTable& h,
                  const std::vector<int>& hlevel)
      : g_(g), h_(h), glevel_(glevel), hlevel_(hlevel),
        fwd_(static_cast<std::size_t>(g.n), -1), bwd_(static_cast<std::size_t>(h.n), -1),
        gorder_(static_cast<std::size_t>(g.n)), horder_(static_cast<std::size_t>(h.n)) {
    for (int x = 0; x < g_.n; ++x) gorder_[static_cast<std::size_t>(x)] = element_order(g_, x);
    for (int y = 0; y < h_.n; ++y) horder_[static_cast<std::size_t>(y)] = element_order(h_, y);
    order_.resize(static_cast<std::size_t>(g_.n));
    for (int x = 0; x < g_.n; ++x) order_[static_cast<std::size_t>(x)] = x;
    std::sort(order_.begin(), order_.end(), [this](int a, int b) {
      auto ka = std::make_tuple(glevel_[static_cast<std::size_t>(a)],
                                gorder_[static_cast<std::size_t>(a)], a);
      auto kb = std::make_tuple(glevel_[static_cast<std::size_t>(b)],
                                gorder_[static_cast<std::size_t>(b)], b);
      return ka < kb;
    });
  }

  std::optional<IsoWitness> run() {
    std::vector<std::pair<int, int>> log;
    if (!assign(g_.identity, h_.identity, log)) return std::nullopt;
    if (!extend()) return std::nullopt;
    return IsoWitness{fwd_};
  }

 private:
  bool assign(int x, int y, std::vector<std::pair<int, int>>& log) {
    std::vector<std::pair<int, int>> work{{x, y}};
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      if (fwd_[static_cast<std::size_t>(u)] != -1) {
        if (fwd_[static_cast<std::size_t>(u)] != v) return false;
        continue;
      }
      if (bwd_[static_cast<std::size_t>(v)] != -1) return false;
      if (glevel_[static_cast<std::size_t>(u)] != hlevel_[static_cast<std::size_t>(v)])
        return false;
      if (gorder_[static_cast<std::size_t>(u)] != horder_[static_cast<std::size_t>(v)])
        return false;
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

  bool extend() {
    int x = -1;
    for (int cand : order_)
      if (fwd_[static_cast<std::size_t>(cand)] == -1) {
        x = cand;
        break;
      }
    if (x == -1) return true;
    for (int y = 0; y < h_.n; ++y) {
      if (bwd_[static_cast<std::size_t>(y)] != -1) continue;
      if (hlevel_[static_cast<std::size_t>(y)] != glevel_[static_cast<std::size_t>(x)]) continue;
      if (horder_[static_cast<std::size_t>(y)] != gorder_[static_cast<std::size_t>(x)]) continue;
      std::vector<std::pair<int, int>> log;
      if (assign(x, y, log)) {
        if (extend()) return true;
        rollback(log);
      } else {
        rollback(log);
      }
    }
    return false;
  }

  const CayleyTable& g_;
  const CayleyTable& h_;
  const std::vector<int>& glevel_;
  const std::vector<int>& hlevel_;
  std::vector<int> fwd_, bwd_;
  std::vector<int> gorder_, horder_;
  std::vector<int> order_;
};

}  // namespace detail

// Isomorphism g -> h carrying sg.chain onto sh.chain level by level, or
// nullopt. Mark vectors are construction invariants of the group, so a
// mismatch rules a mapping out immediately.
inline std::optional<IsoWitness> series_isomorphic(const CayleyTable& g,
                                                   const CompositionSeriesRec& sg,
                                                   const CayleyTable& h,
                                                   const CompositionSeriesRec& sh) {
  if (g.n != h.n) return std::nullopt;
  if (sg.chain.size() != sh.chain.size()) return std::nullopt;
  if (sg.socle_marks != sh.socle_marks) return std::nullopt;
  for (std::size_t i = 0; i < sg.chain.size(); ++i)
    if (sg.chain[i].size() != sh.chain[i].size()) return std::nullopt;

  std::vector<int> glevel = detail::chain_levels(g, sg.chain);
  std::vector<int> hlevel = detail::chain_levels(h, sh.chain);
  detail::SeriesIsoSearch search(g, glevel, h, hlevel);
  std::optional<IsoWitness> found = search.run();
  if (found) {
    for (int x = 0; x < g.n; ++x)
      for (int y = 0; y < g.n; ++y)
        if (found->map[static_cast<std::size_t>(g.mul(x, y))] !=
            h.mul(found->map[static_cast<std::size_t>(x)],
                  found->map[static_cast<std::size_t>(y)]))
          throw std::logic_error("series_isomorphic: inconsistent witness");
  }
  return found;
}

// Composition-series decider for p-groups: equal split points are required,
// then any Alice output matching any Bob output up to isomorphism settles it.
inline IsoDecision p_group_iso_via_series(const CayleyTable& g, const CayleyTable& h) {
  detail::Timer timer;
  if (g.n != h.n)
    fail(errc::order_mismatch, "p_group_iso_via_series: orders " + std::to_string(g.n) +
                                   " and " + std::to_string(h.n) + " differ");
  IsoDecision out;
  out.stats.algorithm = "series";
  out.stats.n = g.n;
  if (g.n == 1) {
    out.isomorphic = true;
    out.witness = IsoWitness{{h.identity}};
    out.stats.a_count = 1;
    out.stats.b_count = 1;
    out.stats.millis = timer.millis();
    return out;
  }

  TParams tg = compute_t(g);
  TParams th = compute_t(h);
  out.stats.p = tg.p;
  out.stats.d = static_cast<int>(tg.t);
  if (tg.t != th.t) {
    out.stats.millis = timer.millis();
    return out;
  }

  std::vector<CompositionSeriesRec> alice = composition_series_alice(g, tg.t);
  std::vector<CompositionSeriesRec> bob = composition_series_bob(h, th.t);
  out.stats.a_count = alice.size();
  out.stats.b_count = bob.size();
  for (const CompositionSeriesRec& sa : alice) {
    for (const CompositionSeriesRec& sb : bob) {
      std::optional<IsoWitness> w = series_isomorphic(g, sa, h, sb);
      if (w) {
        out.isomorphic = true;
        out.witness = std::move(w);
        out.stats.millis = timer.millis();
        return out;
      }
    }
  }
  out.stats.millis = timer.millis();
  return out;
}

}  // namespace tableiso
