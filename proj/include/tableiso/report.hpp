#pragma once

// JSON run reports for the CLI. The schema is versioned with a top-level
// "schema": 1 and keeps a fixed key order; delta is null for unchunked runs
// and witness is null when no isomorphism map is available.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tableiso/group_iso.hpp"

namespace tableiso {

struct RunReport {
  bool isomorphic = false;
  DecisionStats stats;
  std::optional<std::vector<int>> witness;
};

inline RunReport run_report(const IsoDecision& dec) {
  RunReport r;
  r.isomorphic = dec.isomorphic;
  r.stats = dec.stats;
  if (dec.witness) r.witness = dec.witness->map;
  return r;
}

inline nlohmann::ordered_json report_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["isomorphic"] = r.isomorphic;
  j["algorithm"] = r.stats.algorithm;
  j["n"] = r.stats.n;
  j["p"] = r.stats.p;
  j["d"] = r.stats.d;
  if (r.stats.delta)
    j["delta"] = *r.stats.delta;
  else
    j["delta"] = nullptr;
  j["a_count"] = r.stats.a_count;
  j["b_count"] = r.stats.b_count;
  j["chunk_pairs"] = r.stats.chunk_pairs;
  j["peak_fingerprints"] = r.stats.peak_fingerprints;
  j["millis"] = r.stats.millis;
  if (r.witness)
    j["witness"] = *r.witness;
  else
    j["witness"] = nullptr;
  return j;
}

}  // namespace tableiso
