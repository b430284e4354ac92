// iso: decide isomorphism of finite groups and rings given as explicit
// multiplication tables.
//
//   iso group A B [--algo bidi|genenum] [--delta D|all] [--threads k]
//                 [--json] [--witness]
//   iso ring A B  [same options]
//   iso pgroup A B [--json] [--witness]
//   iso series A [--t T]
//   iso gen <spec...> [-o FILE]
//   iso bench --family F [--max-order M] [--deltas 1,16,all]
//
// Exit codes: 0 isomorphic (or success for gen/series/bench), 1 not
// isomorphic, 2 error. The ISO_MAX_ORDER environment variable overrides the
// default input order cap of 256.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "tableiso/corpus.hpp"
#include "tableiso/group_iso.hpp"
#include "tableiso/report.hpp"
#include "tableiso/ring.hpp"
#include "tableiso/series.hpp"
#include "tableiso/table_io.hpp"

namespace {

int max_order_from_env() {
  const char* env = std::getenv("ISO_MAX_ORDER");
  if (!env) return tableiso::kDefaultMaxOrder;
  std::string text(env);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 1)
    tableiso::fail(tableiso::errc::syntax_error,
                   "ISO_MAX_ORDER must be a positive integer, got '" + text + "'");
  return v;
}

tableiso::CayleyTable load_group(const std::string& path, int max_order) {
  tableiso::AnyTable t = tableiso::read_table_file(path, max_order);
  if (!std::holds_alternative<tableiso::CayleyTable>(t))
    tableiso::fail(tableiso::errc::syntax_error, "'" + path + "' is a ring file, expected a group");
  return std::get<tableiso::CayleyTable>(t);
}

tableiso::RingTable load_ring(const std::string& path, int max_order) {
  tableiso::AnyTable t = tableiso::read_table_file(path, max_order);
  if (!std::holds_alternative<tableiso::RingTable>(t))
    tableiso::fail(tableiso::errc::syntax_error, "'" + path + "' is a group file, expected a ring");
  return std::get<tableiso::RingTable>(t);
}

tableiso::ChunkPlan plan_from_flag(const std::string& delta) {
  if (delta.empty() || delta == "all") return tableiso::ChunkPlan::unbounded();
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(delta, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != delta.size() || v < 1)
    tableiso::fail(tableiso::errc::syntax_error,
                   "--delta takes a positive integer or 'all', got '" + delta + "'");
  return tableiso::ChunkPlan::with_delta(static_cast<std::size_t>(v));
}

void print_decision(const tableiso::IsoDecision& dec, bool json, bool witness) {
  tableiso::RunReport report = tableiso::run_report(dec);
  if (!witness && !json) report.witness.reset();
  if (json) {
    std::cout << tableiso::report_json(report).dump(2) << "\n";
    return;
  }
  const tableiso::DecisionStats& s = dec.stats;
  std::cout << (dec.isomorphic ? "isomorphic" : "not isomorphic") << " (algorithm " << s.algorithm
            << ", n " << s.n << ", p " << s.p << ", d " << s.d << ", delta "
            << (s.delta ? std::to_string(*s.delta) : std::string("all")) << ", |A| " << s.a_count
            << ", |B| " << s.b_count << ", chunk_pairs " << s.chunk_pairs << ", peak "
            << s.peak_fingerprints << ", " << s.millis << " ms)\n";
  if (witness && report.witness) {
    std::cout << "witness:";
    for (std::size_t x = 0; x < report.witness->size(); ++x)
      std::cout << " " << x << "->" << (*report.witness)[x];
    std::cout << "\n";
  }
}

// order mismatch is decided here, before any engine runs
bool order_mismatch(int ng, int nh, const std::string& algo, bool json, bool witness) {
  if (ng == nh) return false;
  tableiso::IsoDecision dec;
  dec.isomorphic = false;
  dec.stats.algorithm = algo;
  dec.stats.n = ng;
  print_decision(dec, json, witness);
  return true;
}

int cmd_group(const std::string& a, const std::string& b, const std::string& algo,
              const std::string& delta, int threads, bool json, bool witness, int max_order) {
  tableiso::CayleyTable g = load_group(a, max_order);
  tableiso::CayleyTable h = load_group(b, max_order);
  if (order_mismatch(g.n, h.n, algo, json, witness)) return 1;
  tableiso::IsoDecision dec =
      algo == "genenum" ? tableiso::generator_enumeration(g, h)
                        : tableiso::is_isomorphic_groups(g, h, plan_from_flag(delta), threads);
  print_decision(dec, json, witness);
  return dec.isomorphic ? 0 : 1;
}

int cmd_ring(const std::string& a, const std::string& b, const std::string& algo,
             const std::string& delta, int threads, bool json, bool witness, int max_order) {
  tableiso::RingTable r1 = load_ring(a, max_order);
  tableiso::RingTable r2 = load_ring(b, max_order);
  if (order_mismatch(r1.n, r2.n, algo, json, witness)) return 1;
  tableiso::IsoDecision dec =
      algo == "genenum" ? tableiso::ring_generator_enumeration(r1, r2)
                        : tableiso::is_isomorphic_rings(r1, r2, plan_from_flag(delta), threads);
  print_decision(dec, json, witness);
  return dec.isomorphic ? 0 : 1;
}

int cmd_pgroup(const std::string& a, const std::string& b, bool json, bool witness, int max_order) {
  tableiso::CayleyTable g = load_group(a, max_order);
  tableiso::CayleyTable h = load_group(b, max_order);
  if (order_mismatch(g.n, h.n, "series", json, witness)) return 1;
  tableiso::IsoDecision dec = tableiso::p_group_iso_via_series(g, h);
  print_decision(dec, json, witness);
  return dec.isomorphic ? 0 : 1;
}

int cmd_series(const std::string& a, int t_override, int max_order) {
  tableiso::CayleyTable g = load_group(a, max_order);
  tableiso::CompositionSeriesRec rec = tableiso::composition_series_arbitrary(g);
  std::cout << "group of order " << g.n << "\n";
  std::cout << "chain (" << rec.chain.size() << " subgroups):\n";
  for (std::size_t i = 0; i < rec.chain.size(); ++i) {
    bool marked = std::find(rec.socle_marks.begin(), rec.socle_marks.end(), i) !=
                  rec.socle_marks.end();
    std::cout << "  " << i << ":";
    for (int x : rec.chain[i].members()) std::cout << " " << x;
    if (marked) std::cout << "  [socle]";
    std::cout << "\n";
  }

  int p = 0;
  if (!tableiso::is_p_group(g, &p)) {
    std::cout << "not a p-group; no split point\n";
    return 0;
  }
  std::size_t t = 0;
  if (t_override >= 0) {
    t = static_cast<std::size_t>(t_override);
    std::cout << "t: " << t << " (override)\n";
  } else {
    tableiso::TParams params = tableiso::compute_t(g);
    t = params.t;
    std::cout << "t: " << t << "\n";
  }
  tableiso::SeriesEnumStats astats, bstats;
  std::size_t alice = tableiso::composition_series_alice(g, t, &astats).size();
  std::size_t bob = tableiso::composition_series_bob(g, t, &bstats).size();
  std::cout << "alice: " << alice << " series (" << astats.runs << " runs)\n";
  std::cout << "bob: " << bob << " series (" << bstats.runs << " runs)\n";
  return 0;
}

int cmd_gen(const std::vector<std::string>& tokens, const std::string& out_path, int max_order) {
  std::string spec;
  for (const std::string& tok : tokens) {
    if (!spec.empty()) spec.push_back(' ');
    spec += tok;
  }
  tableiso::AnyTable table;
  if (tableiso::is_ring_spec(spec))
    table = tableiso::make_ring(spec, max_order);
  else
    table = tableiso::make_group(spec, max_order);
  if (out_path.empty())
    std::cout << tableiso::serialize_table(table);
  else
    tableiso::write_table_file(out_path, table);
  return 0;
}

int cmd_bench(const std::string& family, int bench_max, const std::string& deltas_flag,
              int max_order) {
  std::vector<std::string> specs;
  if (family == "cyclic") {
    for (int k = 4; k <= bench_max; k *= 2) specs.push_back("cyclic " + std::to_string(k));
  } else if (family == "elementary") {
    for (int k = 2, n = 4; n <= bench_max; ++k, n *= 2)
      specs.push_back("elementary 2 " + std::to_string(k));
  } else if (family == "dihedral") {
    for (int k = 4; 2 * k <= bench_max; k *= 2) specs.push_back("dihedral " + std::to_string(k));
  } else if (family == "heisenberg") {
    for (int p : {2, 3, 5})
      if (p * p * p <= bench_max) specs.push_back("heisenberg " + std::to_string(p));
  } else {
    tableiso::fail(tableiso::errc::unknown_spec,
                   "--family must be cyclic, elementary, dihedral, or heisenberg");
  }

  std::vector<std::string> delta_flags;
  std::stringstream ss(deltas_flag);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) delta_flags.push_back(item);
  if (delta_flags.empty())
    tableiso::fail(tableiso::errc::syntax_error, "--deltas needs at least one entry");

  std::cout << "n,algo,delta,candidates,chunk_pairs,millis\n";
  for (const std::string& spec : specs) {
    tableiso::CayleyTable g = tableiso::make_group(spec, max_order);
    tableiso::CayleyTable h = tableiso::relabeled_copy(g, 0x5eedULL + static_cast<unsigned>(g.n));
    bool first = true;
    bool first_iso = false;
    std::optional<tableiso::IsoWitness> first_witness;
    for (const std::string& df : delta_flags) {
      tableiso::IsoDecision dec = tableiso::is_isomorphic_groups(g, h, plan_from_flag(df));
      if (!dec.isomorphic)
        throw std::logic_error("bench: relabeled copy of '" + spec + "' reported not isomorphic");
      if (first) {
        first = false;
        first_iso = dec.isomorphic;
        first_witness = dec.witness;
      } else if (dec.isomorphic != first_iso ||
                 (dec.witness && first_witness && !(dec.witness->map == first_witness->map))) {
        throw std::logic_error("bench: delta changed the outcome for '" + spec + "'");
      }
      std::cout << dec.stats.n << "," << dec.stats.algorithm << ","
                << (dec.stats.delta ? std::to_string(*dec.stats.delta) : std::string("all")) << ","
                << (dec.stats.a_count + dec.stats.b_count) << "," << dec.stats.chunk_pairs << ","
                << dec.stats.millis << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isomorphism of finite groups and rings given as multiplication tables"};
  app.require_subcommand(1);

  std::string file_a, file_b, algo = "bidi", delta, out_path, family, deltas_flag = "1,16,all";
  int threads = 1, t_override = -1, bench_max = 64;
  bool json = false, witness = false;

  auto add_pair_options = [&](CLI::App* cmd, bool with_algo_options) {
    cmd->add_option("A", file_a, "first table file")->required();
    cmd->add_option("B", file_b, "second table file")->required();
    if (with_algo_options) {
      cmd->add_option("--algo", algo, "bidi (default) or genenum")
          ->check(CLI::IsMember({"bidi", "genenum"}));
      cmd->add_option("--delta", delta, "chunk size (positive integer) or 'all' for unbounded");
      cmd->add_option("--threads", threads, "worker threads for chunk scanning")
          ->check(CLI::PositiveNumber);
    }
    cmd->add_flag("--json", json, "emit a JSON report");
    cmd->add_flag("--witness", witness, "print the isomorphism map if one is found");
  };

  CLI::App* group_cmd = app.add_subcommand("group", "decide isomorphism of two groups");
  add_pair_options(group_cmd, true);
  CLI::App* ring_cmd = app.add_subcommand("ring", "decide isomorphism of two rings");
  add_pair_options(ring_cmd, true);
  CLI::App* pgroup_cmd =
      app.add_subcommand("pgroup", "decide isomorphism of two p-groups via composition series");
  add_pair_options(pgroup_cmd, false);

  CLI::App* series_cmd =
      app.add_subcommand("series", "print a composition series and the series split point");
  series_cmd->add_option("A", file_a, "group table file")->required();
  series_cmd->add_option("--t", t_override, "override the split point for the alice/bob counts");

  std::vector<std::string> spec_tokens;
  CLI::App* gen_cmd = app.add_subcommand("gen", "construct a corpus group or ring");
  gen_cmd->add_option("spec", spec_tokens, "family spec, e.g. 'elementary 2 4' or 'gf 9'")
      ->required()
      ->expected(-1);
  gen_cmd->add_option("-o,--output", out_path, "output file (default: stdout)");

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "time a family against relabeled copies across chunk sizes");
  bench_cmd->add_option("--family", family, "cyclic, elementary, dihedral, or heisenberg")
      ->required();
  bench_cmd->add_option("--max-order", bench_max, "largest order in the sweep");
  bench_cmd->add_option("--deltas", deltas_flag, "comma list of chunk sizes, 'all' for unbounded");

  CLI11_PARSE(app, argc, argv);

  try {
    int max_order = max_order_from_env();
    if (group_cmd->parsed())
      return cmd_group(file_a, file_b, algo, delta, threads, json, witness, max_order);
    if (ring_cmd->parsed())
      return cmd_ring(file_a, file_b, algo, delta, threads, json, witness, max_order);
    if (pgroup_cmd->parsed()) return cmd_pgroup(file_a, file_b, json, witness, max_order);
    if (series_cmd->parsed()) return cmd_series(file_a, t_override, max_order);
    if (gen_cmd->parsed()) return cmd_gen(spec_tokens, out_path, max_order);
    if (bench_cmd->parsed()) return cmd_bench(family, bench_max, deltas_flag, max_order);
  } catch (const tableiso::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
