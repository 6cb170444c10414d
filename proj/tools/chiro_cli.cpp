// Command-line interface: validation, extreme elements, canonical
// decomposition, exact triangulation counting, chain formulas, verified
// realization, and random tree generation.
//
// Exit codes: 0 success, 1 negative result (axiom/tree violation,
// realization not found, confluence mismatch), 2 malformed input.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chiro/canonical.hpp"
#include "chiro/counting.hpp"
#include "chiro/fingerprint.hpp"
#include "chiro/io.hpp"
#include "chiro/random_tree.hpp"
#include "chiro/realize.hpp"

using namespace chiro;

namespace {

struct DbOptions {
  std::string path;
  int n = 0;
  bool big_endian = false;

  std::optional<OrderTypeDb> open() const {
    if (path.empty()) return std::nullopt;
    if (n == 0)
      throw Error(ErrorKind::ParseError, "--db requires --db-n (points per record)");
    return open_order_type_db(path, n, big_endian);
  }
};

void add_db_options(CLI::App* cmd, DbOptions& db) {
  cmd->add_option("--db", db.path, "order type database file for db_index nodes");
  cmd->add_option("--db-n", db.n, "points per database record");
  cmd->add_flag("--big-endian", db.big_endian, "decode 16-bit coordinates big-endian");
}

bool is_tree_file(const json& j) { return j.is_object() && j.contains("nodes"); }

Chirotope chirotope_from_json(const json& j) {
  auto parsed = parse_chirotope_file(j);
  if (std::holds_alternative<PointConfig>(parsed))
    return chirotope_of_points(std::get<PointConfig>(parsed));
  return Chirotope::validated(std::get<SignFunction>(std::move(parsed)));
}

void write_output(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write " + out_path);
    f << j.dump(2) << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"chirotope decomposition & exact triangulation counting"};
  app.require_subcommand(1);

  // validate -----------------------------------------------------------
  std::string validate_file;
  bool validate_json = false;
  DbOptions validate_db;
  auto* validate = app.add_subcommand("validate", "check chirotope axioms or tree invariants");
  validate->add_option("file", validate_file)->required();
  validate->add_flag("--json", validate_json);
  add_db_options(validate, validate_db);

  // extremes -----------------------------------------------------------
  std::string extremes_file;
  bool extremes_json = false;
  auto* extremes = app.add_subcommand("extremes", "print extreme elements and the hull cycle");
  extremes->add_option("file", extremes_file)->required();
  extremes->add_flag("--json", extremes_json);

  // decompose ----------------------------------------------------------
  std::string decompose_file, decompose_out;
  int decompose_cap = kDefaultModuleSearchCap;
  auto* decompose =
      app.add_subcommand("decompose", "canonical chirotope tree of a chirotope (tree file out)");
  decompose->add_option("file", decompose_file)->required();
  decompose->add_option("--max-node-size", decompose_cap, "module search cap");
  decompose->add_option("-o,--output", decompose_out, "output path (default stdout)");

  // canonicalize ---------------------------------------------------------
  std::string canon_file, canon_out;
  int canon_cap = kDefaultModuleSearchCap;
  std::uint64_t canon_seed = 0;
  int canon_confluence = 0;
  auto* canon = app.add_subcommand("canonicalize", "rewrite a tree to its canonical form");
  canon->add_option("file", canon_file)->required();
  auto* seed_opt = canon->add_option("--seed", canon_seed, "pick rewrite steps pseudo-randomly");
  canon->add_option("--check-confluence", canon_confluence,
                    "re-run with K extra seeds and require identical fingerprints");
  canon->add_option("--max-node-size", canon_cap, "module search cap");
  canon->add_option("-o,--output", canon_out, "output path (default stdout)");

  // count ----------------------------------------------------------------
  std::string count_file;
  bool count_brute = false, count_json = false;
  int count_cap = kDefaultOracleCap;
  DbOptions count_db;
  auto* count = app.add_subcommand("count", "exact number of triangulations");
  count->add_option("file", count_file)->required();
  count->add_flag("--brute", count_brute, "force the enumeration oracle on the expansion");
  count->add_option("--cap", count_cap, "size cap for per-node enumeration");
  count->add_flag("--json", count_json);
  add_db_options(count, count_db);

  // chain ------------------------------------------------------------------
  std::string chain_sigma;
  bool chain_formula_only = false, chain_json = false;
  auto* chain = app.add_subcommand("chain", "triangulations of a two-block chain");
  chain->add_option("--sigma", chain_sigma, "binary word selecting the blocks")->required();
  chain->add_flag("--formula-only", chain_formula_only, "skip the tree computation");
  chain->add_flag("--json", chain_json);

  // realize -----------------------------------------------------------------
  std::string realize_file, realize_out;
  int realize_budget = kDefaultRealizeBudget;
  DbOptions realize_db;
  auto* realize = app.add_subcommand("realize", "verified point realization of a tree");
  realize->add_option("file", realize_file)->required();
  realize->add_option("-o,--output", realize_out, "points file to write")->required();
  realize->add_option("--budget", realize_budget, "placement attempts per merge");
  add_db_options(realize, realize_db);

  // random-tree ----------------------------------------------------------
  int rt_nodes = 0, rt_node_size = 0, rt_max_degree = 3;
  std::uint64_t rt_seed = 0;
  std::string rt_out;
  auto* rt = app.add_subcommand("random-tree", "seeded random point-decorated tree");
  rt->add_option("--nodes", rt_nodes)->required();
  rt->add_option("--node-size", rt_node_size)->required();
  rt->add_option("--max-degree", rt_max_degree);
  rt->add_option("--seed", rt_seed)->required();
  rt->add_option("-o,--output", rt_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    json j = read_json_file(validate_file);
    if (is_tree_file(j)) {
      auto db = validate_db.open();
      try {
        LoadedTree lt = load_tree(j, db ? &*db : nullptr);
        if (validate_json)
          std::cout << json{{"ok", true}, {"kind", "tree"}}.dump() << "\n";
        else
          std::cout << "ok: valid chirotope tree (" << lt.tree.node_count() << " nodes, "
                    << lt.tree.ground_size() << " elements)\n";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TreeViolation && e.kind() != ErrorKind::AxiomViolation) throw;
        if (validate_json)
          std::cout << json{{"ok", false}, {"error", e.what()}}.dump() << "\n";
        else
          std::cout << "invalid: " << e.what() << "\n";
        return 1;
      }
    } else {
      auto parsed = parse_chirotope_file(j);
      if (std::holds_alternative<PointConfig>(parsed)) {
        const PointConfig& pc = std::get<PointConfig>(parsed);
        if (auto bad = pc.find_collinear_triple()) {
          std::string msg = "collinear triple " + (*bad)[0] + "," + (*bad)[1] + "," + (*bad)[2];
          if (validate_json)
            std::cout << json{{"ok", false}, {"error", msg}}.dump() << "\n";
          else
            std::cout << "invalid: " << msg << "\n";
          return 1;
        }
        chirotope_of_points(pc);
        if (validate_json)
          std::cout << json{{"ok", true}, {"kind", "points"}}.dump() << "\n";
        else
          std::cout << "ok: points in general position (" << pc.size() << ")\n";
      } else {
        const SignFunction& sf = std::get<SignFunction>(parsed);
        if (auto v = find_axiom_violation(sf)) {
          if (validate_json)
            std::cout << json{{"ok", false}, {"error", v->describe()}}.dump() << "\n";
          else
            std::cout << "invalid: " << v->describe() << "\n";
          return 1;
        }
        if (validate_json)
          std::cout << json{{"ok", true}, {"kind", "chirotope"}}.dump() << "\n";
        else
          std::cout << "ok: valid chirotope (" << sf.size() << " elements)\n";
      }
    }
    return 0;
  }

  if (extremes->parsed()) {
    Chirotope chi = chirotope_from_json(read_json_file(extremes_file));
    if (extremes_json) {
      std::cout << json{{"extreme", chi.extreme_elements()}, {"hull_cycle", chi.hull_cycle()}}
                       .dump()
                << "\n";
    } else {
      std::cout << "extreme:";
      for (const Label& l : chi.extreme_elements()) std::cout << " " << l;
      std::cout << "\nhull cycle:";
      for (const Label& l : chi.hull_cycle()) std::cout << " " << l;
      std::cout << "\n";
    }
    return 0;
  }

  if (decompose->parsed()) {
    Chirotope chi = chirotope_from_json(read_json_file(decompose_file));
    ChirotopeTree t = canonical_tree(chi, decompose_cap);
    write_output(emit_tree(t), decompose_out);
    return 0;
  }

  if (canon->parsed()) {
    LoadedTree lt = load_tree(read_json_file(canon_file));
    std::optional<std::uint64_t> seed;
    if (seed_opt->count() > 0) seed = canon_seed;
    ChirotopeTree result = canonicalize(lt.tree, canon_cap, seed);
    if (canon_confluence > 0) {
      std::string ref = fingerprint(result);
      for (int i = 1; i <= canon_confluence; ++i) {
        std::uint64_t s = canon_seed + 0x9e37u * static_cast<unsigned>(i);
        ChirotopeTree other = canonicalize(lt.tree, canon_cap, s);
        if (fingerprint(other) != ref) {
          std::cerr << "confluence check failed on seed " << s << "\n";
          return 1;
        }
      }
    }
    write_output(emit_tree(result), canon_out);
    return 0;
  }

  if (count->parsed()) {
    json j = read_json_file(count_file);
    Int n;
    if (is_tree_file(j)) {
      auto db = count_db.open();
      LoadedTree lt = load_tree(j, db ? &*db : nullptr);
      n = count_brute ? Int(enumerate_triangulations(lt.tree.expand(), count_cap).size())
                      : count_tree(lt.tree, count_cap);
    } else {
      n = Int(enumerate_triangulations(chirotope_from_json(j), count_cap).size());
    }
    if (count_json)
      std::cout << json{{"count", n.str()}}.dump() << "\n";
    else
      std::cout << n.str() << "\n";
    return 0;
  }

  if (chain->parsed()) {
    Int formula = chain_count(static_cast<int>(chain_sigma.size()));
    if (!chain_formula_only) {
      Int counted = count_tree(chain_tree(chain_sigma));
      if (counted != formula) {
        std::cerr << "chain count " << counted.str() << " disagrees with the closed formula "
                  << formula.str() << "\n";
        return 1;
      }
    }
    if (chain_json)
      std::cout << json{{"sigma", chain_sigma}, {"count", formula.str()}}.dump() << "\n";
    else
      std::cout << formula.str() << "\n";
    return 0;
  }

  if (realize->parsed()) {
    auto db = realize_db.open();
    LoadedTree lt = load_tree(read_json_file(realize_file), db ? &*db : nullptr);
    for (const auto& [id, chi] : lt.tree.nodes())
      if (!lt.node_points.count(id))
        throw Error(ErrorKind::Precondition,
                    "node " + std::to_string(id) + " has no coordinates; realize needs "
                    "point- or db-decorated nodes");
    try {
      PointConfig out = realize_tree(lt.tree, lt.node_points, realize_budget);
      write_output(emit_points(out), realize_out);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RealizationNotFound) throw;
      std::cerr << e.what() << "\n";
      return 1;
    }
    return 0;
  }

  if (rt->parsed()) {
    GeneratedTree g = random_tree(rt_nodes, rt_node_size, rt_max_degree, rt_seed);
    write_output(emit_tree(g.tree, &g.node_points), rt_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
