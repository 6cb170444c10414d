// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criterion 10 needs an external order-type database and an example tree
// file (CHIRO_OTDB, CHIRO_OTDB_N, CHIRO_EXAMPLE_TREE); it is skipped, not
// failed, when they are absent.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "chiro/canonical.hpp"
#include "chiro/counting.hpp"
#include "chiro/fingerprint.hpp"
#include "chiro/io.hpp"
#include "chiro/random_tree.hpp"
#include "chiro/realize.hpp"

using namespace chiro;

namespace {

int g_failures = 0;
int g_passes = 0;
int g_skips = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, bool ok, const std::string& detail, double secs) {
  printf("criterion %2d: %s  %s (%.1fs)\n", criterion, ok ? "PASS" : "FAIL", detail.c_str(),
         secs);
  fflush(stdout);
  (ok ? g_passes : g_failures)++;
}

void report_skip(int criterion, const std::string& why) {
  printf("criterion %2d: SKIPPED  %s\n", criterion, why.c_str());
  fflush(stdout);
  ++g_skips;
}

PointConfig remark_config() {
  PointConfig pc;
  pc.insert("x", RatPoint{Rat(0), Rat(7, 10)});
  pc.insert("y", RatPoint{Rat(0), Rat(-7, 10)});
  pc.insert("a", RatPoint{Rat(-28, 25), Rat(3, 20)});
  pc.insert("b", RatPoint{Rat(-1), Rat(-3, 20)});
  pc.insert("c", RatPoint{Rat(1), Rat(3, 20)});
  pc.insert("d", RatPoint{Rat(91, 100), Rat(-1, 4)});
  return pc;
}

PointConfig weakmod_config() {
  PointConfig pc;
  pc.insert("a", RatPoint{Rat(0), Rat(0)});
  pc.insert("b", RatPoint{Rat(1, 5), Rat(1, 5)});
  pc.insert("c", RatPoint{Rat(7, 10), Rat(-1, 5)});
  pc.insert("d", RatPoint{Rat(2, 5), Rat(-1, 2)});
  pc.insert("q", RatPoint{Rat(-7, 10), Rat(-1, 5)});
  pc.insert("p", RatPoint{Rat(-3, 2), Rat(0)});
  pc.insert("r", RatPoint{Rat(3, 2), Rat(-1, 10)});
  return pc;
}

// Random tree with expansion size <= max_ground.
GeneratedTree sample_tree(Rng& rng, size_t max_ground) {
  for (;;) {
    int nodes = 1 + static_cast<int>(rng.below(3));
    int size = 4 + static_cast<int>(rng.below(3));
    GeneratedTree g = random_tree(nodes, size, 3, rng.next());
    if (g.tree.ground_size() <= max_ground) return g;
  }
}

void criterion_1_chains() {
  Timer t;
  bool ok = true;
  std::string detail;
  if (chain_count(1) != 1 || chain_count(2) != 6 || chain_count(3) != 53) {
    ok = false;
    detail = "spot values 1, 6, 53 failed";
  }
  for (int k = 1; k <= 6 && ok; ++k) {
    Int expect = chain_count(k);
    for (unsigned mask = 0; mask < (1u << k) && ok; ++mask) {
      std::string sigma;
      for (int i = 0; i < k; ++i) sigma += (mask >> i & 1) ? '1' : '0';
      Int counted = count_tree(chain_tree(sigma));
      if (counted != expect) {
        ok = false;
        detail = "sigma=" + sigma + " gave " + counted.str() + " instead of " + expect.str();
      }
    }
  }
  if (ok) detail = "all 126 chains of length <= 6 match the closed formula";
  if (ok && t.seconds() >= 5.0) {
    ok = false;
    detail += " but runtime exceeded 5s";
  }
  report(1, ok, detail, t.seconds());
}

void criterion_2_worked_example() {
  Timer t;
  UniPoly p;
  p.add(3, 1);
  p.add(4, 1);
  UniPoly q;
  q.add(2, 1);
  q.add(3, 1);
  q.add(4, 1);
  bool ok = count_bowtie(p, q) == 53;
  BiPoly q_in, q_out;
  q_in.add(4, 4, 1);
  q_out.add(2, 3, 1);
  q_out.add(3, 3, 1);
  UniPoly merged = merge_degree_polynomial(p, q_in, q_out);
  UniPoly expect;
  expect.add(3, 23);
  expect.add(4, 16);
  expect.add(5, 9);
  expect.add(6, 4);
  expect.add(7, 1);
  ok = ok && merged == expect && merged.at_one() == 53;
  report(2, ok, "count_bowtie = 53 and merged polynomial = 23u^3+16u^4+9u^5+4u^6+u^7",
         t.seconds());
}

void criterion_3_oracle_equivalence() {
  Timer t;
  Rng rng(30003);
  int trees = 0;
  bool ok = true;
  std::string detail;
  while (trees < 200 && ok) {
    GeneratedTree g = sample_tree(rng, 11);
    ++trees;
    Chirotope full = g.tree.expand();
    auto ts = enumerate_triangulations(full);
    size_t expect_edges = 3 * full.ground().size() - full.extreme_elements().size() - 3;
    for (const auto& tri : ts)
      if (tri.edges.size() != expect_edges) {
        ok = false;
        detail = "edge-count identity failed";
      }
    if (ok && count_tree(g.tree) != Int(ts.size())) {
      ok = false;
      detail = "tree " + std::to_string(trees) + ": merge count != oracle count";
    }
  }
  if (ok) detail = "200 random trees: merge counts equal brute counts, 3n-h-3 everywhere";
  if (ok && t.seconds() >= 120.0) {
    ok = false;
    detail += " but runtime exceeded 2min";
  }
  report(3, ok, detail, t.seconds());
}

void criteria_4_5_canonical() {
  Timer t;
  Rng rng(40004);
  bool unique_ok = true, invariant_ok = true;
  std::string detail4, detail5;
  int trees = 0, steps = 0;
  while (trees < 100 && unique_ok && invariant_ok) {
    GeneratedTree g = sample_tree(rng, 11);
    ++trees;
    Chirotope full = g.tree.expand();
    RewriteObserver check_invariance = [&](const ChirotopeTree& before, const RewriteStep&,
                                           const ChirotopeTree& after) {
      ++steps;
      if (invariant_ok && before.expand() != after.expand()) {
        invariant_ok = false;
        detail5 = "a rewrite step changed the expansion";
      }
    };
    std::string ref = fingerprint(canonical_tree(full, kDefaultModuleSearchCap, std::nullopt,
                                                 check_invariance));
    for (std::uint64_t seed = 1; seed <= 10 && unique_ok; ++seed) {
      std::string fp = fingerprint(
          canonical_tree(full, kDefaultModuleSearchCap, seed, check_invariance));
      if (fp != ref) {
        unique_ok = false;
        detail4 = "tree " + std::to_string(trees) + ": strategies disagree";
      }
    }
    if (unique_ok && is_canonical(g.tree) && fingerprint(g.tree) != ref) {
      unique_ok = false;
      detail4 = "tree " + std::to_string(trees) + ": canonical input not reproduced";
    }
  }
  if (unique_ok)
    detail4 = "100 random trees x 11 strategies agree; canonical inputs reproduced";
  if (invariant_ok)
    detail5 = "expansion unchanged across " + std::to_string(steps) + " rewrite steps";
  report(4, unique_ok, detail4, t.seconds());
  report(5, invariant_ok, detail5, 0.0);
}

void criterion_6_bowtie_axioms() {
  Timer t;
  Rng rng(60006);
  bool ok = true;
  std::string detail;
  int cases = 0, negative = 0;
  while (cases < 500 && ok) {
    int nx = 4 + static_cast<int>(rng.below(3));
    int ny = 4 + static_cast<int>(rng.below(3));
    GeneratedTree g = random_tree(1, nx, 3, rng.next());
    GeneratedTree h = random_tree(1, ny, 3, rng.next());
    // relabel to keep the grounds disjoint
    std::map<Label, Label> ren;
    const Chirotope& raw_xi = h.tree.nodes().begin()->second;
    for (const Label& l : raw_xi.ground()) ren[l] = "w" + l;
    Chirotope chi = g.tree.nodes().begin()->second;
    Chirotope xi = raw_xi.relabeled(ren);
    ++cases;
    const auto& ext_chi = chi.extreme_elements();
    const auto& ext_xi = xi.extreme_elements();
    Label xs = ext_chi[rng.below(ext_chi.size())];
    Label ys = ext_xi[rng.below(ext_xi.size())];
    Chirotope k = bowtie(chi, xs, xi, ys);
    if (find_axiom_violation(k.signs())) {
      ok = false;
      detail = "bowtie output failed validation";
      break;
    }
    std::set<Label> expect;
    for (const Label& e : ext_chi)
      if (e != xs) expect.insert(e);
    for (const Label& e : ext_xi)
      if (e != ys) expect.insert(e);
    std::set<Label> got(k.extreme_elements().begin(), k.extreme_elements().end());
    if (got != expect) {
      ok = false;
      detail = "extreme-set identity failed";
      break;
    }
    // the negative direction: a non-extreme proxy must break the axioms
    Label bad;
    for (const Label& l : chi.ground())
      if (!chi.is_extreme(l)) bad = l;
    if (!bad.empty()) {
      SignFunction raw = bowtie_sign_map(chi.signs(), bad, xi.signs(), ys);
      if (!find_axiom_violation(raw)) {
        ok = false;
        detail = "raw map with non-extreme proxy passed validation";
        break;
      }
      ++negative;
    }
  }
  if (ok)
    detail = "500/500 bowties validated with exact extreme sets; " + std::to_string(negative) +
             " non-extreme-proxy maps all rejected";
  report(6, ok, detail, t.seconds());
}

void criterion_7_matching_binomials() {
  Timer t;
  bool ok = true;
  std::string detail;
  std::vector<Label> xs_all{"a1", "a2", "a3", "a4", "a5", "a6", "a7"};
  std::vector<Label> ys_all{"b1", "b2", "b3", "b4", "b5", "b6", "b7"};
  Chirotope a = chirotope_of_points(convex_polygon_config(xs_all));
  Chirotope b = chirotope_of_points(convex_polygon_config(ys_all));
  Chirotope k = bowtie(a, "a7", b, "b7");
  std::vector<Label> xs = a.radial_order("a7");
  std::vector<Label> ys = b.radial_order("b7");
  for (int aa = 1; aa <= 6 && ok; ++aa)
    for (int bb = 1; bb <= 6 && ok; ++bb) {
      std::vector<Label> xsub(xs.begin(), xs.begin() + aa);
      std::vector<Label> ysub(ys.begin(), ys.begin() + bb);
      std::vector<std::pair<Label, Label>> cand;
      for (const Label& u : xsub)
        for (const Label& v : ysub) cand.push_back({u, v});
      const size_t m = cand.size();
      std::vector<std::uint64_t> adj(m, 0);
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
          const auto& [u1, v1] = cand[i];
          const auto& [u2, v2] = cand[j];
          bool cross = u1 != u2 && v1 != v2 && k.segments_cross(u1, v1, u2, v2);
          if (!cross) {
            adj[i] |= 1ULL << j;
            adj[j] |= 1ULL << i;
          }
        }
      std::vector<std::uint64_t> found;
      auto bk = [&](auto&& self, std::uint64_t r, std::uint64_t p, std::uint64_t x) -> void {
        if (!p && !x) {
          found.push_back(r);
          return;
        }
        std::uint64_t iter = p;
        while (iter) {
          size_t v = static_cast<size_t>(__builtin_ctzll(iter));
          iter &= iter - 1;
          self(self, r | (1ULL << v), p & adj[v], x & adj[v]);
          p &= ~(1ULL << v);
          x |= 1ULL << v;
        }
      };
      bk(bk, 0, m >= 64 ? ~0ULL : (1ULL << m) - 1, 0);
      if (Int(found.size()) != binomial(aa + bb - 2, bb - 1) ||
          Int(found.size()) != count_noncrossing_matchings(aa, bb)) {
        ok = false;
        detail = "plain count off at a=" + std::to_string(aa) + " b=" + std::to_string(bb);
        break;
      }
      if (bb >= 2) {
        for (int i1 = 1; i1 <= aa && ok; ++i1) {
          Int cnt = 0;
          for (std::uint64_t h : found) {
            int deg = 0;
            for (size_t i = 0; i < m; ++i)
              if ((h >> i & 1) && cand[i].second == ysub[0]) ++deg;
            if (deg == i1) ++cnt;
          }
          if (cnt != count_noncrossing_matchings(aa, bb, {i1}) ||
              cnt != binomial(aa + bb - i1 - 2, bb - 2)) {
            ok = false;
            detail = "fixed-degree count off at a=" + std::to_string(aa) +
                     " b=" + std::to_string(bb) + " i1=" + std::to_string(i1);
          }
        }
      }
    }
  if (ok) detail = "maximal non-crossing sets match both binomials for all 1 <= a,b <= 6";
  report(7, ok, detail, t.seconds());
}

void criterion_8_module_examples() {
  Timer t;
  bool ok = true;
  std::string detail;
  Chirotope rem = chirotope_of_points(remark_config());
  if (!is_module(rem, {"a", "b", "x", "y"}) || !is_module(rem, {"c", "d", "x", "y"}) ||
      is_module(rem, {"x", "y"})) {
    ok = false;
    detail = "module example configuration misclassified";
  }
  Chirotope weak = chirotope_of_points(weakmod_config());
  if (ok) {
    auto qs = quasi_modules(weak, 2);
    std::vector<Label> abcd{"a", "b", "c", "d"};
    if (std::find(qs.begin(), qs.end(), abcd) == qs.end()) {
      ok = false;
      detail = "quasi-module {a,b,c,d} not found";
    } else {
      auto pair = antipodal_elements(weak, {"a", "b", "c", "d"});
      // uniqueness: any other pair fails the defining equation for some a
      std::vector<Label> w{"a", "b", "c", "d"};
      int matching_pairs = 0;
      for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j) {
          bool holds = true;
          for (const Label& out : {Label("p"), Label("q"), Label("r")}) {
            std::optional<int> common;
            for (const Label& ww : w) {
              if (ww == w[i] || ww == w[j]) continue;
              int s1 = weak.sign(out, w[i], ww), s2 = weak.sign(out, ww, w[j]);
              if (s1 != s2) holds = false;
              if (common && *common != s1) holds = false;
              common = s1;
            }
          }
          if (holds) {
            ++matching_pairs;
            if (std::minmax(w[i], w[j]) != std::minmax(pair.first, pair.second)) {
              ok = false;
              detail = "a second antipodal pair satisfied the equation";
            }
          }
        }
      if (ok && matching_pairs != 1) {
        ok = false;
        detail = "antipodal pair not unique";
      }
    }
  }
  if (ok) {
    Rng rng(80008);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      int kk = 1 + static_cast<int>(rng.below(4));
      GeneratedTree g = random_tree(kk, 5, 3, rng.next());
      if (g.tree.expand().extreme_elements().size() < static_cast<size_t>(kk) + 2) {
        ok = false;
        detail = "a " + std::to_string(kk) + "-node tree had fewer than k+2 extremes";
      }
    }
  }
  if (ok) detail = "module, quasi-module/antipodal, and k+2-extremes examples all hold";
  report(8, ok, detail, t.seconds());
}

void criterion_9_realization() {
  Timer t;
  Rng rng(90009);
  bool ok = true;
  std::string detail;
  int succeeded = 0, not_found = 0;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    int nodes = 2 + static_cast<int>(rng.below(4));
    int size = 4 + static_cast<int>(rng.below(4));
    while (nodes * size - 2 * (nodes - 1) > 30) {
      if (size > 4)
        --size;
      else
        --nodes;
    }
    GeneratedTree g = random_tree(nodes, size, 3, rng.next());
    try {
      PointConfig out = realize_tree(g.tree, g.node_points);
      Chirotope chi = chirotope_of_points(out);
      if (chi != g.tree.expand()) {
        ok = false;
        detail = "accepted realization has the wrong chirotope";
      }
      ++succeeded;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RealizationNotFound) {
        ok = false;
        detail = std::string("unexpected error: ") + e.what();
      }
      ++not_found;
    }
  }
  if (ok)
    detail = "50 trees, zero silently-wrong outputs; success rate " +
             std::to_string(succeeded * 2) + "% (" + std::to_string(succeeded) + " realized, " +
             std::to_string(not_found) + " honest not-found)";
  report(9, ok, detail, t.seconds());
}

void criterion_10_database_example() {
  Timer t;
  const char* db_path = std::getenv("CHIRO_OTDB");
  const char* db_n = std::getenv("CHIRO_OTDB_N");
  const char* tree_path = std::getenv("CHIRO_EXAMPLE_TREE");
  if (!db_path || !tree_path) {
    report_skip(10, "set CHIRO_OTDB, CHIRO_OTDB_N and CHIRO_EXAMPLE_TREE to run the "
                    "254-element database example");
    return;
  }
  try {
    OrderTypeDb db = open_order_type_db(db_path, db_n ? std::atoi(db_n) : 9);
    LoadedTree lt = load_tree(read_json_file(tree_path), &db);
    Int n = count_tree(lt.tree);
    std::string s = n.str();
    bool ok = s.size() == 181 && s.rfind("592966751293974711", 0) == 0;
    if (ok && t.seconds() >= 60.0) ok = false;
    report(10, ok, "database tree counts " + s.substr(0, 18) + "... (" +
                       std::to_string(s.size()) + " digits)", t.seconds());
  } catch (const Error& e) {
    report(10, false, std::string("database example raised: ") + e.what(), t.seconds());
  }
}

}  // namespace

int main() {
  criterion_1_chains();
  criterion_2_worked_example();
  criterion_3_oracle_equivalence();
  criteria_4_5_canonical();
  criterion_6_bowtie_axioms();
  criterion_7_matching_binomials();
  criterion_8_module_examples();
  criterion_9_realization();
  criterion_10_database_example();
  printf("RESULT: %d passed, %d failed, %d skipped\n", g_passes, g_failures, g_skips);
  return g_failures == 0 ? 0 : 1;
}
