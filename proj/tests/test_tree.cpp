#include <catch2/catch_amalgamated.hpp>

#include "chiro/fingerprint.hpp"
#include "chiro/random_tree.hpp"
#include "chiro/tree.hpp"
#include "test_support.hpp"

using namespace chiro;
using testsupport::random_chirotope;
using testsupport::to_set;

namespace {

Chirotope triangle(const Label& a, const Label& b, const Label& c, int orient = 1) {
  std::vector<Label> g{a, b, c};
  std::sort(g.begin(), g.end());
  // orient is the sign of the sorted triple
  return Chirotope::validated(SignFunction(g, [orient](int, int, int) { return orient; }));
}

// Star tree from the worked example: a central triangle of proxies with
// three point-decorated leaves.
ChirotopeTree example_star() {
  std::map<NodeId, Chirotope> nodes;
  nodes.emplace(0, triangle("r*", "s*", "t*", -1));  // kappa(r*,s*,t*) = -1
  nodes.emplace(1, triangle("a", "b", "x*"));
  nodes.emplace(2, triangle("c", "d", "y*"));
  PointConfig pc;  // e,f,g + extreme proxy z*
  pc.insert("e", RatPoint{Rat(0), Rat(0)});
  pc.insert("f", RatPoint{Rat(4), Rat(1)});
  pc.insert("g", RatPoint{Rat(2), Rat(1)});
  pc.insert("z*", RatPoint{Rat(1), Rat(5)});
  nodes.emplace(3, chirotope_of_points(pc));
  std::vector<TreeEdge> edges{
      {0, "r*", 1, "x*"}, {0, "s*", 2, "y*"}, {0, "t*", 3, "z*"}};
  return ChirotopeTree(std::move(nodes), std::move(edges));
}

ChirotopeTree random_tree_fixture(Rng& rng, int nodes, int node_size, int max_degree) {
  return random_tree(nodes, node_size, max_degree, rng.next()).tree;
}

}  // namespace

TEST_CASE("tree validation") {
  SECTION("single node with no edges is valid") {
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(7, triangle("a", "b", "c"));
    REQUIRE_FALSE(ChirotopeTree::find_violation(nodes, {}).has_value());
  }
  SECTION("edge selecting a non-extreme element is a violation") {
    PointConfig pc;
    pc.insert("m", RatPoint{Rat(1, 10), Rat(1, 5)});
    pc.insert("p1", RatPoint{Rat(1), Rat(1)});
    pc.insert("p2", RatPoint{Rat(-1), Rat(1)});
    pc.insert("p3", RatPoint{Rat(-1), Rat(-1)});
    pc.insert("p4", RatPoint{Rat(1), Rat(-1)});
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, chirotope_of_points(pc));
    nodes.emplace(1, triangle("u", "v", "w"));
    std::vector<TreeEdge> edges{{0, "m", 1, "u"}};
    auto v = ChirotopeTree::find_violation(nodes, edges);
    REQUIRE(v.has_value());
    REQUIRE(v->kind.find("extreme") != std::string::npos);
    REQUIRE_THROWS_AS(ChirotopeTree(nodes, edges), Error);
  }
  SECTION("two nodes sharing a label is a violation") {
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, triangle("a", "b", "c"));
    nodes.emplace(1, triangle("c", "d", "e"));
    std::vector<TreeEdge> edges{{0, "a", 1, "d"}};
    auto v = ChirotopeTree::find_violation(nodes, edges);
    REQUIRE(v.has_value());
    REQUIRE(v->location == "c");
  }
  SECTION("an element selected by two edges is a violation") {
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, triangle("a", "b", "c"));
    nodes.emplace(1, triangle("d", "e", "f"));
    nodes.emplace(2, triangle("g", "h", "i"));
    std::vector<TreeEdge> edges{{0, "a", 1, "d"}, {1, "d", 2, "g"}};
    auto v = ChirotopeTree::find_violation(nodes, edges);
    REQUIRE(v.has_value());
  }
  SECTION("disconnected graphs are rejected") {
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, triangle("a", "b", "c"));
    nodes.emplace(1, triangle("d", "e", "f"));
    REQUIRE(ChirotopeTree::find_violation(nodes, {}).has_value());
  }
}

TEST_CASE("representatives") {
  ChirotopeTree t = example_star();
  SECTION("a label is its own representative at home") {
    REQUIRE(t.representative("a", 1) == "a");
  }
  SECTION("remote labels are represented by the local proxy") {
    REQUIRE(t.representative("a", 0) == "r*");
    REQUIRE(t.representative("c", 0) == "s*");
    REQUIRE(t.representative("e", 0) == "t*");
    // across the center: leaf 1 sees everything remote through x*
    REQUIRE(t.representative("c", 1) == "x*");
    REQUIRE(t.representative("e", 1) == "x*");
  }
  SECTION("proxies are not valid queries") {
    REQUIRE_THROWS_AS(t.representative("x*", 0), Error);
  }
}

TEST_CASE("median node") {
  ChirotopeTree t = example_star();
  REQUIRE(t.median_node("a", "b", "e") == 1);  // two labels share node 1
  REQUIRE(t.median_node("a", "c", "e") == 0);  // three leaves meet at center
  REQUIRE(t.median_node("e", "f", "g") == 3);
  REQUIRE(t.median_node("a", "c", "d") == 2);  // c,d share node 2
}

TEST_CASE("lazy evaluation of the tree sign function") {
  ChirotopeTree t = example_star();
  SECTION("three leaves evaluate at the central decoration") {
    REQUIRE(t.eval("a", "c", "f") == -1);  // = kappa(r*,s*,t*)
  }
  SECTION("single-node tree evaluates its decoration") {
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, triangle("a", "b", "c"));
    ChirotopeTree single(std::move(nodes), {});
    REQUIRE(single.eval("a", "b", "c") == 1);
  }
  SECTION("lazy evaluation agrees with full expansion on all triples") {
    Rng rng(71);
    for (int trial = 0; trial < 12; ++trial) {
      ChirotopeTree t2 = random_tree_fixture(rng, 2 + static_cast<int>(rng.below(3)), 4, 3);
      Chirotope full = t2.expand();
      auto g = t2.ground();
      REQUIRE(to_set(full.ground()) == to_set(g));
      for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j)
          for (size_t k = j + 1; k < g.size(); ++k)
            REQUIRE(t2.eval(g[i], g[j], g[k]) == full.sign(g[i], g[j], g[k]));
    }
  }
}

TEST_CASE("expansion") {
  SECTION("one node expands to its decoration") {
    std::map<NodeId, Chirotope> nodes;
    Chirotope tri = triangle("a", "b", "c");
    nodes.emplace(0, tri);
    REQUIRE(ChirotopeTree(std::move(nodes), {}).expand() == tri);
  }
  SECTION("two nodes expand to the bowtie of the decorations") {
    Rng rng(73);
    for (int trial = 0; trial < 10; ++trial) {
      ChirotopeTree t = random_tree_fixture(rng, 2, 5, 2);
      const TreeEdge& e = t.edges()[0];
      Chirotope expected = bowtie(t.node(e.u), e.u_proxy, t.node(e.v), e.v_proxy);
      REQUIRE(t.expand() == expected);
    }
  }
  SECTION("a k-node tree has at least k+2 extreme elements") {
    Rng rng(79);
    for (int trial = 0; trial < 10; ++trial) {
      int k = 2 + static_cast<int>(rng.below(4));
      ChirotopeTree t = random_tree_fixture(rng, k, 5, 3);
      REQUIRE(t.expand().extreme_elements().size() >= static_cast<size_t>(k) + 2);
    }
  }
}

TEST_CASE("splitting at an edge inverts the bowtie") {
  Rng rng(83);
  SECTION("two-node tree splits into its single-node parts") {
    ChirotopeTree t = random_tree_fixture(rng, 2, 4, 2);
    auto s = t.split_at_edge(0);
    REQUIRE(s.first.node_count() == 1);
    REQUIRE(s.second.node_count() == 1);
    // the formerly selected elements are non-proxy now
    NodeId n1 = s.first.nodes().begin()->first;
    const auto& xs = s.first.non_proxies(n1);
    REQUIRE(std::count(xs.begin(), xs.end(), s.s1) == 1);
  }
  SECTION("bowtie of the two expansions equals the full expansion, every edge") {
    for (int trial = 0; trial < 8; ++trial) {
      ChirotopeTree t = random_tree_fixture(rng, 3 + static_cast<int>(rng.below(2)), 4, 3);
      Chirotope full = t.expand();
      for (size_t e = 0; e < t.edges().size(); ++e) {
        auto s = t.split_at_edge(e);
        REQUIRE(bowtie(s.first.expand(), s.s1, s.second.expand(), s.s2) == full);
      }
    }
  }
  SECTION("unknown edge index is rejected") {
    ChirotopeTree t = random_tree_fixture(rng, 2, 4, 2);
    REQUIRE_THROWS_AS(t.split_at_edge(5), Error);
  }
}

TEST_CASE("contraction") {
  Rng rng(89);
  SECTION("contracting the only edge of a two-node tree leaves the bowtie") {
    ChirotopeTree t = random_tree_fixture(rng, 2, 4, 2);
    const TreeEdge& e = t.edges()[0];
    Chirotope expected = bowtie(t.node(e.u), e.u_proxy, t.node(e.v), e.v_proxy);
    ChirotopeTree c = t.contract_edge(0);
    REQUIRE(c.node_count() == 1);
    REQUIRE(c.nodes().begin()->second == expected);
  }
  SECTION("expansion is invariant under contraction of any edge") {
    for (int trial = 0; trial < 8; ++trial) {
      ChirotopeTree t = random_tree_fixture(rng, 3 + static_cast<int>(rng.below(2)), 4, 3);
      Chirotope full = t.expand();
      for (size_t e = 0; e < t.edges().size(); ++e)
        REQUIRE(t.contract_edge(e).expand() == full);
    }
  }
  SECTION("contraction order does not matter") {
    for (int trial = 0; trial < 6; ++trial) {
      ChirotopeTree t = random_tree_fixture(rng, 4, 4, 3);
      // collapse in two different orders; compare resulting decorations
      ChirotopeTree t1 = t;
      while (!t1.edges().empty()) t1 = t1.contract_edge(0);
      ChirotopeTree t2 = t;
      while (!t2.edges().empty()) t2 = t2.contract_edge(t2.edges().size() - 1);
      REQUIRE(t1.nodes().begin()->second == t2.nodes().begin()->second);
    }
  }
}

TEST_CASE("node splits") {
  Rng rng(97);
  SECTION("split then contract is the identity up to proxy names") {
    int done = 0;
    for (int trial = 0; trial < 40 && done < 8; ++trial) {
      ChirotopeTree t = random_tree_fixture(rng, 2, 5, 2);
      // find a node with a nontrivial module to split on
      for (const auto& [id, chi] : t.nodes()) {
        auto m = find_nontrivial_module(chi);
        if (!m) continue;
        ChirotopeTree split = t.split_node(id, to_set(*m));
        REQUIRE(split.node_count() == t.node_count() + 1);
        // the new edge is the last one; contracting it restores the tree
        ChirotopeTree back = split.contract_edge(split.edges().size() - 1);
        REQUIRE(fingerprint(back) == fingerprint(t));
        REQUIRE(split.expand() == t.expand());
        ++done;
        break;
      }
    }
    REQUIRE(done >= 5);
  }
  SECTION("splitting the single node of a trivial tree is the first decomposition step") {
    Chirotope k = chirotope_of_points(testsupport::remark_config());
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, k);
    ChirotopeTree trivial(std::move(nodes), {});
    auto m = find_nontrivial_module(k);
    REQUIRE(m.has_value());
    ChirotopeTree split = trivial.split_node(0, to_set(*m));
    REQUIRE(split.node_count() == 2);
    REQUIRE(split.expand() == k);
  }
  SECTION("splitting on a non-module is rejected") {
    Chirotope k = chirotope_of_points(testsupport::remark_config());
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, k);
    ChirotopeTree trivial(std::move(nodes), {});
    REQUIRE_THROWS_AS(trivial.split_node(0, {"x", "y"}), Error);
  }
}

TEST_CASE("fingerprints") {
  Rng rng(201);
  SECTION("a tree is isomorphic to itself") {
    ChirotopeTree t = random_tree_fixture(rng, 3, 4, 3);
    REQUIRE(trees_isomorphic(t, t));
  }
  SECTION("proxy relabeling preserves the fingerprint") {
    for (int trial = 0; trial < 8; ++trial) {
      ChirotopeTree t = random_tree_fixture(rng, 2 + static_cast<int>(rng.below(3)), 4, 3);
      // rename every proxy by relabeling inside each decoration
      std::map<NodeId, Chirotope> nodes;
      std::vector<TreeEdge> edges = t.edges();
      for (const auto& [id, chi] : t.nodes()) {
        std::map<Label, Label> ren;
        for (const Label& l : chi.ground())
          ren[l] = t.proxies(id).count(l) ? "q!" + l : l;
        nodes.emplace(id, chi.relabeled(ren));
      }
      for (TreeEdge& e : edges) {
        e.u_proxy = "q!" + e.u_proxy;
        e.v_proxy = "q!" + e.v_proxy;
      }
      ChirotopeTree renamed(std::move(nodes), std::move(edges));
      REQUIRE(fingerprint(renamed) == fingerprint(t));
    }
  }
  SECTION("changing a decoration changes the fingerprint") {
    ChirotopeTree t = example_star();
    std::map<NodeId, Chirotope> nodes(t.nodes().begin(), t.nodes().end());
    nodes.erase(0);
    nodes.emplace(0, triangle("r*", "s*", "t*", 1));  // flipped center
    ChirotopeTree other(std::move(nodes), t.edges());
    REQUIRE(fingerprint(other) != fingerprint(t));
  }
  SECTION("same chirotope, different shapes, different fingerprints") {
    // two clusters at the ends and two middle points: the star split and
    // the path split both represent the same chirotope
    PointConfig pc;
    pc.insert("a", RatPoint{Rat(-100), Rat(1)});
    pc.insert("b", RatPoint{Rat(-101), Rat(4)});
    pc.insert("c", RatPoint{Rat(-30), Rat(40)});
    pc.insert("d", RatPoint{Rat(30), Rat(41)});
    pc.insert("e", RatPoint{Rat(100), Rat(0)});
    pc.insert("f", RatPoint{Rat(103), Rat(3)});
    pc.insert("g", RatPoint{Rat(101), Rat(2)});
    REQUIRE_FALSE(pc.find_collinear_triple().has_value());
    Chirotope chi = chirotope_of_points(pc);
    std::map<NodeId, Chirotope> nodes;
    nodes.emplace(0, chi);
    ChirotopeTree trivial(std::move(nodes), {});

    // star: split off {a,b}, {c,d}, {e,f,g}; the center keeps 3 proxies
    ChirotopeTree star = trivial.split_node(0, {"a", "b"});
    star = star.split_node(star.nodes().rbegin()->first, {"c", "d"});
    star = star.split_node(star.nodes().rbegin()->first, {"e", "f", "g"});

    // path: split off {a,b}, then carve {d,e,f,g}, then {e,f,g}
    ChirotopeTree path = trivial.split_node(0, {"a", "b"});
    NodeId rest = path.nodes().rbegin()->first;
    path = path.split_node(rest, {"d", "e", "f", "g"});
    path = path.split_node(rest, {"e", "f", "g"});

    REQUIRE(star.node_count() == 4);
    REQUIRE(path.node_count() == 4);
    REQUIRE(star.expand() == chi);
    REQUIRE(path.expand() == chi);
    // shapes differ: star has a degree-3 node, path does not
    auto max_degree = [](const ChirotopeTree& t) {
      size_t best = 0;
      for (const auto& [id, c] : t.nodes()) best = std::max(best, t.adjacency(id).size());
      return best;
    };
    REQUIRE(max_degree(star) == 3);
    REQUIRE(max_degree(path) == 2);
    REQUIRE(fingerprint(star) != fingerprint(path));
  }
}

TEST_CASE("random trees are valid and reproducible") {
  SECTION("same seed gives the identical tree") {
    GeneratedTree a = random_tree(4, 5, 3, 42);
    GeneratedTree b = random_tree(4, 5, 3, 42);
    REQUIRE(fingerprint(a.tree) == fingerprint(b.tree));
    REQUIRE(a.node_points == b.node_points);
  }
  SECTION("generated trees pass validation and node realizations match") {
    Rng rng(203);
    for (int trial = 0; trial < 10; ++trial) {
      GeneratedTree g = random_tree(1 + static_cast<int>(rng.below(4)), 5, 3, rng.next());
      REQUIRE_FALSE(
          ChirotopeTree::find_violation(g.tree.nodes(), g.tree.edges()).has_value());
      for (const auto& [id, pts] : g.node_points)
        REQUIRE(chirotope_of_points(pts) == g.tree.node(id));
    }
  }
  SECTION("one node means a single decorated node") {
    GeneratedTree g = random_tree(1, 6, 3, 7);
    REQUIRE(g.tree.node_count() == 1);
    REQUIRE(g.tree.edges().empty());
  }
}
