#include <catch2/catch_amalgamated.hpp>

#include "chiro/counting.hpp"
#include "chiro/triangulation.hpp"
#include "test_support.hpp"

using namespace chiro;
using testsupport::random_chirotope;

namespace {

// Catalan numbers via the ballot recurrence, independent of binomial().
Int catalan(int n) {
  std::vector<Int> prev{1};  // ballot-number triangle, diagonal = Catalan
  for (int i = 1; i <= n; ++i) {
    std::vector<Int> cur(static_cast<size_t>(i + 1), 0);
    for (int j = 0; j <= i; ++j) {
      if (j > 0) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)];
      if (j < i) cur[static_cast<size_t>(j)] += prev[static_cast<size_t>(j)];
    }
    prev = std::move(cur);
  }
  return prev.back();
}

PointConfig square_plus_inner() {
  PointConfig pc;
  pc.insert("m", RatPoint{Rat(1, 10), Rat(1, 5)});
  pc.insert("p1", RatPoint{Rat(1), Rat(1)});
  pc.insert("p2", RatPoint{Rat(-1), Rat(1)});
  pc.insert("p3", RatPoint{Rat(-1), Rat(-1)});
  pc.insert("p4", RatPoint{Rat(1), Rat(-1)});
  return pc;
}

}  // namespace

TEST_CASE("triangulation counts of convex polygons are Catalan numbers") {
  REQUIRE(catalan(2) == 2);
  for (int n = 4; n <= 9; ++n) {
    std::vector<Label> ls;
    for (int i = 0; i < n; ++i) ls.push_back("q" + std::to_string(i));
    Chirotope chi = chirotope_of_points(convex_polygon_config(ls));
    auto ts = enumerate_triangulations(chi);
    REQUIRE(Int(ts.size()) == catalan(n - 2));
  }
}

TEST_CASE("convex quadrilateral has exactly the two diagonal triangulations") {
  Chirotope chi = chirotope_of_points(convex_polygon_config({"a", "b", "c", "d"}));
  auto ts = enumerate_triangulations(chi);
  REQUIRE(ts.size() == 2);
  for (const auto& t : ts) REQUIRE(t.edges.size() == 5);  // 3*4-4-3
}

TEST_CASE("square plus an interior point") {
  // a generic interior point admits three triangulations: one per diagonal
  // (the interior point sits in one of its triangles) and the all-spokes one
  Chirotope chi = chirotope_of_points(square_plus_inner());
  auto ts = enumerate_triangulations(chi);
  REQUIRE(ts.size() == 3);
  std::multiset<int> inner_degrees;
  for (const auto& t : ts) {
    REQUIRE(t.edges.size() == 8);  // 3*5-4-3
    inner_degrees.insert(t.degree("m"));
  }
  REQUIRE(inner_degrees == std::multiset<int>{3, 3, 4});
}

TEST_CASE("every enumerated triangulation has 3n-h-3 edges and no crossings") {
  Rng rng(401);
  for (int trial = 0; trial < 15; ++trial) {
    Chirotope chi = random_chirotope(rng, 5 + static_cast<int>(rng.below(4)));
    size_t expect = 3 * chi.ground().size() - chi.extreme_elements().size() - 3;
    auto ts = enumerate_triangulations(chi);
    REQUIRE_FALSE(ts.empty());
    for (const auto& t : ts) {
      REQUIRE(t.edges.size() == expect);
      for (size_t i = 0; i < t.edges.size(); ++i)
        for (size_t j = i + 1; j < t.edges.size(); ++j) {
          const auto& [a, b] = t.edges[i];
          const auto& [c, d] = t.edges[j];
          if (a != c && a != d && b != c && b != d)
            REQUIRE_FALSE(chi.segments_cross(a, b, c, d));
        }
    }
  }
}

TEST_CASE("triangulations are inclusion-maximal") {
  Rng rng(409);
  Chirotope chi = random_chirotope(rng, 7);
  auto ts = enumerate_triangulations(chi);
  const auto& g = chi.ground();
  for (const auto& t : ts) {
    // every absent segment crosses some present one
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = i + 1; j < g.size(); ++j) {
        if (t.contains(g[i], g[j])) continue;
        bool blocked = false;
        for (const auto& [a, b] : t.edges) {
          if (a == g[i] || a == g[j] || b == g[i] || b == g[j]) continue;
          if (chi.segments_cross(g[i], g[j], a, b)) {
            blocked = true;
            break;
          }
        }
        REQUIRE(blocked);
      }
  }
}

TEST_CASE("oracle size cap") {
  Rng rng(419);
  Chirotope chi = random_chirotope(rng, 7);
  try {
    enumerate_triangulations(chi, 6);
    FAIL("expected SizeCapExceeded");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::SizeCapExceeded);
  }
}

TEST_CASE("projection of a bowtie triangulation") {
  Rng rng(421);
  int rounds = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Chirotope a = random_chirotope(rng, 4, "a");
    Chirotope b = random_chirotope(rng, 4, "b");
    Label as = testsupport::random_extreme(rng, a);
    Label bs = testsupport::random_extreme(rng, b);
    Chirotope k = bowtie(a, as, b, bs);
    std::set<Label> xs, ys;
    for (const Label& l : a.ground())
      if (l != as) xs.insert(l);
    for (const Label& l : b.ground())
      if (l != bs) ys.insert(l);

    auto k_tris = enumerate_triangulations(k);
    auto a_tris = enumerate_triangulations(a);
    auto b_tris = enumerate_triangulations(b);
    for (const auto& t : k_tris) {
      Triangulation ta = project_triangulation(t, xs, as);
      Triangulation tb = project_triangulation(t, ys, bs);
      // projections are triangulations of the factors
      REQUIRE(std::binary_search(a_tris.begin(), a_tris.end(), ta));
      REQUIRE(std::binary_search(b_tris.begin(), b_tris.end(), tb));
      // |T_XY| = deg(x*) + deg(y*) - 1
      int cross_edges = 0;
      for (const auto& [u, v] : t.edges)
        if ((xs.count(u) && ys.count(v)) || (ys.count(u) && xs.count(v))) ++cross_edges;
      REQUIRE(cross_edges == ta.degree(as) + tb.degree(bs) - 1);
      // round trip: rebuilding from the pieces gives back t
      Triangulation rebuilt;
      for (const auto& e : ta.edges)
        if (e.first != as && e.second != as) rebuilt.edges.push_back(e);
      for (const auto& e : tb.edges)
        if (e.first != bs && e.second != bs) rebuilt.edges.push_back(e);
      for (const auto& e : t.edges)
        if ((xs.count(e.first) && ys.count(e.second)) || (ys.count(e.first) && xs.count(e.second)))
          rebuilt.edges.push_back(e);
      std::sort(rebuilt.edges.begin(), rebuilt.edges.end());
      REQUIRE(rebuilt == t);
      ++rounds;
    }
  }
  REQUIRE(rounds > 50);
}
