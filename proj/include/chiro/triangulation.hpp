#pragma once
/**
 * Triangulations of a chirotope: inclusion-maximal families of pairwise
 * non-crossing segments. Enumerated as the maximal cliques of the segment
 * compatibility graph (Bron-Kerbosch with pivoting). Every triangulation
 * of a size-n chirotope with h extreme elements has exactly 3n-h-3 edges;
 * the oracle checks this on every output.
 */

#include <algorithm>
#include <bitset>
#include <utility>
#include <vector>

#include "chiro/chirotope.hpp"

namespace chiro {

inline constexpr int kDefaultOracleCap = 11;

struct Triangulation {
  std::vector<std::pair<Label, Label>> edges;  // each pair sorted, list sorted

  bool contains(const Label& a, const Label& b) const {
    auto e = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    return std::binary_search(edges.begin(), edges.end(), e);
  }

  int degree(const Label& x) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (a == x) + (b == x);
    return d;
  }

  std::vector<Label> neighbors(const Label& x) const {
    std::vector<Label> out;
    for (const auto& [a, b] : edges) {
      if (a == x) out.push_back(b);
      if (b == x) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Triangulation& o) const { return edges == o.edges; }
  bool operator<(const Triangulation& o) const { return edges < o.edges; }
};

namespace detail {

using SegSet = std::bitset<512>;  // enough for C(32,2) = 496 segments

struct CliqueEnumerator {
  const std::vector<SegSet>& adj;
  int count;
  std::vector<std::vector<int>>& out;

  void run(std::vector<int>& r, SegSet p, SegSet x) {
    if (p.none() && x.none()) {
      out.push_back(r);
      return;
    }
    // pivot: vertex of P u X with the most neighbors in P
    int pivot = -1;
    size_t best = 0;
    for (int v = 0; v < count; ++v)
      if (p.test(static_cast<size_t>(v)) || x.test(static_cast<size_t>(v))) {
        size_t deg = (p & adj[static_cast<size_t>(v)]).count();
        if (pivot < 0 || deg > best) {
          pivot = v;
          best = deg;
        }
      }
    SegSet candidates = p & ~adj[static_cast<size_t>(pivot)];
    for (int v = 0; v < count; ++v) {
      if (!candidates.test(static_cast<size_t>(v))) continue;
      r.push_back(v);
      run(r, p & adj[static_cast<size_t>(v)], x & adj[static_cast<size_t>(v)]);
      r.pop_back();
      p.reset(static_cast<size_t>(v));
      x.set(static_cast<size_t>(v));
    }
  }
};

}  // namespace detail

/// All triangulations, in sorted order. Brute-force oracle; capped.
inline std::vector<Triangulation> enumerate_triangulations(const Chirotope& chi,
                                                           int cap = kDefaultOracleCap) {
  const int n = chi.size();
  if (n > cap)
    throw Error(ErrorKind::SizeCapExceeded,
                "triangulation oracle on " + std::to_string(n) + " > cap " + std::to_string(cap));
  std::vector<std::pair<int, int>> segs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) segs.push_back({i, j});
  const int m = static_cast<int>(segs.size());

  std::vector<detail::SegSet> adj(static_cast<size_t>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      auto [i, j] = segs[static_cast<size_t>(a)];
      auto [k, l] = segs[static_cast<size_t>(b)];
      bool share = i == k || i == l || j == k || j == l;
      bool cross = false;
      if (!share)
        cross = chi.sign_by_index(i, j, k) == -chi.sign_by_index(i, j, l) &&
                chi.sign_by_index(k, l, i) == -chi.sign_by_index(k, l, j);
      if (!cross) {
        adj[static_cast<size_t>(a)].set(static_cast<size_t>(b));
        adj[static_cast<size_t>(b)].set(static_cast<size_t>(a));
      }
    }

  std::vector<std::vector<int>> cliques;
  detail::SegSet all;
  for (int v = 0; v < m; ++v) all.set(static_cast<size_t>(v));
  std::vector<int> r;
  detail::CliqueEnumerator{adj, m, cliques}.run(r, all, detail::SegSet());

  const size_t expected_edges =
      3 * static_cast<size_t>(n) - chi.extreme_elements().size() - 3;
  std::vector<Triangulation> out;
  out.reserve(cliques.size());
  for (const auto& c : cliques) {
    Triangulation t;
    t.edges.reserve(c.size());
    for (int v : c) {
      auto [i, j] = segs[static_cast<size_t>(v)];
      Label a = chi.ground()[static_cast<size_t>(i)];
      Label b = chi.ground()[static_cast<size_t>(j)];
      if (b < a) std::swap(a, b);
      t.edges.push_back({a, b});
    }
    std::sort(t.edges.begin(), t.edges.end());
    if (t.edges.size() != expected_edges)
      throw Error(ErrorKind::Precondition,
                  "triangulation with wrong edge count (oracle bug or invalid chirotope)");
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Projection onto one side of a bowtie: every endpoint outside `keep` is
/// replaced by the proxy, loops dropped, duplicates merged.
inline Triangulation project_triangulation(const Triangulation& t, const std::set<Label>& keep,
                                           const Label& proxy) {
  Triangulation out;
  for (auto [a, b] : t.edges) {
    if (!keep.count(a)) a = proxy;
    if (!keep.count(b)) b = proxy;
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    out.edges.push_back({a, b});
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

}  // namespace chiro
