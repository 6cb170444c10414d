#pragma once
/**
 * Seeded random chirotope trees: a Pruefer-style tree shape sampled under
 * a degree cap, nodes decorated with chirotopes of random integer point
 * configurations rejection-sampled for general position and enough extreme
 * elements, proxies picked among the extreme elements.
 */

#include <map>
#include <set>
#include <string>
#include <vector>

#include "chiro/geometry.hpp"
#include "chiro/tree.hpp"

namespace chiro {

struct GeneratedTree {
  ChirotopeTree tree;
  std::map<NodeId, PointConfig> node_points;  // realizations behind the decorations
};

namespace detail {

/// Capacity-aware Pruefer sequence: each node appears at most cap-1 times,
/// so every decoded degree is at most cap. Decoded with the standard
/// algorithm.
inline std::vector<std::pair<int, int>> random_tree_shape(int nodes, int max_degree, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  if (nodes == 1) return edges;
  if (nodes == 2) return {{0, 1}};
  std::vector<int> seq(static_cast<size_t>(nodes - 2));
  std::vector<int> allowance(static_cast<size_t>(nodes), max_degree - 1);
  for (auto& s : seq) {
    long total = 0;
    for (int a : allowance) total += a;
    if (total <= 0) throw Error(ErrorKind::GenerationBudgetExceeded, "degree cap too tight");
    long pick = static_cast<long>(rng.below(static_cast<std::uint64_t>(total)));
    int chosen = 0;
    for (int v = 0; v < nodes; ++v) {
      pick -= allowance[static_cast<size_t>(v)];
      if (pick < 0) {
        chosen = v;
        break;
      }
    }
    --allowance[static_cast<size_t>(chosen)];
    s = chosen;
  }
  std::vector<int> degree(static_cast<size_t>(nodes), 1);
  for (int v : seq) ++degree[static_cast<size_t>(v)];
  std::set<int> leaves;
  for (int v = 0; v < nodes; ++v)
    if (degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
  for (int v : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back({leaf, v});
    if (--degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
  }
  int u = *leaves.begin();
  int w = *std::next(leaves.begin());
  edges.push_back({u, w});
  return edges;
}

inline PointConfig random_general_position(Rng& rng, int n, const std::string& prefix,
                                           long grid, int min_extreme, int budget) {
  for (int attempt = 0; attempt < budget; ++attempt) {
    PointConfig pc;
    std::set<std::pair<long, long>> used;
    for (int i = 0; i < n; ++i) {
      for (;;) {
        long x = rng.range(0, grid), y = rng.range(0, grid);
        if (!used.insert({x, y}).second) continue;
        pc.insert(prefix + std::to_string(i), RatPoint{Rat(x), Rat(y)});
        break;
      }
    }
    if (pc.find_collinear_triple()) continue;
    Chirotope chi = chirotope_of_points(pc);
    if (static_cast<int>(chi.extreme_elements().size()) < min_extreme) continue;
    return pc;
  }
  throw Error(ErrorKind::GenerationBudgetExceeded,
              "could not sample a configuration with the required hull size");
}

}  // namespace detail

/// Same seed, same tree. node_size counts proxies, so a tree with k nodes
/// expands to a chirotope on k*node_size - 2(k-1) elements.
inline GeneratedTree random_tree(int nodes, int node_size, int max_degree, std::uint64_t seed) {
  if (nodes < 1 || node_size < 3 || max_degree < 1)
    throw Error(ErrorKind::Precondition, "need nodes >= 1, node_size >= 3, max_degree >= 1");
  if (node_size < max_degree)
    throw Error(ErrorKind::Precondition, "node_size must be >= max_degree to host the proxies");
  Rng rng(seed);
  auto shape = detail::random_tree_shape(nodes, max_degree, rng);
  std::vector<int> degree(static_cast<size_t>(nodes), 0);
  for (auto [u, v] : shape) {
    ++degree[static_cast<size_t>(u)];
    ++degree[static_cast<size_t>(v)];
  }

  std::map<NodeId, Chirotope> decorations;
  std::map<NodeId, PointConfig> points;
  std::map<NodeId, std::vector<Label>> spare_extremes;
  for (int v = 0; v < nodes; ++v) {
    int need = std::max(3, max_degree);
    PointConfig pc = detail::random_general_position(
        rng, node_size, "n" + std::to_string(v) + ".", 1 << 16, need, 4000);
    Chirotope chi = chirotope_of_points(pc);
    // draw the proxies for this node ahead of time, in random order
    std::vector<Label> ext = chi.extreme_elements();
    for (size_t i = ext.size(); i > 1; --i)
      std::swap(ext[i - 1], ext[rng.below(i)]);
    ext.resize(static_cast<size_t>(degree[static_cast<size_t>(v)]));
    spare_extremes[v] = std::move(ext);
    decorations.emplace(v, std::move(chi));
    points.emplace(v, std::move(pc));
  }

  std::vector<TreeEdge> edges;
  for (auto [u, v] : shape) {
    Label pu = spare_extremes[u].back();
    spare_extremes[u].pop_back();
    Label pv = spare_extremes[v].back();
    spare_extremes[v].pop_back();
    edges.push_back(TreeEdge{u, pu, v, pv});
  }
  return GeneratedTree{ChirotopeTree(std::move(decorations), std::move(edges)),
                       std::move(points)};
}

}  // namespace chiro
