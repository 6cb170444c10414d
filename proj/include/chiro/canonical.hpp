#pragma once
/**
 * The rewriting system on chirotope trees: contract edges between two
 * convex decorations, split nonconvex decomposable nodes. Every rewrite
 * preserves chi_T; every maximal rewriting sequence is finite and ends at
 * the same canonical tree regardless of the order of steps.
 */

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "chiro/tree.hpp"

namespace chiro {

struct RewriteStep {
  enum class Kind { ContractConvexEdge, SplitNonconvexNode };
  Kind kind;
  size_t edge = 0;              // for ContractConvexEdge
  NodeId node = 0;              // for SplitNonconvexNode
  std::vector<Label> module_;   // module chosen for the split
};

/// All rewrite steps applicable to T, in deterministic enumeration order:
/// contractions by edge index, then splits by node id. The split module is
/// the deterministic smallest one.
inline std::vector<RewriteStep> applicable_steps(const ChirotopeTree& t,
                                                 int size_cap = kDefaultModuleSearchCap) {
  std::vector<RewriteStep> steps;
  for (size_t e = 0; e < t.edges().size(); ++e) {
    const TreeEdge& edge = t.edges()[e];
    if (t.node(edge.u).is_convex() && t.node(edge.v).is_convex())
      steps.push_back(RewriteStep{RewriteStep::Kind::ContractConvexEdge, e, 0, {}});
  }
  for (const auto& [id, chi] : t.nodes()) {
    if (chi.is_convex()) continue;
    if (auto m = find_nontrivial_module(chi, size_cap))
      steps.push_back(RewriteStep{RewriteStep::Kind::SplitNonconvexNode, 0, id, *m});
  }
  return steps;
}

/// Canonical: every decoration convex or indecomposable, and no edge joins
/// two convex decorations.
inline bool is_canonical(const ChirotopeTree& t, int size_cap = kDefaultModuleSearchCap) {
  for (const TreeEdge& edge : t.edges())
    if (t.node(edge.u).is_convex() && t.node(edge.v).is_convex()) return false;
  for (const auto& [id, chi] : t.nodes())
    if (!chi.is_convex() && is_decomposable(chi, size_cap)) return false;
  return true;
}

inline ChirotopeTree apply_step(const ChirotopeTree& t, const RewriteStep& step) {
  if (step.kind == RewriteStep::Kind::ContractConvexEdge) return t.contract_edge(step.edge);
  return t.split_node(step.node, std::set<Label>(step.module_.begin(), step.module_.end()));
}

/// One deterministic rewrite (first applicable step), or nullopt iff T is
/// already canonical.
inline std::optional<std::pair<ChirotopeTree, RewriteStep>> rewrite_once(
    const ChirotopeTree& t, int size_cap = kDefaultModuleSearchCap) {
  auto steps = applicable_steps(t, size_cap);
  if (steps.empty()) return std::nullopt;
  return std::make_pair(apply_step(t, steps.front()), steps.front());
}

/// Termination measure: multiset of nonconvex decoration sizes (descending)
/// then number of convex decorations; strictly decreases under every step.
inline std::pair<std::vector<int>, int> rewrite_measure(const ChirotopeTree& t) {
  std::vector<int> nonconvex;
  int convex = 0;
  for (const auto& [id, chi] : t.nodes()) {
    if (chi.is_convex())
      ++convex;
    else
      nonconvex.push_back(chi.size());
  }
  std::sort(nonconvex.rbegin(), nonconvex.rend());
  return {std::move(nonconvex), convex};
}

/// Dershowitz-Manna multiset order on the nonconvex sizes, then the convex
/// count: for descending-sorted sequences this is lexicographic comparison
/// with "longer wins" on equal prefixes.
inline bool measure_less(const std::pair<std::vector<int>, int>& a,
                         const std::pair<std::vector<int>, int>& b) {
  const auto& x = a.first;
  const auto& y = b.first;
  for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] != y[i]) return x[i] < y[i];
  }
  if (x.size() != y.size()) return x.size() < y.size();
  return a.second < b.second;
}

using RewriteObserver =
    std::function<void(const ChirotopeTree& before, const RewriteStep&, const ChirotopeTree& after)>;

/// Iterates rewrites to the unique fixed point. With a seed, each step is
/// picked uniformly among the applicable ones; confluence makes the result
/// independent of that choice. A hard iteration ceiling of 4x the total
/// element count guards the termination argument.
inline ChirotopeTree canonicalize(ChirotopeTree t, int size_cap = kDefaultModuleSearchCap,
                                  std::optional<std::uint64_t> seed = std::nullopt,
                                  const RewriteObserver& observe = {}) {
  size_t total_elements = 0;
  for (const auto& [id, chi] : t.nodes()) total_elements += static_cast<size_t>(chi.size());
  const size_t ceiling = 4 * total_elements + 4;
  std::optional<Rng> rng;
  if (seed) rng.emplace(*seed);
  for (size_t iter = 0;; ++iter) {
    if (iter > ceiling)
      throw Error(ErrorKind::Precondition, "rewrite ceiling hit; termination bug");
    auto steps = applicable_steps(t, size_cap);
    if (steps.empty()) return t;
    const RewriteStep& step = rng ? steps[rng->below(steps.size())] : steps.front();
    ChirotopeTree next = apply_step(t, step);
    if (observe) observe(t, step, next);
    t = std::move(next);
  }
}

/// The unique canonical chirotope tree representing chi.
inline ChirotopeTree canonical_tree(const Chirotope& chi,
                                    int size_cap = kDefaultModuleSearchCap,
                                    std::optional<std::uint64_t> seed = std::nullopt,
                                    const RewriteObserver& observe = {}) {
  std::map<NodeId, Chirotope> nodes;
  nodes.emplace(0, chi);
  return canonicalize(ChirotopeTree(std::move(nodes), {}), size_cap, seed, observe);
}

}  // namespace chiro
