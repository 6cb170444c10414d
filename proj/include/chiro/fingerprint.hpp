#pragma once
/**
 * Canonical encoding of a chirotope tree, invariant under proxy
 * relabeling: equal fingerprints iff the trees are isomorphic respecting
 * non-proxy labels.
 *
 * The tree is rooted at its centroid (both centroids for a bicentroid,
 * keeping the smaller encoding). Each node is encoded as its sorted
 * non-proxy labels plus its sign table written over a canonical label
 * order; proxies are ordered by the fingerprint of the subtree they lead
 * to, with ties broken by position in the node's hull cycle. For nodes
 * whose extreme elements are all proxies the hull rotation is free, so
 * every rotation is tried and the smallest encoding kept.
 */

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chiro/tree.hpp"

namespace chiro {

namespace detail {

inline std::vector<NodeId> centroid_nodes(const ChirotopeTree& t) {
  const auto& nodes = t.nodes();
  const size_t n = nodes.size();
  if (n == 1) return {nodes.begin()->first};
  // subtree sizes via DFS order from an arbitrary root
  NodeId root = nodes.begin()->first;
  std::map<NodeId, NodeId> parent;
  std::vector<NodeId> order;
  parent[root] = root;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    order.push_back(cur);
    for (auto [nbr, e] : t.adjacency(cur))
      if (!parent.count(nbr)) {
        parent[nbr] = cur;
        stack.push_back(nbr);
      }
  }
  std::map<NodeId, size_t> sub;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    size_t s = 1;
    for (auto [nbr, e] : t.adjacency(*it))
      if (parent.at(nbr) == *it && nbr != parent.at(*it)) s += sub.at(nbr);
    sub[*it] = s;
  }
  size_t best = std::numeric_limits<size_t>::max();
  std::vector<NodeId> centroids;
  for (const auto& [id, chi] : nodes) {
    size_t worst = n - sub.at(id);
    for (auto [nbr, e] : t.adjacency(id))
      if (parent.at(nbr) == id && nbr != parent.at(id)) worst = std::max(worst, sub.at(nbr));
    if (worst < best) {
      best = worst;
      centroids = {id};
    } else if (worst == best) {
      centroids.push_back(id);
    }
  }
  return centroids;
}

inline std::string encode_rooted(const ChirotopeTree& t, NodeId v,
                                 std::optional<NodeId> parent, const Label& parent_proxy) {
  const Chirotope& chi = t.node(v);

  struct Child {
    std::string enc;
    Label proxy;  // proxy of v on the edge toward this child
  };
  std::vector<Child> children;
  for (auto [nbr, e] : t.adjacency(v)) {
    if (parent && nbr == *parent) continue;
    const TreeEdge& edge = t.edges()[e];
    Label my_proxy = edge.u == v ? edge.u_proxy : edge.v_proxy;
    Label their_proxy = edge.u == v ? edge.v_proxy : edge.u_proxy;
    children.push_back(Child{encode_rooted(t, nbr, v, their_proxy), my_proxy});
  }

  std::vector<Label> non_proxy;
  for (const Label& l : chi.ground())
    if (l != parent_proxy &&
        std::none_of(children.begin(), children.end(),
                     [&](const Child& c) { return c.proxy == l; }))
      non_proxy.push_back(l);

  const std::vector<Label>& hull = chi.hull_cycle();

  // candidate rotations of the hull cycle pinning proxy order
  std::vector<size_t> starts;
  if (parent) {
    for (size_t i = 0; i < hull.size(); ++i)
      if (hull[i] == parent_proxy) starts = {i};
  }
  if (starts.empty()) {
    for (size_t i = 0; i < hull.size(); ++i)
      if (std::binary_search(non_proxy.begin(), non_proxy.end(), hull[i])) {
        starts = {i};
        break;
      }
  }
  if (starts.empty()) {
    starts.resize(hull.size());
    for (size_t i = 0; i < hull.size(); ++i) starts[i] = i;
  }

  std::string best;
  for (size_t start : starts) {
    std::map<Label, size_t> hull_pos;
    for (size_t i = 0; i < hull.size(); ++i)
      hull_pos[hull[(start + i) % hull.size()]] = i;

    std::vector<const Child*> ordered;
    for (const Child& c : children) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(), [&](const Child* a, const Child* b) {
      if (a->enc != b->enc) return a->enc < b->enc;
      return hull_pos.at(a->proxy) < hull_pos.at(b->proxy);
    });

    std::vector<Label> sequence = non_proxy;
    if (parent) sequence.push_back(parent_proxy);
    for (const Child* c : ordered) sequence.push_back(c->proxy);

    std::string enc = "(";
    for (size_t i = 0; i < non_proxy.size(); ++i) enc += (i ? "," : "") + non_proxy[i];
    enc += "|";
    for (size_t i = 0; i < sequence.size(); ++i)
      for (size_t j = i + 1; j < sequence.size(); ++j)
        for (size_t k = j + 1; k < sequence.size(); ++k)
          enc += chi.sign(sequence[i], sequence[j], sequence[k]) == 1 ? '+' : '-';
    enc += "|";
    for (size_t i = 0; i < ordered.size(); ++i) enc += (i ? ";" : "") + ordered[i]->enc;
    enc += ")";
    if (best.empty() || enc < best) best = std::move(enc);
  }
  return best;
}

}  // namespace detail

/// Canonical encoding string; equal strings iff trees are isomorphic up to
/// proxy relabeling (non-proxy labels must match).
inline std::string fingerprint(const ChirotopeTree& t) {
  std::string best;
  for (NodeId c : detail::centroid_nodes(t)) {
    std::string enc = detail::encode_rooted(t, c, std::nullopt, Label());
    if (best.empty() || enc < best) best = std::move(enc);
  }
  return best;
}

inline bool trees_isomorphic(const ChirotopeTree& a, const ChirotopeTree& b) {
  return fingerprint(a) == fingerprint(b);
}

}  // namespace chiro
