#pragma once
/**
 * Chirotope trees: unrooted trees with chirotope-decorated nodes whose
 * edges select extreme proxy elements. Provides lazy sign evaluation,
 * full expansion, edge contraction, node split, and a canonical
 * fingerprint for isomorphism up to proxy relabeling.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chiro/bowtie.hpp"

namespace chiro {

using NodeId = int;

struct TreeEdge {
  NodeId u;
  Label u_proxy;
  NodeId v;
  Label v_proxy;
};

struct TreeViolation {
  std::string kind;
  std::string location;
};

class ChirotopeTree {
 public:
  ChirotopeTree(std::map<NodeId, Chirotope> nodes, std::vector<TreeEdge> edges)
      : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    if (auto v = violation())
      throw Error(ErrorKind::TreeViolation, v->kind + " at " + v->location);
    index();
  }

  static std::optional<TreeViolation> find_violation(const std::map<NodeId, Chirotope>& nodes,
                                                     const std::vector<TreeEdge>& edges) {
    return ChirotopeTree(nodes, edges, unchecked_tag{}).violation();
  }

  const std::map<NodeId, Chirotope>& nodes() const { return nodes_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }

  const Chirotope& node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error(ErrorKind::UnknownNode, std::to_string(id));
    return it->second;
  }

  size_t node_count() const { return nodes_.size(); }

  /// Non-proxy labels of a node (the set X_v).
  const std::vector<Label>& non_proxies(NodeId id) const { return non_proxies_.at(id); }

  const std::set<Label>& proxies(NodeId id) const { return proxies_.at(id); }

  /// All non-proxy labels across the tree (the ground set of chi_T), sorted.
  std::vector<Label> ground() const {
    std::vector<Label> out;
    for (const auto& [id, xs] : non_proxies_) out.insert(out.end(), xs.begin(), xs.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  size_t ground_size() const {
    size_t n = 0;
    for (const auto& [id, xs] : non_proxies_) n += xs.size();
    return n;
  }

  NodeId owner_of(const Label& x) const {
    auto it = owner_.find(x);
    if (it == owner_.end() || !is_non_proxy(x))
      throw Error(ErrorKind::UnknownLabel, x + " is not a non-proxy label of this tree");
    return it->second;
  }

  /// R_T(x, v): x itself if x lives in v, else the proxy of v on the first
  /// edge of the path from v toward x's node.
  Label representative(const Label& x, NodeId v) const {
    NodeId home = owner_of(x);
    node(v);
    if (home == v) return x;
    size_t e = first_edge_toward(v, home);
    return proxy_at(e, v);
  }

  /// Intersection node of the three pairwise paths.
  NodeId median_node(const Label& x, const Label& y, const Label& z) const {
    NodeId a = owner_of(x), b = owner_of(y), c = owner_of(z);
    if (a == b || a == c) return a;
    if (b == c) return b;
    auto pab = path(a, b);
    std::set<NodeId> on_ab(pab.begin(), pab.end());
    for (NodeId w : path(c, a))
      if (on_ab.count(w)) return w;
    throw Error(ErrorKind::TreeViolation, "median not found (tree disconnected?)");
  }

  /// chi_T(x,y,z) evaluated lazily at the median node via representatives.
  int eval(const Label& x, const Label& y, const Label& z) const {
    if (x == y || y == z || x == z) throw Error(ErrorKind::RepeatedLabel, x + "," + y + "," + z);
    NodeId v = median_node(x, y, z);
    return node(v).sign(representative(x, v), representative(y, v), representative(z, v));
  }

  /// The chirotope chi_T, computed by folding edge contractions leaf-first.
  Chirotope expand() const {
    ChirotopeTree t = *this;
    while (!t.edges_.empty()) {
      // contract the unique edge at the smallest-id leaf
      NodeId leaf = -1;
      for (const auto& [id, chi] : t.nodes_)
        if (t.adj_.at(id).size() == 1) {
          leaf = id;
          break;
        }
      t = t.contract_edge(t.adj_.at(leaf)[0].second);
    }
    return t.nodes_.begin()->second;
  }

  /// Removes edge e; returns the two component subtrees together with the
  /// formerly selected elements, which are non-proxy in the pieces.
  struct Split;
  Split split_at_edge(size_t e) const;

  /// Merges the two endpoints of e into one node decorated with the bowtie
  /// of the decorations; chi_T is unchanged. The merged node takes the
  /// smaller of the two ids.
  ChirotopeTree contract_edge(size_t e) const {
    check_edge(e);
    const TreeEdge& edge = edges_[e];
    NodeId keep = std::min(edge.u, edge.v);
    Chirotope merged =
        bowtie(nodes_.at(edge.u), edge.u_proxy, nodes_.at(edge.v), edge.v_proxy);
    std::map<NodeId, Chirotope> ns;
    for (const auto& [id, chi] : nodes_)
      if (id != edge.u && id != edge.v) ns.emplace(id, chi);
    ns.emplace(keep, std::move(merged));
    std::vector<TreeEdge> es;
    for (size_t i = 0; i < edges_.size(); ++i) {
      if (i == e) continue;
      TreeEdge f = edges_[i];
      if (f.u == edge.u || f.u == edge.v) f.u = keep;
      if (f.v == edge.u || f.v == edge.v) f.v = keep;
      es.push_back(f);
    }
    return ChirotopeTree(std::move(ns), std::move(es));
  }

  /// Splits node v along a nontrivial module X of its decoration (X may
  /// contain proxies); chi_T is unchanged. The X side keeps id v, the
  /// other side gets a fresh id; fresh proxy labels join the new edge.
  ChirotopeTree split_node(NodeId v, const std::set<Label>& x_part) const {
    const Chirotope& chi_v = node(v);
    std::set<Label> taken = all_labels();
    Label s_star = fresh_proxy_label(taken);
    taken.insert(s_star);
    Label t_star = fresh_proxy_label(taken);
    BowtieFactors f = factorize(chi_v, x_part, s_star, t_star);

    NodeId v2 = nodes_.rbegin()->first + 1;
    std::map<NodeId, Chirotope> ns;
    for (const auto& [id, chi] : nodes_)
      if (id != v) ns.emplace(id, chi);
    ns.emplace(v, std::move(f.chi));
    ns.emplace(v2, std::move(f.xi));

    std::vector<TreeEdge> es;
    for (const TreeEdge& old : edges_) {
      TreeEdge g = old;
      if (g.u == v && !x_part.count(g.u_proxy)) g.u = v2;
      if (g.v == v && !x_part.count(g.v_proxy)) g.v = v2;
      es.push_back(g);
    }
    es.push_back(TreeEdge{v, s_star, v2, t_star});
    return ChirotopeTree(std::move(ns), std::move(es));
  }

  std::set<Label> all_labels() const {
    std::set<Label> out;
    for (const auto& [id, chi] : nodes_)
      out.insert(chi.ground().begin(), chi.ground().end());
    return out;
  }

  const std::vector<std::pair<NodeId, size_t>>& adjacency(NodeId id) const {
    return adj_.at(id);
  }

 private:
  struct unchecked_tag {};
  ChirotopeTree(std::map<NodeId, Chirotope> nodes, std::vector<TreeEdge> edges, unchecked_tag)
      : nodes_(std::move(nodes)), edges_(std::move(edges)) {}

  std::optional<TreeViolation> violation() const {
    if (nodes_.empty()) return TreeViolation{"empty tree", "-"};
    // disjoint ground sets
    std::map<Label, NodeId> seen;
    for (const auto& [id, chi] : nodes_)
      for (const Label& l : chi.ground())
        if (!seen.emplace(l, id).second)
          return TreeViolation{"label in two nodes", l};
    // edges: endpoints exist, proxies belong, are extreme, selected once
    std::set<Label> selected;
    for (size_t i = 0; i < edges_.size(); ++i) {
      const TreeEdge& e = edges_[i];
      for (auto [id, proxy] : {std::pair{e.u, e.u_proxy}, std::pair{e.v, e.v_proxy}}) {
        auto it = nodes_.find(id);
        if (it == nodes_.end()) return TreeViolation{"edge references missing node", std::to_string(id)};
        if (!it->second.has_label(proxy))
          return TreeViolation{"proxy not in its node's ground set", proxy};
        if (!it->second.is_extreme(proxy))
          return TreeViolation{"proxy not extreme in its decoration", proxy};
        if (!selected.insert(proxy).second)
          return TreeViolation{"element selected by two edges", proxy};
      }
      if (e.u == e.v) return TreeViolation{"self-loop", std::to_string(e.u)};
    }
    // connected and acyclic
    if (edges_.size() + 1 != nodes_.size())
      return TreeViolation{"edge count is not node count minus one", std::to_string(edges_.size())};
    std::set<NodeId> reached;
    std::queue<NodeId> q;
    q.push(nodes_.begin()->first);
    reached.insert(nodes_.begin()->first);
    while (!q.empty()) {
      NodeId cur = q.front();
      q.pop();
      for (const TreeEdge& e : edges_) {
        NodeId other = e.u == cur ? e.v : (e.v == cur ? e.u : cur);
        if (other != cur && reached.insert(other).second) q.push(other);
      }
    }
    if (reached.size() != nodes_.size()) return TreeViolation{"tree not connected", "-"};
    return std::nullopt;
  }

  void index() {
    for (const auto& [id, chi] : nodes_) {
      adj_[id];
      proxies_[id];
      for (const Label& l : chi.ground()) owner_[l] = id;
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
      adj_[edges_[i].u].emplace_back(edges_[i].v, i);
      adj_[edges_[i].v].emplace_back(edges_[i].u, i);
      proxies_[edges_[i].u].insert(edges_[i].u_proxy);
      proxies_[edges_[i].v].insert(edges_[i].v_proxy);
    }
    for (const auto& [id, chi] : nodes_) {
      std::vector<Label> xs;
      for (const Label& l : chi.ground())
        if (!proxies_[id].count(l)) xs.push_back(l);
      non_proxies_[id] = std::move(xs);
    }
  }

  bool is_non_proxy(const Label& x) const {
    auto it = owner_.find(x);
    return it != owner_.end() && !proxies_.at(it->second).count(x);
  }

  void check_edge(size_t e) const {
    if (e >= edges_.size()) throw Error(ErrorKind::UnknownEdge, std::to_string(e));
  }

  const Label& proxy_at(size_t e, NodeId end) const {
    return edges_[e].u == end ? edges_[e].u_proxy : edges_[e].v_proxy;
  }

  /// BFS path from a to b as a node list (inclusive).
  std::vector<NodeId> path(NodeId a, NodeId b) const {
    std::map<NodeId, NodeId> parent;
    std::queue<NodeId> q;
    q.push(a);
    parent[a] = a;
    while (!q.empty()) {
      NodeId cur = q.front();
      q.pop();
      if (cur == b) break;
      for (auto [nbr, e] : adj_.at(cur))
        if (!parent.count(nbr)) {
          parent[nbr] = cur;
          q.push(nbr);
        }
    }
    std::vector<NodeId> out;
    for (NodeId w = b;; w = parent.at(w)) {
      out.push_back(w);
      if (w == a) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// Index of the first edge on the path from v toward target.
  size_t first_edge_toward(NodeId v, NodeId target) const {
    auto p = path(v, target);
    NodeId next = p[1];
    for (auto [nbr, e] : adj_.at(v))
      if (nbr == next) return e;
    throw Error(ErrorKind::TreeViolation, "adjacency inconsistent");
  }

  /// Nodes reachable from start without using edge banned.
  std::set<NodeId> component_without(NodeId start, size_t banned) const {
    std::set<NodeId> comp{start};
    std::queue<NodeId> q;
    q.push(start);
    while (!q.empty()) {
      NodeId cur = q.front();
      q.pop();
      for (auto [nbr, e] : adj_.at(cur))
        if (e != banned && comp.insert(nbr).second) q.push(nbr);
    }
    return comp;
  }

  std::map<NodeId, Chirotope> nodes_;
  std::vector<TreeEdge> edges_;
  std::map<NodeId, std::vector<Label>> non_proxies_;
  std::map<NodeId, std::set<Label>> proxies_;
  std::map<Label, NodeId> owner_;
  std::map<NodeId, std::vector<std::pair<NodeId, size_t>>> adj_;
};

struct ChirotopeTree::Split {
  ChirotopeTree first;
  ChirotopeTree second;
  Label s1;
  Label s2;
};

inline ChirotopeTree::Split ChirotopeTree::split_at_edge(size_t e) const {
  check_edge(e);
  const TreeEdge& edge = edges_[e];
  auto side = [&](NodeId start) {
    std::set<NodeId> comp = component_without(start, e);
    std::map<NodeId, Chirotope> ns;
    std::vector<TreeEdge> es;
    for (NodeId id : comp) ns.emplace(id, nodes_.at(id));
    for (size_t i = 0; i < edges_.size(); ++i)
      if (i != e && comp.count(edges_[i].u)) es.push_back(edges_[i]);
    return ChirotopeTree(std::move(ns), std::move(es));
  };
  return Split{side(edge.u), side(edge.v), edge.u_proxy, edge.v_proxy};
}

}  // namespace chiro
