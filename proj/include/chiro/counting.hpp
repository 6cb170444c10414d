#pragma once
/**
 * Exact triangulation counting over chirotope trees.
 *
 * Node polynomials come from the enumeration oracle; trees are counted by
 * repeatedly merging a leaf into its parent, eliminating one proxy
 * variable per step with the R_{a,b} merge kernels. A closed formula and
 * a degree-polynomial recurrence cover the two-block chain family.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chiro/geometry.hpp"
#include "chiro/polynomial.hpp"
#include "chiro/tree.hpp"
#include "chiro/triangulation.hpp"

namespace chiro {

/// Full triangulation polynomial of chi with the given marked (extreme)
/// elements: for every triangulation, one monomial recording each proxy's
/// degree and each proxy-proxy edge.
inline FullTriPoly full_polynomial(const Chirotope& chi, const std::vector<Label>& proxies,
                                   int cap = kDefaultOracleCap) {
  for (const Label& p : proxies)
    if (!chi.is_extreme(p)) throw Error(ErrorKind::ProxyNotExtreme, p);
  FullTriPoly q;
  q.k = static_cast<int>(proxies.size());
  for (const Triangulation& t : enumerate_triangulations(chi, cap)) {
    FullTriPoly::Key key;
    key.xexp.resize(proxies.size());
    for (size_t i = 0; i < proxies.size(); ++i) {
      int d = t.degree(proxies[i]);
      if (d < 2)
        throw Error(ErrorKind::Precondition, "extreme element with degree < 2 (oracle bug)");
      key.xexp[i] = d;
    }
    for (size_t i = 0; i < proxies.size(); ++i)
      for (size_t j = i + 1; j < proxies.size(); ++j)
        if (t.contains(proxies[i], proxies[j]))
          key.ybits |= FullTriPoly::pair_bit(static_cast<int>(i), static_cast<int>(j));
    q.add(std::move(key), 1);
  }
  return q;
}

/// P_{chi,x*}(s): triangulations marked by the degree of one element.
inline UniPoly degree_polynomial(const Chirotope& chi, const Label& x_star,
                                 int cap = kDefaultOracleCap) {
  return full_polynomial(chi, {x_star}, cap).as_univariate();
}

/// Q^in and Q^out of (t,u) = (deg y*, deg z*), split by whether the edge
/// {y*, z*} is in the triangulation.
inline std::pair<BiPoly, BiPoly> split_polynomials(const Chirotope& xi, const Label& y_star,
                                                   const Label& z_star,
                                                   int cap = kDefaultOracleCap) {
  FullTriPoly q = full_polynomial(xi, {y_star, z_star}, cap);
  BiPoly q_in, q_out;
  for (const auto& [key, v] : q.terms)
    (key.ybits ? q_in : q_out).add(key.xexp[0], key.xexp[1], v);
  return {q_in, q_out};
}

/// The merge kernel R_{a,b} over r variables, as exponent-vector terms:
///   r = 0:  the single constant binom(a+b-2, b-1)
///   b < r:  zero
///   b = r:  all exponent vectors summing to exactly a-1, coefficient 1
///   b > r:  vectors with sum m <= a-1, coefficient binom(a+b-m-r-2, b-r-1)
/// Symmetric in the variables.
inline const std::vector<std::pair<std::vector<int>, Int>>& r_polynomial(int a, int b, int r) {
  thread_local std::map<std::tuple<int, int, int>, std::vector<std::pair<std::vector<int>, Int>>>
      cache;
  auto key = std::make_tuple(a, b, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<std::vector<int>, Int>> terms;
  if (r == 0) {
    Int v = binomial(a + b - 2, b - 1);
    if (v != 0) terms.push_back({{}, v});
  } else if (b >= r) {
    std::vector<int> exps(static_cast<size_t>(r), 0);
    // enumerate all vectors with sum <= a-1
    for (;;) {
      int sum = 0;
      for (int e : exps) sum += e;
      if (sum <= a - 1) {
        Int v = b == r ? Int(sum == a - 1 ? 1 : 0)
                       : binomial(a + b - sum - r - 2, b - r - 1);
        if (v != 0) terms.push_back({exps, v});
      }
      int i = r - 1;
      while (i >= 0) {
        ++exps[static_cast<size_t>(i)];
        int s2 = 0;
        for (int e : exps) s2 += e;
        if (s2 <= a - 1) break;
        exps[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return cache.emplace(key, std::move(terms)).first->second;
}

/// Univariate R_{a,b}(u), the r = 1 case.
inline UniPoly r_polynomial_uni(int a, int b) {
  UniPoly p;
  for (const auto& [exps, v] : r_polynomial(a, b, 1)) p.add(exps[0], v);
  return p;
}

/// Number of triangulations of a bowtie from the two proxy degree
/// polynomials: sum of binom(a+b-2, a-1) [s^a]P [t^b]Q.
inline Int count_bowtie(const UniPoly& p_chi, const UniPoly& p_xi) {
  Int total = 0;
  for (const auto& [a, pa] : p_chi.c)
    for (const auto& [b, qb] : p_xi.c) total += binomial(a + b - 2, a - 1) * pa * qb;
  return total;
}

/// Degree polynomial of z* in the bowtie chi >< xi, where z* lives on the
/// xi side: the edgeless part merges like the plain count; the part with
/// the edge {y*, z*} distributes extra z*-degree through R_{a,b}(u).
inline UniPoly merge_degree_polynomial(const UniPoly& p_chi, const BiPoly& q_in,
                                       const BiPoly& q_out) {
  UniPoly out;
  for (const auto& [a, pa] : p_chi.c) {
    for (const auto& [key, v] : q_out.c) {
      auto [b, du] = key;
      out.add(du, binomial(a + b - 2, a - 1) * pa * v);
    }
    for (const auto& [key, v] : q_in.c) {
      auto [b, du] = key;
      for (const auto& [exps, rc] : r_polynomial(a, b, 1)) out.add(du + exps[0], pa * rc * v);
    }
  }
  return out;
}

namespace detail {

/// Correlations of the leaf polynomial with the R-kernel coefficients,
/// grouped by total extra degree t: every exponent vector of R_{a,b}(S)
/// with sum t carries the same coefficient, so
///   G_{b,r}(t) = sum_a p_a * [total-degree-t coefficient of R_{a,b}],
/// and the merge only distributes t over the variables of S.
struct MergeKernels {
  const UniPoly& leaf;
  int max_a;
  std::map<std::pair<int, int>, std::vector<Int>> g;  // (b, r) -> values by t
  std::map<int, Int> plain;                           // b -> sum_a p_a binom(a+b-2, a-1)

  explicit MergeKernels(const UniPoly& p) : leaf(p), max_a(p.degree()) {}

  const Int& no_edge(int b) {
    auto it = plain.find(b);
    if (it != plain.end()) return it->second;
    Int total = 0;
    for (const auto& [a, pa] : leaf.c) total += binomial(a + b - 2, a - 1) * pa;
    return plain.emplace(b, std::move(total)).first->second;
  }

  const std::vector<Int>& with_edges(int b, int r) {
    auto key = std::make_pair(b, r);
    auto it = g.find(key);
    if (it != g.end()) return it->second;
    std::vector<Int> values(static_cast<size_t>(std::max(max_a, 1)), Int(0));
    if (b == r) {
      // coefficient is 1 exactly when the total degree is a-1
      for (const auto& [a, pa] : leaf.c)
        if (a - 1 < static_cast<int>(values.size())) values[static_cast<size_t>(a - 1)] += pa;
    } else if (b > r) {
      // F(u) = binom(u + b-r-2, b-r-1), zero for u <= 0; G(t) = sum_a p_a F(a-t)
      std::vector<Int> f(static_cast<size_t>(max_a + 1), Int(0));
      for (int u = 1; u <= max_a; ++u) f[static_cast<size_t>(u)] = binomial(u + b - r - 2, b - r - 1);
      for (const auto& [a, pa] : leaf.c)
        for (int t = 0; t < a && t < static_cast<int>(values.size()); ++t)
          values[static_cast<size_t>(t)] += pa * f[static_cast<size_t>(a - t)];
    }
    return g.emplace(key, std::move(values)).first->second;
  }
};

}  // namespace detail

/// One leaf-merge step: consume variable `consumed` of the parent
/// polynomial against the leaf's degree polynomial. Edge indicators
/// y_{i,consumed} select which surviving variables receive extra degree
/// through R_{a,b}; all other exponents and indicators pass through.
inline FullTriPoly merge_leaf(const FullTriPoly& q_parent, const UniPoly& p_leaf, int consumed) {
  if (consumed < 0 || consumed >= q_parent.k)
    throw Error(ErrorKind::VariableMismatch, "consumed index out of range");
  if (p_leaf.c.empty()) throw Error(ErrorKind::Precondition, "empty leaf polynomial");
  const int k = q_parent.k;
  auto remap = [&](int i) { return i < consumed ? i : i - 1; };

  detail::MergeKernels kernels(p_leaf);
  const int max_t = std::max(kernels.max_a, 1);

  // accumulate into packed keys when they fit one word: up to 3 surviving
  // variables of 16 bits plus 3 edge bits
  const bool packable = k - 1 <= 3;
  std::unordered_map<std::uint64_t, Int> packed;
  FullTriPoly out;
  out.k = k - 1;
  auto deposit = [&](const std::vector<int>& xexp, std::uint64_t ybits, Int value) {
    if (value == 0) return;
    if (packable) {
      std::uint64_t key = ybits << 48;
      bool fits = true;
      for (size_t i = 0; i < xexp.size(); ++i) {
        if (xexp[i] >= 1 << 16) {
          fits = false;
          break;
        }
        key |= static_cast<std::uint64_t>(xexp[i]) << (16 * i);
      }
      if (fits) {
        auto [it, fresh] = packed.try_emplace(key, std::move(value));
        if (!fresh) it->second += value;
        return;
      }
    }
    out.add(FullTriPoly::Key{xexp, ybits}, value);
  };

  std::vector<int> base_exp(static_cast<size_t>(k - 1));
  std::vector<int> work(static_cast<size_t>(k - 1));
  for (const auto& [key, v] : q_parent.terms) {
    const int b = key.xexp[static_cast<size_t>(consumed)];
    std::vector<int> s_vars;  // surviving (remapped) indices joined to `consumed`
    std::uint64_t base_bits = 0;
    for (int i = 0; i < k; ++i) {
      if (i == consumed) continue;
      if (key.ybits & FullTriPoly::pair_bit(i, consumed)) s_vars.push_back(remap(i));
      for (int j = i + 1; j < k; ++j) {
        if (j == consumed) continue;
        if (key.ybits & FullTriPoly::pair_bit(i, j))
          base_bits |= FullTriPoly::pair_bit(remap(i), remap(j));
      }
    }
    for (int i = 0; i < k; ++i)
      if (i != consumed) base_exp[static_cast<size_t>(remap(i))] = key.xexp[static_cast<size_t>(i)];

    const int r = static_cast<int>(s_vars.size());
    if (r == 0) {
      deposit(base_exp, base_bits, v * kernels.no_edge(b));
      continue;
    }
    if (b < r) continue;  // R vanishes
    const std::vector<Int>& g = kernels.with_edges(b, r);
    work = base_exp;
    if (r == 1) {
      for (int t = 0; t < max_t; ++t) {
        if (g[static_cast<size_t>(t)] == 0) continue;
        work[static_cast<size_t>(s_vars[0])] = base_exp[static_cast<size_t>(s_vars[0])] + t;
        deposit(work, base_bits, v * g[static_cast<size_t>(t)]);
      }
    } else {
      // distribute the total extra degree t over the r joined variables
      std::vector<int> split(static_cast<size_t>(r), 0);
      for (int t = 0; t < max_t; ++t) {
        if (g[static_cast<size_t>(t)] == 0) continue;
        Int value = v * g[static_cast<size_t>(t)];
        std::fill(split.begin(), split.end(), 0);
        split[0] = t;
        for (;;) {
          for (int i = 0; i < r; ++i)
            work[static_cast<size_t>(s_vars[static_cast<size_t>(i)])] =
                base_exp[static_cast<size_t>(s_vars[static_cast<size_t>(i)])] +
                split[static_cast<size_t>(i)];
          deposit(work, base_bits, value);
          // next composition of t into r nonnegative parts
          int i = r - 2;
          while (i >= 0 && split[static_cast<size_t>(i)] == 0) --i;
          if (i < 0) break;
          --split[static_cast<size_t>(i)];
          int rest = t;
          for (int q = 0; q <= i; ++q) rest -= split[static_cast<size_t>(q)];
          split[static_cast<size_t>(i + 1)] = rest;
          for (int q = i + 2; q < r; ++q) split[static_cast<size_t>(q)] = 0;
        }
      }
    }
  }

  for (auto& [key, v] : packed) {
    if (v == 0) continue;
    FullTriPoly::Key nk;
    nk.xexp.resize(static_cast<size_t>(k - 1));
    for (int i = 0; i < k - 1; ++i)
      nk.xexp[static_cast<size_t>(i)] = static_cast<int>(key >> (16 * i) & 0xffff);
    nk.ybits = key >> 48;
    out.add(std::move(nk), v);
  }
  return out;
}

/// Exact number of triangulations of chi_T: per-node full polynomials,
/// then leaf merges until a single constant remains. The result does not
/// depend on the order in which ready leaves are merged; pass a seed to
/// randomize that order (used to test exactly that).
inline Int count_tree(const ChirotopeTree& tree, int cap = kDefaultOracleCap,
                      std::optional<std::uint64_t> leaf_order_seed = std::nullopt) {
  struct NodeState {
    FullTriPoly poly;
    std::vector<Label> proxies;  // variable order of poly
  };
  std::map<NodeId, NodeState> state;
  for (const auto& [id, chi] : tree.nodes()) {
    std::vector<Label> proxies(tree.proxies(id).begin(), tree.proxies(id).end());
    state.emplace(id, NodeState{full_polynomial(chi, proxies, cap), proxies});
  }
  struct Edge {
    NodeId u;
    Label pu;
    NodeId v;
    Label pv;
  };
  std::vector<Edge> edges;
  for (const TreeEdge& e : tree.edges()) edges.push_back({e.u, e.u_proxy, e.v, e.v_proxy});

  std::optional<Rng> rng;
  if (leaf_order_seed) rng.emplace(*leaf_order_seed);

  while (!edges.empty()) {
    std::map<NodeId, int> degree;
    for (const Edge& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    std::vector<NodeId> leaves;
    for (const auto& [id, d] : degree)
      if (d == 1) leaves.push_back(id);
    NodeId leaf;
    if (rng) {
      leaf = leaves[rng->below(leaves.size())];
    } else {
      // smallest polynomial first keeps the intermediate supports compact
      leaf = leaves.front();
      for (NodeId cand : leaves)
        if (state.at(cand).poly.terms.size() < state.at(leaf).poly.terms.size()) leaf = cand;
    }

    size_t ei = 0;
    while (edges[ei].u != leaf && edges[ei].v != leaf) ++ei;
    Edge e = edges[ei];
    if (e.v == leaf) std::swap(e.u, e.v), std::swap(e.pu, e.pv);
    // e.u = leaf (proxy e.pu), e.v = parent (proxy e.pv)
    NodeState& parent = state.at(e.v);
    const NodeState& lf = state.at(e.u);
    int consumed = static_cast<int>(
        std::find(parent.proxies.begin(), parent.proxies.end(), e.pv) - parent.proxies.begin());
    parent.poly = merge_leaf(parent.poly, lf.poly.as_univariate(), consumed);
    parent.proxies.erase(parent.proxies.begin() + consumed);
    state.erase(e.u);
    edges.erase(edges.begin() + static_cast<long>(ei));
  }
  return state.begin()->second.poly.constant();
}

/// Maximal non-crossing edge sets between an a-set and a b-set on opposite
/// sides of a modular bipartition, optionally with the degrees of some
/// b-side elements pinned: binom(a+b-sum-2, b-k-1), the k = 0 case being
/// binom(a+b-2, b-1).
inline Int count_noncrossing_matchings(int a, int b, const std::vector<int>& fixed_degrees = {}) {
  if (a < 1 || b < 1) throw Error(ErrorKind::Precondition, "both sides must be non-empty");
  int k = static_cast<int>(fixed_degrees.size());
  if (k >= b) throw Error(ErrorKind::Precondition, "cannot fix the degree of every element");
  long sum = 0;
  for (int d : fixed_degrees) {
    if (d < 1) throw Error(ErrorKind::Precondition, "fixed degrees must be >= 1");
    sum += d;
  }
  return binomial(a + b - sum - 2, b - (k + 1));
}

// ---------------------------------------------------------------------------
// Chains: paths of identical 4-element blocks.

/// The two chain blocks on {x*, y*, z, c}: a triangle x*, y*, z with c
/// inside, mirrored vertically between variant 0 and variant 1. Each has a
/// unique triangulation, where every vertex has degree 3 and the edge
/// {x*, y*} is present.
inline Chirotope chain_block(int variant, int index) {
  std::string i = std::to_string(index);
  PointConfig pc;
  int s = variant == 0 ? 1 : -1;
  pc.insert("c" + i, RatPoint{Rat(0), Rat(0)});
  pc.insert("z" + i, RatPoint{Rat(0), Rat(7 * s)});
  pc.insert("x" + i + "*", RatPoint{Rat(-6), Rat(-4 * s)});
  pc.insert("y" + i + "*", RatPoint{Rat(6), Rat(-4 * s)});
  return chirotope_of_points(pc);
}

/// The chain tree of a binary word sigma: one block per letter, joined
/// y_i* -- x_{i+1}*.
inline ChirotopeTree chain_tree(const std::string& sigma) {
  if (sigma.empty()) throw Error(ErrorKind::Precondition, "sigma must be non-empty");
  std::map<NodeId, Chirotope> nodes;
  std::vector<TreeEdge> edges;
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] != '0' && sigma[i] != '1')
      throw Error(ErrorKind::ParseError, "sigma must be a binary word");
    nodes.emplace(static_cast<NodeId>(i + 1), chain_block(sigma[i] - '0', static_cast<int>(i + 1)));
  }
  for (size_t i = 1; i < sigma.size(); ++i)
    edges.push_back(TreeEdge{static_cast<NodeId>(i), "y" + std::to_string(i) + "*",
                             static_cast<NodeId>(i + 1), "x" + std::to_string(i + 1) + "*"});
  return ChirotopeTree(std::move(nodes), std::move(edges));
}

/// Closed-form chain count:
///   3(2k+1) binom(4k+2, 2k+1) / ((2k+2)(4k+1))  -  4^k binom(2k+2, k+1) / (2k+1).
/// Both divisions are exact; a remainder signals an implementation bug.
inline Int chain_count(int k) {
  if (k < 1) throw Error(ErrorKind::Precondition, "chain length must be >= 1");
  Int t1 = 3 * Int(2 * k + 1) * binomial(4 * k + 2, 2 * k + 1);
  Int d1 = Int(2 * k + 2) * (4 * k + 1);
  if (t1 % d1 != 0) throw Error(ErrorKind::DivisionRemainder, "first chain term not integral");
  Int t2 = int_pow(4, static_cast<unsigned>(k)) * binomial(2 * k + 2, k + 1);
  Int d2 = 2 * k + 1;
  if (t2 % d2 != 0) throw Error(ErrorKind::DivisionRemainder, "second chain term not integral");
  return t1 / d1 - t2 / d2;
}

/// Degree polynomial P_k(s) of the free end of a length-k chain, from the
/// recurrence
///   P_{k+1}(s) = (s^4 (P_k(s) - P_k(1)) + s^3 (1-s) P_k'(1)) / (1-s)^2
/// with P_1(s) = s^3 and exact polynomial division at every step.
inline UniPoly chain_degree_poly(int k) {
  if (k < 1) throw Error(ErrorKind::Precondition, "chain length must be >= 1");
  UniPoly p = UniPoly::monomial(3);
  UniPoly one_minus_s;  // (1-s)^2 = 1 - 2s + s^2
  one_minus_s.add(0, 1);
  one_minus_s.add(1, -2);
  one_minus_s.add(2, 1);
  for (int step = 1; step < k; ++step) {
    UniPoly shifted;  // s^4 (P(s) - P(1))
    for (const auto& [e, v] : p.c) shifted.add(e + 4, v);
    shifted.add(4, -p.at_one());
    UniPoly tail;  // s^3 (1-s) P'(1)
    Int d1 = p.derivative_at_one();
    tail.add(3, d1);
    tail.add(4, -d1);
    p = divide_exact(shifted + tail, one_minus_s);
  }
  return p;
}

}  // namespace chiro
