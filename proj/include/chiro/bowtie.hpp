#pragma once
/**
 * Bowtie products of chirotopes, module detection and factorization,
 * decomposability testing, quasi-module enumeration.
 *
 * Module search enumerates subsets and is capped (default 16); the
 * enumeration order is fixed so results are reproducible.
 */

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "chiro/chirotope.hpp"

namespace chiro {

inline constexpr int kDefaultModuleSearchCap = 16;

/// Raw bowtie sign map: majority side decides, with the minority element
/// replaced by the majority side's starred element. No extremality check,
/// so the result need not satisfy the axioms.
inline SignFunction bowtie_sign_map(const SignFunction& chi, const Label& x_star,
                                    const SignFunction& xi, const Label& y_star) {
  if (!chi.has_label(x_star)) throw Error(ErrorKind::UnknownLabel, x_star);
  if (!xi.has_label(y_star)) throw Error(ErrorKind::UnknownLabel, y_star);
  std::vector<Label> xs, ys;
  for (const Label& l : chi.ground())
    if (l != x_star) xs.push_back(l);
  for (const Label& l : xi.ground())
    if (l != y_star) ys.push_back(l);
  if (xs.size() < 2 || ys.size() < 2)
    throw Error(ErrorKind::TooSmall, "both factors need >= 2 non-proxy labels");

  std::set<Label> xset(xs.begin(), xs.end());
  for (const Label& y : ys)
    if (xset.count(y)) throw Error(ErrorKind::GroundOverlap, y);
  if (xset.count(y_star) || std::count(ys.begin(), ys.end(), x_star) ||
      x_star == y_star)
    throw Error(ErrorKind::GroundOverlap, "starred labels must be fresh on the other side");

  std::vector<Label> ground = xs;
  ground.insert(ground.end(), ys.begin(), ys.end());
  std::sort(ground.begin(), ground.end());

  const int n = static_cast<int>(ground.size());
  std::vector<char> in_x(static_cast<size_t>(n));
  std::vector<int> idx_chi(static_cast<size_t>(n), -1), idx_xi(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const Label& l = ground[static_cast<size_t>(i)];
    if (xset.count(l)) {
      in_x[static_cast<size_t>(i)] = 1;
      idx_chi[static_cast<size_t>(i)] = chi.index_of(l);
    } else {
      idx_xi[static_cast<size_t>(i)] = xi.index_of(l);
    }
  }
  const int xs_star = chi.index_of(x_star);
  const int ys_star = xi.index_of(y_star);

  return SignFunction(ground, [&](int i, int j, int k) {
    int cx = in_x[static_cast<size_t>(i)] + in_x[static_cast<size_t>(j)] +
             in_x[static_cast<size_t>(k)];
    auto cidx = [&](int v) { return in_x[static_cast<size_t>(v)] ? idx_chi[static_cast<size_t>(v)] : xs_star; };
    auto xidx = [&](int v) { return in_x[static_cast<size_t>(v)] ? ys_star : idx_xi[static_cast<size_t>(v)]; };
    if (cx >= 2) return chi.sign_by_index(cidx(i), cidx(j), cidx(k));
    return xi.sign_by_index(xidx(i), xidx(j), xidx(k));
  });
}

/// Bowtie product. Requires both starred elements extreme in their factors;
/// the result is then a chirotope whose extreme elements are those of the
/// factors minus the starred ones.
inline Chirotope bowtie(const Chirotope& chi, const Label& x_star, const Chirotope& xi,
                        const Label& y_star) {
  if (!chi.is_extreme(x_star)) throw Error(ErrorKind::ProxyNotExtreme, x_star);
  if (!xi.is_extreme(y_star)) throw Error(ErrorKind::ProxyNotExtreme, y_star);
  return Chirotope::from_prevalidated(bowtie_sign_map(chi.signs(), x_star, xi.signs(), y_star));
}

struct ModularBipartition {
  std::vector<Label> part_x;  // sorted
  std::vector<Label> part_y;  // sorted

  bool nontrivial() const { return part_x.size() >= 2 && part_y.size() >= 2; }
};

/// X is a module iff elements inside and outside X are mutually
/// indistinguishable by triple signs. Trivial subsets (|X| <= 1 or
/// |complement| <= 1) are modules.
inline bool is_module(const Chirotope& kappa, const std::set<Label>& x_part) {
  std::vector<int> xs, ys;
  for (const Label& l : x_part) xs.push_back(kappa.signs().index_of(l));
  for (const Label& l : kappa.ground())
    if (!x_part.count(l)) ys.push_back(kappa.signs().index_of(l));
  if (xs.size() <= 1 || ys.size() <= 1) return true;
  const SignFunction& sf = kappa.signs();
  for (size_t a = 0; a < xs.size(); ++a)
    for (size_t b = a + 1; b < xs.size(); ++b) {
      int ref = sf.sign_by_index(xs[a], xs[b], ys[0]);
      for (size_t c = 1; c < ys.size(); ++c)
        if (sf.sign_by_index(xs[a], xs[b], ys[c]) != ref) return false;
    }
  for (size_t a = 0; a < ys.size(); ++a)
    for (size_t b = a + 1; b < ys.size(); ++b) {
      int ref = sf.sign_by_index(xs[0], ys[a], ys[b]);
      for (size_t c = 1; c < xs.size(); ++c)
        if (sf.sign_by_index(xs[c], ys[a], ys[b]) != ref) return false;
    }
  return true;
}

/// Smallest nontrivial module by (size, lexicographic member list), or
/// nullopt if the chirotope is indecomposable. Subset enumeration with
/// early-exit checks; capped.
inline std::optional<std::vector<Label>> find_nontrivial_module(
    const Chirotope& kappa, int size_cap = kDefaultModuleSearchCap) {
  const int n = kappa.size();
  if (n > size_cap)
    throw Error(ErrorKind::SizeCapExceeded,
                "module search on " + std::to_string(n) + " > cap " + std::to_string(size_cap));
  // If any nontrivial module exists, its complement is one too, so the
  // smallest has size <= n/2.
  for (int k = 2; k <= n / 2; ++k) {
    std::optional<std::vector<Label>> best;
    detail::for_each_subset(n, k, [&](const std::vector<int>& sub) {
      std::set<Label> x_part;
      for (int i : sub) x_part.insert(kappa.ground()[static_cast<size_t>(i)]);
      if (is_module(kappa, x_part)) {
        best = std::vector<Label>(x_part.begin(), x_part.end());
        return true;  // subsets come lexicographically; first hit wins
      }
      return false;
    });
    if (best) return best;
  }
  return std::nullopt;
}

inline bool is_decomposable(const Chirotope& kappa, int size_cap = kDefaultModuleSearchCap) {
  return find_nontrivial_module(kappa, size_cap).has_value();
}

struct BowtieFactors {
  Chirotope chi;  // on X u {x_star}
  Label x_star;
  Chirotope xi;   // on Y u {y_star}
  Label y_star;
};

/// Inverse of the bowtie along the module X: chi is kappa restricted to
/// X plus one outside element renamed x_star (the choice of that element
/// does not matter), and symmetrically for xi.
inline BowtieFactors factorize(const Chirotope& kappa, const std::set<Label>& x_part,
                               const Label& x_star, const Label& y_star) {
  std::set<Label> y_part;
  for (const Label& l : kappa.ground())
    if (!x_part.count(l)) y_part.insert(l);
  if (x_part.size() < 2 || y_part.size() < 2)
    throw Error(ErrorKind::NotAModule, "trivial bipartition");
  if (!is_module(kappa, x_part)) throw Error(ErrorKind::NotAModule, "given set is not a module");
  if (kappa.has_label(x_star)) throw Error(ErrorKind::LabelCollision, x_star);
  if (kappa.has_label(y_star) || x_star == y_star) throw Error(ErrorKind::LabelCollision, y_star);

  const Label& y_rep = *y_part.begin();
  std::set<Label> chi_ground = x_part;
  chi_ground.insert(y_rep);
  Chirotope chi = kappa.restricted(chi_ground).relabeled([&] {
    std::map<Label, Label> m;
    for (const Label& l : x_part) m[l] = l;
    m[y_rep] = x_star;
    return m;
  }());

  const Label& x_rep = *x_part.begin();
  std::set<Label> xi_ground = y_part;
  xi_ground.insert(x_rep);
  Chirotope xi = kappa.restricted(xi_ground).relabeled([&] {
    std::map<Label, Label> m;
    for (const Label& l : y_part) m[l] = l;
    m[x_rep] = y_star;
    return m;
  }());

  return BowtieFactors{std::move(chi), x_star, std::move(xi), y_star};
}

/// Unordered bipartition of the outside induced by a pair (a,b), keyed by
/// membership of each outside element on the positive side of (a,b),
/// normalized so the part containing the smallest outside element is "true".
namespace detail {
inline std::vector<char> induced_bipartition(const SignFunction& sf, int a, int b,
                                             const std::vector<int>& outside, bool* nontrivial) {
  std::vector<char> key(outside.size());
  int pos = 0, neg = 0;
  for (size_t i = 0; i < outside.size(); ++i) {
    key[i] = sf.sign_by_index(a, b, outside[i]) == 1 ? 1 : 0;
    (key[i] ? pos : neg)++;
  }
  if (!key.empty() && key[0] == 0)
    for (auto& c : key) c = static_cast<char>(1 - c);
  *nontrivial = pos > 0 && neg > 0;
  return key;
}
}  // namespace detail

/// W is a quasi-module iff every pair in W induces the same nontrivial
/// bipartition of the outside.
inline bool is_quasi_module(const Chirotope& kappa, const std::set<Label>& w) {
  if (w.size() < 2) return false;
  std::vector<int> inside, outside;
  for (const Label& l : kappa.ground())
    (w.count(l) ? inside : outside).push_back(kappa.signs().index_of(l));
  if (outside.size() < 2) return false;
  std::optional<std::vector<char>> ref;
  for (size_t a = 0; a < inside.size(); ++a)
    for (size_t b = a + 1; b < inside.size(); ++b) {
      bool nontrivial = false;
      auto key = detail::induced_bipartition(kappa.signs(), inside[a], inside[b], outside,
                                             &nontrivial);
      if (!nontrivial) return false;
      if (!ref)
        ref = std::move(key);
      else if (*ref != key)
        return false;
    }
  return true;
}

/// All quasi-modules with at least min_size elements, by subset enumeration
/// under the module-search cap. Output sorted by (size, member list).
inline std::vector<std::vector<Label>> quasi_modules(const Chirotope& kappa, int min_size,
                                                     int size_cap = kDefaultModuleSearchCap) {
  if (min_size < 2) throw Error(ErrorKind::Precondition, "min_size must be >= 2");
  const int n = kappa.size();
  if (n > size_cap)
    throw Error(ErrorKind::SizeCapExceeded,
                "quasi-module search on " + std::to_string(n) + " > cap " + std::to_string(size_cap));
  std::vector<std::vector<Label>> out;
  for (int k = min_size; k <= n - 2; ++k) {
    detail::for_each_subset(n, k, [&](const std::vector<int>& sub) {
      std::set<Label> w;
      for (int i : sub) w.insert(kappa.ground()[static_cast<size_t>(i)]);
      if (is_quasi_module(kappa, w)) out.emplace_back(w.begin(), w.end());
      return false;
    });
  }
  return out;
}

/// The unique pair {w1,w2} with sign(a,w1,w) = sign(a,w,w2) constant over
/// w in W \ {w1,w2}, for every a outside W. For |W| = 2 this is W itself.
/// Returned in lexicographic order.
inline std::pair<Label, Label> antipodal_elements(const Chirotope& kappa,
                                                  const std::set<Label>& w) {
  if (!is_quasi_module(kappa, w))
    throw Error(ErrorKind::NotQuasiModule, "antipodal elements need a quasi-module");
  if (w.size() == 2) {
    auto it = w.begin();
    Label a = *it++;
    return {a, *it};
  }
  // Any outside element b is extreme in the restriction to W u {b}; the
  // radial order <_b on W has the antipodal pair as its two extrema.
  Label b;
  for (const Label& l : kappa.ground())
    if (!w.count(l)) {
      b = l;
      break;
    }
  const SignFunction& sf = kappa.signs();
  int bi = sf.index_of(b);
  std::vector<int> ws;
  for (const Label& l : w) ws.push_back(sf.index_of(l));
  auto mm = std::minmax_element(ws.begin(), ws.end(), [&](int p, int q) {
    return sf.sign_by_index(bi, p, q) == 1;
  });
  Label w1 = sf.ground()[static_cast<size_t>(*mm.first)];
  Label w2 = sf.ground()[static_cast<size_t>(*mm.second)];
  if (w2 < w1) std::swap(w1, w2);
  return {w1, w2};
}

/// Fresh proxy names "p#0", "p#1", ... from a per-session counter,
/// skipping any label already taken.
inline Label fresh_proxy_label(const std::set<Label>& taken) {
  static std::atomic<unsigned long> counter{0};
  for (;;) {
    Label candidate = "p#" + std::to_string(counter.fetch_add(1));
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace chiro
