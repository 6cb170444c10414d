#pragma once
/**
 * Verified construction of point realizations for bowties and chirotope
 * trees. The construction normalizes each factor so its starred point is
 * the strict extreme in the +x (resp. -x) direction, optionally applies a
 * projective pull that pushes that point toward an unbounded cell, then
 * translates one side far to the right and doubles the distance until the
 * exact chirotope of the assembled points equals the bowtie. Acceptance is
 * gated on that exact equality; failure after the attempt budget is
 * reported honestly.
 */

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chiro/bowtie.hpp"
#include "chiro/geometry.hpp"
#include "chiro/tree.hpp"

namespace chiro {

inline constexpr int kDefaultRealizeBudget = 1024;

namespace detail {

inline Chirotope chirotope_unchecked(const PointConfig& pc) {
  return Chirotope::from_prevalidated(orientation_sign_map(pc));
}

/// Affine, orientation-preserving, rational: star becomes the strict
/// maximum in x, placed at (1, 0).
inline PointConfig normalize_star_right(const PointConfig& pc, const Label& star,
                                        const Chirotope& chi, bool mirror_left) {
  auto order = chi.radial_order(star);
  const RatPoint& succ = pc.at(order.front());  // hull successor
  const RatPoint& pred = pc.at(order.back());   // hull predecessor
  // direction normal to the chord (pred, succ), pointing toward the star;
  // the star is the unique farthest point on its side of that chord
  Rat wx = succ.x - pred.x, wy = succ.y - pred.y;
  Rat ux = -wy, uy = wx;
  const RatPoint& s = pc.at(star);
  if (ux * (s.x - pred.x) + uy * (s.y - pred.y) < 0) {
    ux = -ux;
    uy = -uy;
  }
  if (mirror_left) {
    ux = -ux;
    uy = -uy;
  }
  // rotation-like map (det > 0) sending u to the +x axis
  PointConfig out;
  for (const auto& [l, p] : pc.points())
    out.insert(l, RatPoint{ux * p.x + uy * p.y, -uy * p.x + ux * p.y});
  // translate the star to (+-1, 0)
  RatPoint at = out.at(star);
  Rat tx = (mirror_left ? Rat(-1) : Rat(1)) - at.x, ty = -at.y;
  PointConfig shifted;
  for (const auto& [l, p] : out.points()) shifted.insert(l, RatPoint{p.x + tx, p.y + ty});
  return shifted;
}

/// Projective map sending the vertical line x = L to infinity; preserves
/// all orientations of points with x < L (x > -L in the mirrored case).
inline PointConfig projective_pull(const PointConfig& pc, const Rat& L, bool mirror_left) {
  PointConfig out;
  for (const auto& [l, p] : pc.points()) {
    Rat denom = p.x / L;
    denom = mirror_left ? Rat(1 + denom) : Rat(1 - denom);
    out.insert(l, RatPoint{p.x / denom, p.y / denom});
  }
  return out;
}

inline size_t bit_length(const PointConfig& pc) {
  size_t best = 0;
  for (const auto& [l, p] : pc.points())
    for (const Rat* r : {&p.x, &p.y}) {
      Int num = abs(numerator(*r)) + 1;
      Int den = denominator(*r);
      best = std::max(best, static_cast<size_t>(msb(num)));
      best = std::max(best, static_cast<size_t>(msb(den)));
    }
  return best;
}

}  // namespace detail

/// Point set realizing chi >< xi, assembled from realizations of the
/// factors. Every accepted output has exactly the bowtie chirotope; the
/// postcondition is verified, never assumed.
inline PointConfig realize_bowtie(const PointConfig& p_points, const Label& x_star,
                                  const PointConfig& q_points, const Label& y_star,
                                  int budget = kDefaultRealizeBudget) {
  Chirotope chi = detail::chirotope_unchecked(p_points);
  Chirotope xi = detail::chirotope_unchecked(q_points);
  if (!chi.is_extreme(x_star)) throw Error(ErrorKind::ProxyNotExtreme, x_star);
  if (!xi.is_extreme(y_star)) throw Error(ErrorKind::ProxyNotExtreme, y_star);
  SignFunction target = bowtie_sign_map(chi.signs(), x_star, xi.signs(), y_star);

  PointConfig p0 = detail::normalize_star_right(p_points, x_star, chi, false);
  PointConfig q0 = detail::normalize_star_right(q_points, y_star, xi, true);

  // x-gap between each star (at x = +-1, the strict extreme) and the rest;
  // pulling from just beyond that gap separates the star from its side no
  // matter how skewed the configuration is
  Rat gap_p = 2, gap_q = 2;
  for (const auto& [l, p] : p0.points())
    if (l != x_star) {
      Rat g = 1 - p.x;
      if (g < gap_p) gap_p = g;
    }
  for (const auto& [l, p] : q0.points())
    if (l != y_star) {
      Rat g = p.x + 1;
      if (g < gap_q) gap_q = g;
    }

  constexpr size_t kBitBudget = 1 << 16;
  // pull exponents ramp up fast: heavily skewed inputs (typically outputs
  // of earlier merges) may need L - 1 smaller than gap * 2^-100
  static constexpr int kPullExponents[] = {-1, 0,  1,  2,  3,  4,  6,  8,
                                           12, 16, 24, 32, 48, 64, 96, 128};
  int attempts = 0;
  for (int m : kPullExponents) {
    PointConfig pm = p0, qm = q0;
    if (m >= 0) {
      Rat scale(1, Int(1) << m);
      pm = detail::projective_pull(p0, Rat(1 + gap_p * scale), false);
      qm = detail::projective_pull(q0, Rat(1 + gap_q * scale), true);
    }
    if (detail::bit_length(pm) > kBitBudget || detail::bit_length(qm) > kBitBudget)
      throw Error(ErrorKind::RealizationNotFound,
                  "coordinate bit budget exhausted after " + std::to_string(attempts) +
                      " attempts");
    // verify on a common integer grid: scale both sides together, then all
    // arithmetic per candidate is plain integer determinants
    PointConfig combined;
    for (const auto& [l, p] : pm.points())
      if (l != x_star) combined.insert(l, p);
    for (const auto& [l, p] : qm.points())
      if (l != y_star) combined.insert(l, p);
    chiro::detail::ScaledPoints scaled(combined);
    if (scaled.labels != target.ground())
      throw Error(ErrorKind::Precondition, "ground mismatch between candidate and target");
    std::vector<char> on_q_side(scaled.labels.size(), 0);
    for (size_t i = 0; i < scaled.labels.size(); ++i)
      if (qm.has_label(scaled.labels[i])) on_q_side[i] = 1;

    Int spread = 1;
    for (const auto& [x, y] : scaled.pts) {
      Int v = abs(x) + abs(y);
      if (v > spread) spread = v;
    }
    Int d = 4 * spread;
    const int n = static_cast<int>(scaled.labels.size());
    for (int j = 0; j < 56; ++j, d *= 2) {
      if (++attempts > budget)
        throw Error(ErrorKind::RealizationNotFound,
                    "no verified placement in " + std::to_string(budget) + " attempts");
      chiro::detail::ScaledPoints candidate = scaled;
      for (size_t i = 0; i < candidate.pts.size(); ++i)
        if (on_q_side[i]) candidate.pts[i].first += d;
      bool good = true;
      for (int a = 0; a < n && good; ++a)
        for (int b = a + 1; b < n && good; ++b)
          for (int c = b + 1; c < n && good; ++c)
            if (candidate.orient(static_cast<size_t>(a), static_cast<size_t>(b),
                                 static_cast<size_t>(c)) != target.sign_by_index(a, b, c))
              good = false;
      if (good) {
        PointConfig result;
        Rat shift(d, scaled.scale);
        for (const auto& [l, p] : pm.points())
          if (l != x_star) result.insert(l, p);
        for (const auto& [l, p] : qm.points())
          if (l != y_star) result.insert(l, RatPoint{p.x + shift, p.y});
        return result;
      }
    }
  }
  throw Error(ErrorKind::RealizationNotFound,
              "no verified placement in " + std::to_string(attempts) + " attempts");
}

/// Realization of chi_T from node realizations, folded leaf-first through
/// verified bowtie constructions. The output's chirotope equals expand(T)
/// exactly (checked).
inline PointConfig realize_tree(const ChirotopeTree& tree,
                                const std::map<NodeId, PointConfig>& node_points,
                                int budget = kDefaultRealizeBudget) {
  for (const auto& [id, chi] : tree.nodes()) {
    auto it = node_points.find(id);
    if (it == node_points.end())
      throw Error(ErrorKind::Precondition, "missing realization for node " + std::to_string(id));
    if (detail::chirotope_unchecked(it->second) != chi)
      throw Error(ErrorKind::Precondition,
                  "node realization does not match the decoration at node " + std::to_string(id));
  }
  ChirotopeTree t = tree;
  std::map<NodeId, PointConfig> pts = node_points;
  while (!t.edges().empty()) {
    NodeId leaf = -1;
    for (const auto& [id, chi] : t.nodes())
      if (t.adjacency(id).size() == 1) {
        leaf = id;
        break;
      }
    size_t e = t.adjacency(leaf)[0].second;
    TreeEdge edge = t.edges()[e];
    if (edge.v == leaf) std::swap(edge.u, edge.v), std::swap(edge.u_proxy, edge.v_proxy);
    // edge.u = leaf, edge.v = parent
    PointConfig merged;
    try {
      merged = realize_bowtie(pts.at(edge.v), edge.v_proxy, pts.at(edge.u), edge.u_proxy, budget);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::RealizationNotFound) throw;
      throw Error(ErrorKind::RealizationNotFound,
                  "merging node " + std::to_string(edge.u) + " into " + std::to_string(edge.v) +
                      ": " + err.what());
    }
    t = t.contract_edge(e);
    NodeId kept = std::min(edge.u, edge.v);
    pts.erase(edge.u);
    pts.erase(edge.v);
    pts.emplace(kept, std::move(merged));
  }
  const PointConfig& result = pts.begin()->second;
  if (detail::chirotope_unchecked(result) != t.nodes().begin()->second)
    throw Error(ErrorKind::Precondition, "folded realization does not match the expansion");
  return result;
}

}  // namespace chiro
