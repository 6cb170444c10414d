#pragma once
/**
 * Exact rational point configurations and the orientation predicate.
 * All predicates are exact; no floating point anywhere.
 */

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "chiro/chirotope.hpp"

namespace chiro {

struct RatPoint {
  Rat x;
  Rat y;

  bool operator==(const RatPoint& o) const { return x == o.x && y == o.y; }
};

/// Sign of the 2x2 determinant |q-p, r-p|, i.e. of the homogeneous 3x3
/// orientation determinant. +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orientation(const RatPoint& p, const RatPoint& q, const RatPoint& r) {
  Rat d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  if (d > 0) return 1;
  if (d < 0) return -1;
  return 0;
}

/// Finite labeled planar point set in general position.
class PointConfig {
 public:
  PointConfig() = default;
  explicit PointConfig(std::map<Label, RatPoint> pts) : points_(std::move(pts)) {}

  void insert(const Label& l, RatPoint p) {
    if (l.empty()) throw Error(ErrorKind::UnknownLabel, "empty label");
    if (!points_.emplace(l, std::move(p)).second)
      throw Error(ErrorKind::RepeatedLabel, l);
  }

  size_t size() const { return points_.size(); }
  const std::map<Label, RatPoint>& points() const { return points_; }

  const RatPoint& at(const Label& l) const {
    auto it = points_.find(l);
    if (it == points_.end()) throw Error(ErrorKind::UnknownLabel, l);
    return it->second;
  }

  bool has_label(const Label& l) const { return points_.count(l) != 0; }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    out.reserve(points_.size());
    for (const auto& [l, p] : points_) out.push_back(l);
    return out;
  }

  /// First collinear triple in label order, if any.
  std::optional<std::array<Label, 3>> find_collinear_triple() const {
    auto ls = labels();
    for (size_t i = 0; i < ls.size(); ++i)
      for (size_t j = i + 1; j < ls.size(); ++j)
        for (size_t k = j + 1; k < ls.size(); ++k)
          if (orientation(at(ls[i]), at(ls[j]), at(ls[k])) == 0)
            return std::array<Label, 3>{ls[i], ls[j], ls[k]};
    return std::nullopt;
  }

  PointConfig restricted(const std::set<Label>& keep) const {
    std::map<Label, RatPoint> pts;
    for (const Label& l : keep) pts.emplace(l, at(l));
    return PointConfig(std::move(pts));
  }

  bool operator==(const PointConfig& o) const { return points_ == o.points_; }

 private:
  std::map<Label, RatPoint> points_;
};

namespace detail {

/// Common-denominator integer lift of a configuration: orientation signs
/// are invariant under the uniform scaling, and integer determinants avoid
/// the per-operation gcd cost of rational arithmetic.
struct ScaledPoints {
  std::vector<Label> labels;             // sorted
  std::vector<std::pair<Int, Int>> pts;  // aligned with labels
  Int scale = 1;                         // original coordinate = pts / scale

  explicit ScaledPoints(const PointConfig& pc) {
    for (const auto& [l, p] : pc.points()) {
      scale = lcm(scale, denominator(p.x));
      scale = lcm(scale, denominator(p.y));
    }
    for (const auto& [l, p] : pc.points()) {
      labels.push_back(l);
      pts.push_back({numerator(p.x) * (scale / denominator(p.x)),
                     numerator(p.y) * (scale / denominator(p.y))});
    }
  }

  int orient(size_t i, size_t j, size_t k) const {
    Int det = (pts[j].first - pts[i].first) * (pts[k].second - pts[i].second) -
              (pts[j].second - pts[i].second) * (pts[k].first - pts[i].first);
    return det.sign();
  }
};

}  // namespace detail

/// Orientation sign map of a point set, without axiom validation.
/// Throws Collinear on degenerate triples.
inline SignFunction orientation_sign_map(const PointConfig& pc) {
  detail::ScaledPoints sp(pc);
  return SignFunction(sp.labels, [&](int i, int j, int k) {
    int s = sp.orient(static_cast<size_t>(i), static_cast<size_t>(j), static_cast<size_t>(k));
    if (s == 0)
      throw Error(ErrorKind::Collinear, sp.labels[static_cast<size_t>(i)] + "," +
                                            sp.labels[static_cast<size_t>(j)] + "," +
                                            sp.labels[static_cast<size_t>(k)]);
    return s;
  });
}

/// The chirotope of a point set in general position. Determinant identities
/// guarantee the axioms; we assert them anyway.
inline Chirotope chirotope_of_points(const PointConfig& pc) {
  SignFunction sf = orientation_sign_map(pc);
  if (auto v = find_axiom_violation(sf))
    throw Error(ErrorKind::Precondition,
                "orientation map violated an axiom (" + v->describe() + ")");
  return Chirotope::from_prevalidated(std::move(sf));
}

inline PointConfig make_config(std::initializer_list<std::pair<Label, std::pair<long, long>>> pts) {
  PointConfig pc;
  for (const auto& [l, xy] : pts) pc.insert(l, RatPoint{Rat(xy.first), Rat(xy.second)});
  return pc;
}

/// Convex position with exact rational coordinates: points on the unit
/// circle via the tangent half-angle parametrization. No three circle
/// points are collinear. Labels end up in counterclockwise order.
inline PointConfig convex_polygon_config(const std::vector<Label>& labels) {
  PointConfig pc;
  long n = static_cast<long>(labels.size());
  for (long i = 0; i < n; ++i) {
    Rat t = Rat(i, n + i + 1);  // strictly increasing values in [0,1)
    Rat den = 1 + t * t;
    pc.insert(labels[static_cast<size_t>(i)], RatPoint{(1 - t * t) / den, 2 * t / den});
  }
  return pc;
}

}  // namespace chiro
