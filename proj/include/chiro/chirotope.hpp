#pragma once
/**
 * Validated chirotopes: extreme elements, radial orders, hull cycle,
 * segment crossings, restriction and relabeling.
 */

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "chiro/sign_function.hpp"

namespace chiro {

class Chirotope {
 public:
  /// Validates both axioms; throws Error(AxiomViolation) with the first
  /// violating tuple embedded in the message.
  static Chirotope validated(SignFunction sf) {
    if (auto v = find_axiom_violation(sf))
      throw Error(ErrorKind::AxiomViolation, v->describe());
    return Chirotope(std::move(sf));
  }

  /// Wraps a sign map known to satisfy the axioms (restrictions of valid
  /// chirotopes, bowties of extreme-proxy factors, orientation maps of
  /// point sets). Callers own that guarantee; tests re-validate.
  static Chirotope from_prevalidated(SignFunction sf) { return Chirotope(std::move(sf)); }

  const SignFunction& signs() const { return sf_; }
  int size() const { return sf_.size(); }
  const std::vector<Label>& ground() const { return sf_.ground(); }
  bool has_label(const Label& x) const { return sf_.has_label(x); }

  int sign(const Label& a, const Label& b, const Label& c) const { return sf_.sign(a, b, c); }
  int sign_by_index(int i, int j, int k) const { return sf_.sign_by_index(i, j, k); }

  bool operator==(const Chirotope& o) const { return sf_ == o.sf_; }
  bool operator!=(const Chirotope& o) const { return sf_ != o.sf_; }

  /// x is extreme iff some y makes sign(x,y,z) constant over z.
  bool is_extreme(const Label& x) const {
    return std::binary_search(extreme_.begin(), extreme_.end(), x);
  }

  /// Sorted list of extreme elements. Always has size >= 3.
  const std::vector<Label>& extreme_elements() const { return extreme_; }

  bool is_convex() const { return extreme_.size() == sf_.ground().size(); }

  /// A triangle containing t (all three signs +1), or nullopt iff t extreme.
  std::optional<std::array<Label, 3>> caratheodory_witness(const Label& t) const {
    int ti = sf_.index_of(t);
    const int n = size();
    for (int a = 0; a < n; ++a) {
      if (a == ti) continue;
      for (int b = a + 1; b < n; ++b) {
        if (b == ti) continue;
        for (int c = b + 1; c < n; ++c) {
          if (c == ti) continue;
          if (sf_.sign_by_index(ti, a, b) == 1 && sf_.sign_by_index(ti, b, c) == 1 &&
              sf_.sign_by_index(ti, c, a) == 1)
            return std::array<Label, 3>{sf_.label_at(a), sf_.label_at(b), sf_.label_at(c)};
          if (sf_.sign_by_index(ti, a, c) == 1 && sf_.sign_by_index(ti, c, b) == 1 &&
              sf_.sign_by_index(ti, b, a) == 1)
            return std::array<Label, 3>{sf_.label_at(a), sf_.label_at(c), sf_.label_at(b)};
        }
      }
    }
    return std::nullopt;
  }

  /// Ground minus a, sorted by p <_a q  <=>  sign(a,p,q) = +1.
  /// Requires a extreme; the relation is then a strict total order, the
  /// first element is the hull successor a+ and the last the predecessor a-.
  std::vector<Label> radial_order(const Label& a) const {
    if (!is_extreme(a)) throw Error(ErrorKind::NotExtreme, a);
    int ai = sf_.index_of(a);
    std::vector<int> rest;
    for (int i = 0; i < size(); ++i)
      if (i != ai) rest.push_back(i);
    std::sort(rest.begin(), rest.end(),
              [&](int p, int q) { return sf_.sign_by_index(ai, p, q) == 1; });
    std::vector<Label> out;
    out.reserve(rest.size());
    for (int i : rest) out.push_back(sf_.label_at(i));
    return out;
  }

  /// Counterclockwise cyclic order of the extreme elements, stored starting
  /// at the lexicographically smallest one. The cycle itself is independent
  /// of that choice; the start point is our normalization.
  const std::vector<Label>& hull_cycle() const { return hull_cycle_; }

  /// Segments xy and zt cross iff sign(x,y,z) = -sign(x,y,t) and
  /// sign(z,t,x) = -sign(z,t,y).
  bool segments_cross(const Label& x, const Label& y, const Label& z, const Label& t) const {
    int xi = sf_.index_of(x), yi = sf_.index_of(y), zi = sf_.index_of(z), ti = sf_.index_of(t);
    if (xi == yi || xi == zi || xi == ti || yi == zi || yi == ti || zi == ti)
      throw Error(ErrorKind::RepeatedLabel, x + "," + y + "," + z + "," + t);
    return sf_.sign_by_index(xi, yi, zi) == -sf_.sign_by_index(xi, yi, ti) &&
           sf_.sign_by_index(zi, ti, xi) == -sf_.sign_by_index(zi, ti, yi);
  }

  /// Restriction to a subset of the ground set (size >= 3). A restriction
  /// of a chirotope is a chirotope, so no re-validation is performed.
  Chirotope restricted(const std::set<Label>& keep) const {
    return Chirotope(sf_.restricted(keep));
  }

  Chirotope relabeled(const std::map<Label, Label>& to_new) const {
    return Chirotope(sf_.relabeled(to_new));
  }

 private:
  explicit Chirotope(SignFunction sf) : sf_(std::move(sf)) {
    compute_extremes();
    compute_hull_cycle();
  }

  void compute_extremes() {
    const int n = size();
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n && !is_witness_found(x, y, n); ++y) {
      }
    }
    std::sort(extreme_.begin(), extreme_.end());
  }

  bool is_witness_found(int x, int y, int n) {
    if (x == y) return false;
    int common = 0;
    for (int z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      int s = sf_.sign_by_index(x, y, z);
      if (common == 0)
        common = s;
      else if (s != common)
        return false;
    }
    extreme_.push_back(sf_.label_at(x));
    return true;
  }

  void compute_hull_cycle() {
    if (extreme_.size() < 3)
      throw Error(ErrorKind::Precondition,
                  "fewer than 3 extreme elements; sign map is not a chirotope");
    const Label& a = extreme_.front();  // lexicographically smallest extreme
    hull_cycle_.push_back(a);
    int ai = sf_.index_of(a);
    std::vector<int> others;
    for (const Label& e : extreme_)
      if (e != a) others.push_back(sf_.index_of(e));
    std::sort(others.begin(), others.end(),
              [&](int p, int q) { return sf_.sign_by_index(ai, p, q) == 1; });
    for (int i : others) hull_cycle_.push_back(sf_.label_at(i));
  }

  SignFunction sf_;
  std::vector<Label> extreme_;    // sorted
  std::vector<Label> hull_cycle_; // cyclic, starts at extreme_.front()
};

}  // namespace chiro
