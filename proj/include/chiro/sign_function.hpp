#pragma once
/**
 * Alternating sign maps on ordered triples of labels, and the two
 * chirotope axioms (interiority, transitivity) checked by brute force.
 *
 * Storage is a dense table with one sign per sorted triple (a<b<c);
 * lookups of arbitrary ordered triples apply permutation parity.
 */

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chiro/base.hpp"

namespace chiro {

class SignFunction {
 public:
  static constexpr int kMaxGround = 32;

  /// `orient` is queried once per sorted index triple i<j<k and must
  /// return +1 or -1.
  SignFunction(std::vector<Label> ground, const std::function<int(int, int, int)>& orient)
      : ground_(std::move(ground)) {
    init_ground();
    table_.resize(triple_count());
    int idx = 0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        for (int k = j + 1; k < size(); ++k) {
          int s = orient(i, j, k);
          if (s != 1 && s != -1)
            throw Error(ErrorKind::Precondition, "orientation must be +1 or -1");
          table_[idx++] = static_cast<signed char>(s);
        }
  }

  /// Construction from explicit signs on sorted label triples.
  SignFunction(std::vector<Label> ground,
               const std::map<std::array<Label, 3>, int>& sorted_triple_signs)
      : ground_(std::move(ground)) {
    init_ground();
    table_.assign(triple_count(), 0);
    for (const auto& [t, s] : sorted_triple_signs) {
      if (!(t[0] < t[1] && t[1] < t[2]))
        throw Error(ErrorKind::ParseError, "triple key not sorted: " + t[0] + "," + t[1] + "," + t[2]);
      if (s != 1 && s != -1) throw Error(ErrorKind::ParseError, "sign must be +1 or -1");
      table_[rank(index_of(t[0]), index_of(t[1]), index_of(t[2]))] = static_cast<signed char>(s);
    }
    for (size_t i = 0; i < table_.size(); ++i)
      if (table_[i] == 0)
        throw Error(ErrorKind::ParseError, "missing sign for some triple (table incomplete)");
  }

  int size() const { return static_cast<int>(ground_.size()); }
  const std::vector<Label>& ground() const { return ground_; }

  bool has_label(const Label& x) const {
    return std::binary_search(ground_.begin(), ground_.end(), x);
  }

  int index_of(const Label& x) const {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), x);
    if (it == ground_.end() || *it != x) throw Error(ErrorKind::UnknownLabel, x);
    return static_cast<int>(it - ground_.begin());
  }

  const Label& label_at(int i) const { return ground_[static_cast<size_t>(i)]; }

  /// Sign of an arbitrary ordered triple of distinct ground labels.
  int sign(const Label& a, const Label& b, const Label& c) const {
    return sign_by_index(index_of(a), index_of(b), index_of(c));
  }

  int sign_by_index(int i, int j, int k) const {
    if (i == j || j == k || i == k)
      throw Error(ErrorKind::RepeatedLabel, ground_[i] + "," + ground_[j] + "," + ground_[k]);
    int parity = 1;
    if (i > j) { std::swap(i, j); parity = -parity; }
    if (j > k) { std::swap(j, k); parity = -parity; }
    if (i > j) { std::swap(i, j); parity = -parity; }
    return parity * table_[rank(i, j, k)];
  }

  bool operator==(const SignFunction& o) const {
    return ground_ == o.ground_ && table_ == o.table_;
  }
  bool operator!=(const SignFunction& o) const { return !(*this == o); }

  SignFunction restricted(const std::set<Label>& keep) const {
    std::vector<Label> g;
    for (const Label& x : keep) {
      index_of(x);  // throws UnknownLabel
      g.push_back(x);
    }
    if (g.size() < 3) throw Error(ErrorKind::TooSmall, "restriction needs >= 3 labels");
    std::vector<int> old_idx;
    old_idx.reserve(g.size());
    for (const Label& x : g) old_idx.push_back(index_of(x));
    return SignFunction(g, [&](int i, int j, int k) {
      return sign_by_index(old_idx[i], old_idx[j], old_idx[k]);
    });
  }

  /// Relabel through a bijection given on the full ground set.
  SignFunction relabeled(const std::map<Label, Label>& to_new) const {
    if (to_new.size() != ground_.size())
      throw Error(ErrorKind::NotBijective, "relabeling not total on ground");
    std::vector<Label> new_ground;
    std::map<Label, Label> to_old;
    for (const Label& x : ground_) {
      auto it = to_new.find(x);
      if (it == to_new.end()) throw Error(ErrorKind::NotBijective, "no image for " + x);
      if (!to_old.emplace(it->second, x).second)
        throw Error(ErrorKind::NotBijective, "two labels map to " + it->second);
      new_ground.push_back(it->second);
    }
    std::sort(new_ground.begin(), new_ground.end());
    std::vector<int> old_idx;
    for (const Label& y : new_ground) old_idx.push_back(index_of(to_old.at(y)));
    return SignFunction(new_ground, [&](int i, int j, int k) {
      return sign_by_index(old_idx[i], old_idx[j], old_idx[k]);
    });
  }

  /// Signs over all sorted triples, in lexicographic triple order.
  const std::vector<signed char>& table() const { return table_; }

 private:
  void init_ground() {
    std::sort(ground_.begin(), ground_.end());
    if (ground_.size() < 3) throw Error(ErrorKind::TooSmall, "ground set needs >= 3 labels");
    if (static_cast<int>(ground_.size()) > kMaxGround)
      throw Error(ErrorKind::SizeCapExceeded, "ground set larger than " + std::to_string(kMaxGround));
    for (size_t i = 0; i + 1 < ground_.size(); ++i)
      if (ground_[i] == ground_[i + 1]) throw Error(ErrorKind::RepeatedLabel, ground_[i]);
    for (const Label& x : ground_)
      if (x.empty()) throw Error(ErrorKind::UnknownLabel, "empty label");
  }

  size_t triple_count() const {
    size_t n = ground_.size();
    return n * (n - 1) * (n - 2) / 6;
  }

  // Rank of sorted triple i<j<k in lexicographic order over the ground.
  size_t rank(int i, int j, int k) const {
    size_t n = ground_.size();
    auto c2 = [](size_t m) { return m * (m - 1) / 2; };
    auto c3 = [](size_t m) { return m * (m - 1) * (m - 2) / 6; };
    return c3(n) - c3(n - static_cast<size_t>(i)) + c2(n - static_cast<size_t>(i) - 1) -
           c2(n - static_cast<size_t>(j)) + static_cast<size_t>(k - j - 1);
  }

  std::vector<Label> ground_;
  std::vector<signed char> table_;
};

struct AxiomViolation {
  enum class Axiom { Interiority, Transitivity };
  Axiom axiom;
  std::vector<Label> tuple;  // ordered witness (t,x,y,z) or (s,t,x,y,z)

  std::string describe() const {
    std::ostringstream os;
    os << (axiom == Axiom::Interiority ? "interiority" : "transitivity") << " fails on (";
    for (size_t i = 0; i < tuple.size(); ++i) os << (i ? "," : "") << tuple[i];
    os << ")";
    return os.str();
  }
};

namespace detail {

/// Visits k-subsets of {0..n-1} in lexicographic order.
template <typename F>
bool for_each_subset(int n, int k, F&& f) {
  if (k > n || k <= 0) return false;
  std::vector<int> c(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
  for (;;) {
    if (f(c)) return true;
    int i = k - 1;
    while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

/// First axiom violation in deterministic order (lexicographic over sorted
/// subsets, then over role assignments), or nullopt if both axioms hold.
/// Interiority is O(n^4), transitivity O(n^5).
inline std::optional<AxiomViolation> find_axiom_violation(const SignFunction& sf) {
  const int n = sf.size();
  std::optional<AxiomViolation> found;

  // interiority: chi(t,y,z)=chi(x,t,z)=chi(x,y,t)=1  =>  chi(x,y,z)=1
  detail::for_each_subset(n, 4, [&](const std::vector<int>& sub) {
    std::vector<int> p(sub);
    std::sort(p.begin(), p.end());
    do {
      int t = p[0], x = p[1], y = p[2], z = p[3];
      if (sf.sign_by_index(t, y, z) == 1 && sf.sign_by_index(x, t, z) == 1 &&
          sf.sign_by_index(x, y, t) == 1 && sf.sign_by_index(x, y, z) != 1) {
        found = AxiomViolation{AxiomViolation::Axiom::Interiority,
                               {sf.label_at(t), sf.label_at(x), sf.label_at(y), sf.label_at(z)}};
        return true;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  });
  if (found) return found;

  // transitivity: chi(t,s,x)=chi(t,s,y)=chi(t,s,z)=chi(x,y,t)=chi(y,z,t)=1
  //               =>  chi(x,z,t)=1
  detail::for_each_subset(n, 5, [&](const std::vector<int>& sub) {
    std::vector<int> p(sub);
    std::sort(p.begin(), p.end());
    do {
      int s = p[0], t = p[1], x = p[2], y = p[3], z = p[4];
      if (sf.sign_by_index(t, s, x) == 1 && sf.sign_by_index(t, s, y) == 1 &&
          sf.sign_by_index(t, s, z) == 1 && sf.sign_by_index(x, y, t) == 1 &&
          sf.sign_by_index(y, z, t) == 1 && sf.sign_by_index(x, z, t) != 1) {
        found = AxiomViolation{AxiomViolation::Axiom::Transitivity,
                               {sf.label_at(s), sf.label_at(t), sf.label_at(x), sf.label_at(y),
                                sf.label_at(z)}};
        return true;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  });
  return found;
}

}  // namespace chiro
