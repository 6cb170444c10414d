#pragma once
/**
 * Sparse polynomials with arbitrary-precision integer coefficients:
 * univariate, bivariate, and the full triangulation polynomial over proxy
 * degree variables x_i and 0/1 edge indicators y_{i,j}.
 */

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chiro/base.hpp"

namespace chiro {

struct UniPoly {
  std::map<int, Int> c;  // exponent -> coefficient, zeros removed

  static UniPoly monomial(int k, Int v = 1) {
    UniPoly p;
    p.add(k, std::move(v));
    return p;
  }

  void add(int k, const Int& v) {
    if (v == 0) return;
    auto it = c.find(k);
    if (it == c.end()) {
      c.emplace(k, v);
    } else {
      it->second += v;
      if (it->second == 0) c.erase(it);
    }
  }

  Int coeff(int k) const {
    auto it = c.find(k);
    return it == c.end() ? Int(0) : it->second;
  }

  int degree() const { return c.empty() ? -1 : c.rbegin()->first; }

  Int at_one() const {
    Int s = 0;
    for (const auto& [k, v] : c) s += v;
    return s;
  }

  /// Value of the derivative at 1: sum of k * c_k.
  Int derivative_at_one() const {
    Int s = 0;
    for (const auto& [k, v] : c) s += k * v;
    return s;
  }

  UniPoly operator+(const UniPoly& o) const {
    UniPoly r = *this;
    for (const auto& [k, v] : o.c) r.add(k, v);
    return r;
  }

  UniPoly operator*(const UniPoly& o) const {
    UniPoly r;
    for (const auto& [k1, v1] : c)
      for (const auto& [k2, v2] : o.c) r.add(k1 + k2, v1 * v2);
    return r;
  }

  bool operator==(const UniPoly& o) const { return c == o.c; }

  std::string str(const std::string& var = "s") const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c) {
      if (!first) os << (v > 0 ? " + " : " - ");
      else if (v < 0) os << "-";
      Int a = abs(v);
      if (a != 1 || k == 0) os << a.str();
      if (k > 0) {
        if (a != 1) os << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
      first = false;
    }
    return os.str();
  }
};

/// Exact polynomial division; throws DivisionRemainder unless the division
/// leaves no remainder.
inline UniPoly divide_exact(const UniPoly& num, const UniPoly& den) {
  if (den.c.empty()) throw Error(ErrorKind::Precondition, "division by zero polynomial");
  std::vector<Int> r(static_cast<size_t>(num.degree() + 1), Int(0));
  for (const auto& [k, v] : num.c) r[static_cast<size_t>(k)] = v;
  const int dd = den.degree();
  const Int& lead = den.c.rbegin()->second;
  UniPoly q;
  for (int k = num.degree(); k >= dd; --k) {
    if (r[static_cast<size_t>(k)] == 0) continue;
    Int f = r[static_cast<size_t>(k)] / lead;
    if (f * lead != r[static_cast<size_t>(k)])
      throw Error(ErrorKind::DivisionRemainder, "leading coefficient does not divide");
    q.add(k - dd, f);
    for (const auto& [dk, dv] : den.c) r[static_cast<size_t>(k - dd + dk)] -= f * dv;
  }
  for (const Int& v : r)
    if (v != 0) throw Error(ErrorKind::DivisionRemainder, "nonzero remainder");
  return q;
}

struct BiPoly {
  std::map<std::pair<int, int>, Int> c;  // (first exp, second exp) -> coeff

  void add(int a, int b, const Int& v) {
    if (v == 0) return;
    auto key = std::make_pair(a, b);
    auto it = c.find(key);
    if (it == c.end()) {
      c.emplace(key, v);
    } else {
      it->second += v;
      if (it->second == 0) c.erase(it);
    }
  }

  Int coeff(int a, int b) const {
    auto it = c.find({a, b});
    return it == c.end() ? Int(0) : it->second;
  }

  /// [first^a] as a polynomial in the second variable.
  UniPoly coeff_of_first(int a) const {
    UniPoly p;
    for (const auto& [key, v] : c)
      if (key.first == a) p.add(key.second, v);
    return p;
  }

  /// Evaluate the second variable at 1.
  UniPoly second_at_one() const {
    UniPoly p;
    for (const auto& [key, v] : c) p.add(key.first, v);
    return p;
  }

  Int at_one() const {
    Int s = 0;
    for (const auto& [key, v] : c) s += v;
    return s;
  }

  bool operator==(const BiPoly& o) const { return c == o.c; }
};

/// Polynomial of Definition-style triangulation statistics: one variable
/// per proxy (its degree) and one 0/1 indicator per proxy pair (the edge).
struct FullTriPoly {
  struct Key {
    std::vector<int> xexp;      // one exponent per proxy, in proxy order
    std::uint64_t ybits = 0;    // bit pair_index(i,j) set iff edge x_i*x_j* present

    auto operator<=>(const Key&) const = default;
  };

  int k = 0;  // number of proxy variables
  std::map<Key, Int> terms;

  static std::uint64_t pair_bit(int i, int j) {
    if (i > j) std::swap(i, j);
    return 1ULL << (j * (j - 1) / 2 + i);
  }

  void add(Key key, const Int& v) {
    if (v == 0) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(std::move(key), v);
    } else {
      it->second += v;
      if (it->second == 0) terms.erase(it);
    }
  }

  /// All variables evaluated at 1.
  Int at_all_ones() const {
    Int s = 0;
    for (const auto& [key, v] : terms) s += v;
    return s;
  }

  /// Only meaningful for k == 0: the constant value.
  Int constant() const {
    if (k != 0) throw Error(ErrorKind::VariableMismatch, "polynomial still has variables");
    return at_all_ones();
  }

  /// Collapse a k == 1 polynomial to a univariate one.
  UniPoly as_univariate() const {
    if (k != 1) throw Error(ErrorKind::VariableMismatch, "not a single-variable polynomial");
    UniPoly p;
    for (const auto& [key, v] : terms) p.add(key.xexp[0], v);
    return p;
  }

  bool operator==(const FullTriPoly& o) const { return k == o.k && terms == o.terms; }
};

}  // namespace chiro
