#pragma once
/**
 * Common vocabulary for the chirotope library: labels, error kinds,
 * arbitrary-precision integers/rationals, and small combinatorial helpers.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chiro {

/// Elements of ground sets are opaque text tokens, compared by exact
/// equality and ordered lexicographically for canonical storage.
using Label = std::string;

/// Arbitrary-precision integer (triangulation counts reach ~10^180).
using Int = boost::multiprecision::cpp_int;

/// Exact rational for planar coordinates. Always kept in reduced form.
using Rat = boost::multiprecision::cpp_rational;

enum class ErrorKind {
  UnknownLabel,
  RepeatedLabel,
  NotExtreme,
  AxiomViolation,
  TooSmall,
  NotBijective,
  ProxyNotExtreme,
  GroundOverlap,
  NotAModule,
  NotQuasiModule,
  LabelCollision,
  SizeCapExceeded,
  TreeViolation,
  UnknownEdge,
  UnknownNode,
  VariableMismatch,
  DivisionRemainder,
  RealizationNotFound,
  ParseError,
  IndexOutOfRange,
  Collinear,
  GenerationBudgetExceeded,
  Precondition,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::RepeatedLabel: return "RepeatedLabel";
    case ErrorKind::NotExtreme: return "NotExtreme";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::ProxyNotExtreme: return "ProxyNotExtreme";
    case ErrorKind::GroundOverlap: return "GroundOverlap";
    case ErrorKind::NotAModule: return "NotAModule";
    case ErrorKind::NotQuasiModule: return "NotQuasiModule";
    case ErrorKind::LabelCollision: return "LabelCollision";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::TreeViolation: return "TreeViolation";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::DivisionRemainder: return "DivisionRemainder";
    case ErrorKind::RealizationNotFound: return "RealizationNotFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Collinear: return "Collinear";
    case ErrorKind::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorKind::Precondition: return "Precondition";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Exact binomial coefficient; 0 outside the Pascal triangle.
inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: product of i consecutive integers is divisible by i!
  }
  return r;
}

inline Int int_pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

/// Self-contained bounded uniform sampler so that seeded runs are
/// reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  long range(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1u) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace chiro
