#pragma once

#include "coronawalk/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coronawalk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// N = s^2 * c with c square-free.
struct SquareFreeSplit {
  std::uint64_t s = 1;
  std::uint64_t c = 1;
  friend bool operator==(const SquareFreeSplit&, const SquareFreeSplit&) = default;
};

/// Trial division up to sqrt(N). Throws std::invalid_argument for N == 0.
SquareFreeSplit square_free_part(std::uint64_t n);

bool is_square_free(std::uint64_t n);

/// Exact integer square root if n is a perfect square.
std::optional<std::uint64_t> exact_sqrt(std::uint64_t n);

/// Quadratic integer (a + b*sqrt(delta)) / 2 with delta square-free.
/// Canonical form: delta == 1 implies b == 0 and a even, so rational integers
/// have exactly one representation.
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t delta = 1;

  /// Validates and canonicalizes; throws std::invalid_argument if delta is not
  /// a positive square-free integer or the value is a non-integral rational.
  static QuadInt make(std::int64_t a, std::int64_t b, std::int64_t delta);
  static QuadInt integer(std::int64_t n) { return {2 * n, 0, 1}; }

  bool is_integer() const noexcept { return b == 0; }
  /// Requires is_integer().
  std::int64_t integer_value() const { return a / 2; }
  double value() const noexcept;

  /// "2", "sqrt(2)", "(3-sqrt(13))/2", ...
  std::string to_string() const;

  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

/// p-adic valuation alpha with m = p^alpha * r/s, p dividing neither r nor s.
/// Throws std::invalid_argument if m == 0 or p is not prime.
int p_adic_valuation(const Rational& m, std::int64_t p);

/// |m|_p = p^(-alpha).
Rational p_adic_norm(const Rational& m, std::int64_t p);

/// gcd of the list; gcd(0, x) = x. Throws std::invalid_argument if every
/// value is zero (or the list is empty).
std::int64_t gcd_list(std::span<const std::int64_t> values);

/// Rank over Q by fraction-free (Bareiss) elimination in big integers.
std::size_t exact_rank(const MatrixX<std::int64_t>& m);

/// dim ker(A - q I) when q is an integer, or dim ker(p(A)) where p is q's
/// minimal polynomial over Q otherwise (which counts q and its conjugate).
std::size_t exact_nullity(const MatrixX<std::int64_t>& a, const QuadInt& q);

/// Fits x = (a + b sqrt(delta)) / 2 to within tol, trying the candidates in
/// order. Window |a|, |b| <= max(4 ceil(|x|) + 8, 32); within one delta the smallest
/// |b| wins. The caller is responsible for exact verification.
std::optional<QuadInt> recognize_quad(double x, std::span<const std::int64_t> delta_candidates,
                                      double tol);

/// Square-free parts of round((2x - a)^2) over the search window, ascending,
/// always including 1. Feeding these to recognize_quad finds any quadratic
/// integer near x.
std::vector<std::int64_t> quad_candidates(double x, double tol = 1e-6);

}  // namespace coronawalk
