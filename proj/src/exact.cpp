#include "coronawalk/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coronawalk {

__extension__ using u128 = unsigned __int128;

SquareFreeSplit square_free_part(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("square_free_part: N must be positive");
  SquareFreeSplit out;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; static_cast<u128>(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) out.s *= p;
    if (e % 2 == 1) out.c *= p;
  }
  out.c *= rest;  // leftover prime (or 1)
  return out;
}

bool is_square_free(std::uint64_t n) { return n != 0 && square_free_part(n).s == 1; }

std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  if (static_cast<u128>(r) * r == n) return r;
  return std::nullopt;
}

QuadInt QuadInt::make(std::int64_t a, std::int64_t b, std::int64_t delta) {
  if (delta < 1 || !is_square_free(static_cast<std::uint64_t>(delta)))
    throw std::invalid_argument("QuadInt: delta must be a positive square-free integer");
  if (delta == 1) {
    a += b;
    b = 0;
  }
  if (b == 0) {
    if (a % 2 != 0) throw std::invalid_argument("QuadInt: rational value is not an integer");
    delta = 1;
  }
  return {a, b, delta};
}

double QuadInt::value() const noexcept {
  return (static_cast<double>(a) + static_cast<double>(b) * std::sqrt(static_cast<double>(delta))) /
         2.0;
}

std::string QuadInt::to_string() const {
  if (b == 0) return std::to_string(a / 2);
  std::ostringstream out;
  const std::string root = "sqrt(" + std::to_string(delta) + ")";
  if (a % 2 == 0 && b % 2 == 0) {
    // (a + b r)/2 = a/2 + (b/2) r
    const auto ah = a / 2, bh = b / 2;
    if (ah != 0) out << ah << (bh < 0 ? "-" : "+");
    else if (bh < 0) out << "-";
    if (std::abs(bh) != 1) out << std::abs(bh) << "*";
    out << root;
    return out.str();
  }
  out << "(";
  if (a != 0) out << a << (b < 0 ? "-" : "+");
  else if (b < 0) out << "-";
  if (std::abs(b) != 1) out << std::abs(b) << "*";
  out << root << ")/2";
  return out.str();
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int valuation(BigInt x, std::int64_t p) {
  int e = 0;
  x = abs(x);
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

}  // namespace

int p_adic_valuation(const Rational& m, std::int64_t p) {
  if (m == 0) throw std::invalid_argument("p-adic norm of zero is not defined here");
  if (!is_prime(p)) throw std::invalid_argument("p-adic norm needs a prime p");
  return valuation(numerator(m), p) - valuation(denominator(m), p);
}

Rational p_adic_norm(const Rational& m, std::int64_t p) {
  const int alpha = p_adic_valuation(m, p);
  BigInt pow = 1;
  for (int i = 0; i < std::abs(alpha); ++i) pow *= p;
  return alpha >= 0 ? Rational(BigInt(1), pow) : Rational(pow);
}

std::int64_t gcd_list(std::span<const std::int64_t> values) {
  std::int64_t g = 0;
  for (auto v : values) g = std::gcd(g, v);
  if (g == 0) throw std::invalid_argument("gcd_list: needs at least one nonzero value");
  return g;
}

std::size_t exact_rank(const MatrixX<std::int64_t>& m) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  std::vector<std::vector<BigInt>> w(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      w[i][j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t k = 0; k < cols && rank < rows; ++k) {
    std::size_t pivot = rank;
    while (pivot < rows && w[pivot][k] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(w[pivot], w[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        BigInt num = w[rank][k] * w[i][j] - w[i][k] * w[rank][j];
        // Bareiss: every intermediate is a minor, so this division is exact.
        w[i][j] = num / prev;
      }
      w[i][k] = 0;
    }
    prev = w[rank][k];
    ++rank;
  }
  return rank;
}

std::size_t exact_nullity(const MatrixX<std::int64_t>& a, const QuadInt& q) {
  const auto n = a.rows();
  const auto id = MatrixX<std::int64_t>::Identity(n, n);
  MatrixX<std::int64_t> shifted;
  if (q.is_integer()) {
    shifted = a - q.integer_value() * id;
  } else {
    // 4 p(A) = 4A^2 - 4aA + (a^2 - b^2 delta) I
    const std::int64_t c0 = q.a * q.a - q.b * q.b * q.delta;
    shifted = 4 * (a * a) - 4 * q.a * a + c0 * id;
  }
  return static_cast<std::size_t>(n) - exact_rank(shifted);
}

namespace {

// Small |x| can still come from large near-cancelling coefficients, e.g.
// (-20 + 12 sqrt(2))/2 ~ -1.5, so the bound never drops below 32.
std::int64_t search_window(double x) {
  return std::max<std::int64_t>(static_cast<std::int64_t>(4 * std::ceil(std::abs(x)) + 8), 32);
}

}  // namespace

std::optional<QuadInt> recognize_quad(double x, std::span<const std::int64_t> delta_candidates,
                                      double tol) {
  if (!(tol > 0)) throw std::invalid_argument("recognize_quad: tol must be positive");
  if (!std::isfinite(x)) return std::nullopt;
  const auto window = search_window(x);
  for (const std::int64_t delta : delta_candidates) {
    if (delta < 1 || !is_square_free(static_cast<std::uint64_t>(delta))) continue;
    const double root = std::sqrt(static_cast<double>(delta));
    if (delta == 1) {
      const auto a = static_cast<std::int64_t>(std::llround(2 * x));
      if (a % 2 == 0 && std::abs(a) <= window && std::abs(x - a / 2.0) < tol)
        return QuadInt{a, 0, 1};
      continue;
    }
    for (std::int64_t mag = 1; mag <= window; ++mag) {
      for (const std::int64_t b : {mag, -mag}) {
        const auto a = static_cast<std::int64_t>(std::llround(2 * x - static_cast<double>(b) * root));
        if (std::abs(a) > window) continue;
        if (std::abs(x - (static_cast<double>(a) + static_cast<double>(b) * root) / 2) < tol)
          return QuadInt{a, b, delta};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> quad_candidates(double x, double tol) {
  std::set<std::int64_t> found{1};
  if (!std::isfinite(x)) return {1};
  const auto window = search_window(x);
  for (std::int64_t a = -window; a <= window; ++a) {
    const double y = (2 * x - static_cast<double>(a)) * (2 * x - static_cast<double>(a));
    const double r = std::round(y);
    if (r < 1 || std::abs(y - r) > tol * std::max(1.0, y)) continue;
    found.insert(static_cast<std::int64_t>(square_free_part(static_cast<std::uint64_t>(r)).c));
  }
  return {found.begin(), found.end()};
}

}  // namespace coronawalk
