#pragma once

#include "coronawalk/exact.hpp"
#include "coronawalk/graph.hpp"

#include <Eigen/Dense>
#include <Eigen/Jacobi>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace coronawalk {

/// Largest dimension accepted by the dense engine (projectors are stored densely).
inline constexpr Eigen::Index kMaxDimension = 4096;

struct Tolerances {
  double group = 1e-8;       // eigenvalue grouping, relative to max(1, spectral radius)
  double support = 1e-8;     // ||E e_u|| threshold for eigenvalue supports
  double cospectral = 1e-7;  // entrywise E e_u = +-E e_v
};

template <typename Scalar>
struct EigenSystem {
  VectorX<Scalar> values;   // descending
  MatrixX<Scalar> vectors;  // orthonormal columns
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for real symmetric matrices. Rotations are swept
/// row by row until every off-diagonal magnitude is below `tol` (default
/// 1e-12 * ||M||_F) or 100 sweeps have run.
template <typename Derived>
EigenSystem<typename Derived::Scalar> symmetric_eigen(
    const Eigen::MatrixBase<Derived>& m, std::optional<typename Derived::Scalar> tol = std::nullopt) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw std::invalid_argument("symmetric_eigen: need a nonempty square matrix");
  if (n > kMaxDimension) throw std::invalid_argument("symmetric_eigen: dimension exceeds 4096");
  const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale)
    throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");

  MatrixX<Scalar> a = m;
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
  const Scalar threshold = tol.value_or(Scalar(1e-12) * a.norm());
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  auto off_diagonal_max = [&] {
    Scalar worst = 0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) worst = std::max(worst, abs(a(p, q)));
    return worst;
  };
  for (; sweep < kMaxSweeps && off_diagonal_max() >= threshold; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        a(p, q) = a(q, p) = Scalar(0);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) > a(j, j); });
  EigenSystem<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  out.sweeps = sweep;
  return out;
}

template <typename Scalar>
struct BasicEigenClass {
  Scalar value{};
  MatrixX<Scalar> projector;  // orthogonal projector onto the eigenspace
  std::size_t multiplicity = 0;
  std::optional<QuadInt> exact;
};

/// A = sum_r value_r * E_r, classes sorted by decreasing value.
template <typename Scalar>
struct BasicSpectralDecomposition {
  std::vector<BasicEigenClass<Scalar>> classes;
  Eigen::Index n = 0;

  Eigen::Index dimension() const noexcept { return n; }
  bool fully_exact() const {
    return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.exact.has_value(); });
  }
};

using EigenClass = BasicEigenClass<double>;
using SpectralDecomposition = BasicSpectralDecomposition<double>;

/// Merges classes whose values agree within `tol` (absolute) by summing
/// projectors, then sorts descending. Exact labels survive a merge only when
/// they agree.
template <typename Scalar>
void merge_coincident(BasicSpectralDecomposition<Scalar>& d, Scalar tol) {
  auto& cs = d.classes;
  std::stable_sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) { return x.value > y.value; });
  std::vector<BasicEigenClass<Scalar>> merged;
  for (auto& c : cs) {
    if (!merged.empty() && merged.back().value - c.value < tol) {
      auto& m = merged.back();
      const auto total = static_cast<Scalar>(m.multiplicity + c.multiplicity);
      m.value = (m.value * static_cast<Scalar>(m.multiplicity) + c.value * static_cast<Scalar>(c.multiplicity)) / total;
      m.projector += c.projector;
      m.multiplicity += c.multiplicity;
      if (!m.exact) m.exact = c.exact;
      else if (c.exact && !(*m.exact == *c.exact)) m.exact.reset();
    } else {
      merged.push_back(std::move(c));
    }
  }
  cs = std::move(merged);
}

/// Groups the eigenvalues of a symmetric matrix into classes: adjacent sorted
/// values closer than group_tol * max(1, spectral radius) share a class.
template <typename Derived>
BasicSpectralDecomposition<typename Derived::Scalar> decompose(const Eigen::MatrixBase<Derived>& m,
                                                               double group_tol = 1e-8) {
  using Scalar = typename Derived::Scalar;
  const auto sys = symmetric_eigen(m);
  const Eigen::Index n = m.rows();
  const Scalar radius = sys.values.cwiseAbs().maxCoeff();
  const Scalar tol = static_cast<Scalar>(group_tol) * std::max(Scalar(1), radius);

  BasicSpectralDecomposition<Scalar> d;
  d.n = n;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && sys.values(i - 1) - sys.values(i) < tol) continue;
    const Eigen::Index count = i - start;
    const auto block = sys.vectors.middleCols(start, count);
    BasicEigenClass<Scalar> c;
    c.value = sys.values.segment(start, count).mean();
    MatrixX<Scalar> p = block * block.transpose();
    c.projector = (p + p.transpose()) / Scalar(2);  // bitwise symmetric
    c.multiplicity = static_cast<std::size_t>(count);
    d.classes.push_back(std::move(c));
    start = i;
  }
  return d;
}

/// U(t) = sum_r exp(-i t value_r) E_r.
template <typename Scalar>
MatrixX<std::complex<Scalar>> transition_matrix(const BasicSpectralDecomposition<Scalar>& d, Scalar t) {
  MatrixX<std::complex<Scalar>> u = MatrixX<std::complex<Scalar>>::Zero(d.n, d.n);
  for (const auto& c : d.classes)
    u += std::polar(Scalar(1), -t * c.value) * c.projector.template cast<std::complex<Scalar>>();
  return u;
}

template <typename Scalar>
void check_vertex(const BasicSpectralDecomposition<Scalar>& d, Vertex u) {
  if (static_cast<Eigen::Index>(u) >= d.n) throw std::out_of_range("vertex " + std::to_string(u) + " out of range");
}

/// U(t)_{u,v}.
template <typename Scalar>
std::complex<Scalar> transition_entry(const BasicSpectralDecomposition<Scalar>& d, Vertex u, Vertex v, Scalar t) {
  check_vertex(d, u);
  check_vertex(d, v);
  std::complex<Scalar> sum{0, 0};
  const auto iu = static_cast<Eigen::Index>(u), iv = static_cast<Eigen::Index>(v);
  for (const auto& c : d.classes) sum += std::polar(Scalar(1), -t * c.value) * c.projector(iu, iv);
  return sum;
}

/// |U(t)_{u,v}|.
template <typename Scalar>
Scalar fidelity(const BasicSpectralDecomposition<Scalar>& d, Vertex u, Vertex v, Scalar t) {
  return std::abs(transition_entry(d, u, v, t));
}

/// Indices (into d.classes) of the eigenvalue support of u.
struct SupportSet {
  std::vector<std::size_t> classes;
  friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

template <typename Scalar>
SupportSet eigenvalue_support(const BasicSpectralDecomposition<Scalar>& d, Vertex u, double tol = 1e-8) {
  check_vertex(d, u);
  SupportSet s;
  for (std::size_t r = 0; r < d.classes.size(); ++r)
    if (d.classes[r].projector.col(static_cast<Eigen::Index>(u)).norm() > static_cast<Scalar>(tol))
      s.classes.push_back(r);
  return s;
}

struct ClassSign {
  std::size_t class_index = 0;
  int sign = 1;
  friend bool operator==(const ClassSign&, const ClassSign&) = default;
};

/// Sign per class with E e_u = sign * E e_v (entrywise within tol), or empty
/// if some class fails both signs. Classes where both columns vanish are
/// skipped. "+" is tested first.
template <typename Scalar>
std::optional<std::vector<ClassSign>> strong_cospectral(const BasicSpectralDecomposition<Scalar>& d, Vertex u,
                                                        Vertex v, double tol = 1e-7) {
  check_vertex(d, u);
  check_vertex(d, v);
  if (u == v) throw std::invalid_argument("strong_cospectral: vertices must differ");
  const auto t = static_cast<Scalar>(tol);
  std::vector<ClassSign> signs;
  for (std::size_t r = 0; r < d.classes.size(); ++r) {
    const auto x = d.classes[r].projector.col(static_cast<Eigen::Index>(u));
    const auto y = d.classes[r].projector.col(static_cast<Eigen::Index>(v));
    if (x.cwiseAbs().maxCoeff() < t && y.cwiseAbs().maxCoeff() < t) continue;
    if ((x - y).cwiseAbs().maxCoeff() < t) signs.push_back({r, +1});
    else if ((x + y).cwiseAbs().maxCoeff() < t) signs.push_back({r, -1});
    else return std::nullopt;
  }
  return signs;
}

/// Attaches verified exact labels (integers or quadratic integers) to the
/// classes of a decomposition of `adjacency`. A label is kept only if exact
/// elimination confirms the multiplicity. Returns true if every class got one.
bool label_exact(SpectralDecomposition& d, const MatrixX<std::int64_t>& adjacency, double tol = 1e-9);

/// decompose(adjacency(g)) followed by label_exact.
SpectralDecomposition analyze_graph(const Graph& g, const Tolerances& tols = {});

}  // namespace coronawalk
