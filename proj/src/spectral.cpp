#include "coronawalk/spectral.hpp"

namespace coronawalk {

namespace {

std::optional<std::size_t> find_class(const SpectralDecomposition& d, double value, double tol) {
  for (std::size_t r = 0; r < d.classes.size(); ++r)
    if (std::abs(d.classes[r].value - value) < tol) return r;
  return std::nullopt;
}

}  // namespace

bool label_exact(SpectralDecomposition& d, const MatrixX<std::int64_t>& adjacency, double tol) {
  if (adjacency.rows() != d.n) throw std::invalid_argument("label_exact: dimension mismatch");
  bool all = true;
  for (auto& c : d.classes) {
    c.exact.reset();
    const auto deltas = quad_candidates(c.value);
    const auto q = recognize_quad(c.value, deltas, tol);
    if (!q) {
      all = false;
      continue;
    }
    std::size_t expected = c.multiplicity;
    if (!q->is_integer()) {
      const QuadInt conj{q->a, -q->b, q->delta};
      const auto other = find_class(d, conj.value(), 1e3 * tol);
      if (!other) {
        all = false;
        continue;
      }
      expected += d.classes[*other].multiplicity;
    }
    if (exact_nullity(adjacency, *q) == expected) {
      c.exact = *q;
      c.value = q->value();
    } else {
      all = false;
    }
  }
  return all;
}

SpectralDecomposition analyze_graph(const Graph& g, const Tolerances& tols) {
  auto d = decompose(adjacency<double>(g), tols.group);
  label_exact(d, adjacency<std::int64_t>(g));
  return d;
}

}  // namespace coronawalk
