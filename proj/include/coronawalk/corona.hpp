#pragma once

#include "coronawalk/exact.hpp"
#include "coronawalk/graph.hpp"
#include "coronawalk/spectral.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace coronawalk {

/// Kronecker product a (x) b.
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  MatrixX<typename DerivedA::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Factors of G * H. k is H's degree when H is regular.
struct CoronaSpec {
  Graph G;
  Graph H;
  std::optional<std::size_t> k;

  std::size_t n() const noexcept { return G.order(); }
  std::size_t m() const noexcept { return H.order(); }
  std::size_t order() const noexcept { return n() * (m() + 1); }
  /// Throws std::invalid_argument when H is not regular.
  std::size_t degree() const;
};

CoronaSpec make_corona_spec(Graph G, Graph H);

// Flat index convention: (v, 0) -> v, (v, w_j) -> n + j*n + v.
inline Vertex corona_index([[maybe_unused]] std::size_t n, Vertex v) { return v; }
inline Vertex corona_index(std::size_t n, Vertex v, Vertex w) { return n + w * n + v; }
CoronaLabel corona_label(std::size_t n, Vertex index);

/// Neighborhood corona: one copy of G, n copies of H, every vertex of the
/// j-th copy joined to the neighbours of v_j in G. Result carries labels.
Graph corona_adjacency(const Graph& G, const Graph& H);

/// Eigenvalue pair lambda^+- = (lambda + k +- Lambda) / 2 generated by one
/// eigenvalue lambda of G, with Lambda = sqrt((lambda - k)^2 + 4 m lambda^2).
struct CoronaEigenPair {
  double lambda = 0;
  double plus = 0;
  double minus = 0;
  double Lambda = 0;
  std::optional<QuadInt> lambda_exact;
  std::optional<QuadInt> plus_exact;
  std::optional<QuadInt> minus_exact;
  std::optional<SquareFreeSplit> discriminant_split;  // only for integral lambda, Lambda > 0
};

CoronaEigenPair corona_eigen_pair(double lambda, std::optional<QuadInt> lambda_exact, std::size_t k,
                                  std::size_t m);

/// Closed-form spectral decomposition of G * H from those of G and H (H
/// connected and k-regular). Coincident eigenvalues are merged into one class.
SpectralDecomposition corona_spectral_closed_form(const CoronaSpec& spec, const SpectralDecomposition& g_decomp,
                                                  const SpectralDecomposition& h_decomp,
                                                  double group_tol = 1e-8);

/// Precomputed terms of the base-vertex entry formulas for one pair of
/// G-vertices; evaluation costs O(#classes of G) per time.
class BaseEntryKernel {
 public:
  BaseEntryKernel(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex v, Vertex v2);

  /// <(v,0)| U(t) |(v2,0)>
  std::complex<double> base_base(double t) const;
  /// <(v2,0)| U(t) |(v,w)>, the same for every w.
  std::complex<double> base_copy(double t) const;
  /// sum_lambda |<v|E_lambda|v2>|
  double static_bound() const;

 private:
  struct Term {
    double lambda;
    double Lambda;
    double weight;  // <v|E_lambda|v2>
  };
  std::vector<Term> terms_;
  double k_;
};

std::complex<double> corona_entry_base_base(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex v,
                                            Vertex v2, double t);

std::complex<double> corona_entry_base_copy(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex v2,
                                            Vertex v, Vertex w, double t);

/// A support entry, exact when it could be verified as a quadratic integer.
struct SupportValue {
  double value = 0;
  std::optional<QuadInt> exact;
};

/// Eigenvalue support of (v, 0) in G * H from the exact support of v in G,
/// as the set {lambda^+, lambda^-} over lambda in the support, deduplicated.
/// For lambda = 0 this lists k as well, although the k-class projector
/// vanishes on (v, 0) when k > 0.
std::vector<SupportValue> corona_support_base_vertex(std::span<const QuadInt> phi_v, std::size_t k, std::size_t m);

}  // namespace coronawalk
