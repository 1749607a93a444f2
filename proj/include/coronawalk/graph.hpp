#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coronawalk {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Address of a vertex inside a neighborhood corona G * H: either the base
/// vertex (v, 0) or the copy vertex (v, w) of H attached to v.
struct CoronaLabel {
  Vertex base = 0;
  std::optional<Vertex> copy;  // H-vertex index; empty for (v, 0)

  friend bool operator==(const CoronaLabel&, const CoronaLabel&) = default;
};

/// Undirected simple graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  /// Throws std::invalid_argument on n == 0, self-loops, out-of-range
  /// endpoints or duplicate edges. Edges are stored normalized (u < v) and
  /// sorted.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<CoronaLabel> labels = {});

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Corona addresses, present only for graphs assembled by corona_adjacency.
  const std::vector<CoronaLabel>& labels() const noexcept { return labels_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<CoronaLabel> labels_;
  std::vector<std::vector<Vertex>> adj_;
};

/// Symmetric 0/1 adjacency matrix with zero diagonal.
template <typename Scalar = int>
MatrixX<Scalar> adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  MatrixX<Scalar> a = MatrixX<Scalar>::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = Scalar(1);
    a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = Scalar(1);
  }
  return a;
}

/// Common degree if every vertex has the same degree.
std::optional<std::size_t> is_regular(const Graph& g);

bool is_connected(const Graph& g);

/// Marks unreachable pairs in distance_matrix.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// All-pairs BFS distances; kUnreachable for disconnected pairs.
MatrixX<int> distance_matrix(const Graph& g);

// Named families.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Complete graph on 2n vertices minus the matching {2i, 2i+1}.
Graph cocktail_party_graph(std::size_t n);
Graph empty_graph(std::size_t n);
/// K_{1,n}: centre 0, leaves 1..n.
Graph star_graph(std::size_t leaves);

/// Parses the edge-list format: first meaningful line is n, then "u v"
/// lines with u < v. '#' starts a comment. Throws std::runtime_error with a
/// line number on malformed input.
Graph parse_edge_list(const std::string& text);
Graph read_edge_list(const std::string& path);
std::string format_edge_list(const Graph& g);

}  // namespace coronawalk
