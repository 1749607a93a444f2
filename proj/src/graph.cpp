#include "coronawalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace coronawalk {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<CoronaLabel> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)), adj_(n) {
  if (n_ == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (!labels_.empty() && labels_.size() != n_)
    throw std::invalid_argument("label count does not match vertex count");
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->first) + ", " +
                                std::to_string(dup->second) + ")");
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

std::optional<std::size_t> is_regular(const Graph& g) {
  const std::size_t k = g.degree(0);
  for (Vertex v = 1; v < g.order(); ++v)
    if (g.degree(v) != k) return std::nullopt;
  return k;
}

namespace {

std::vector<int> bfs(const Graph& g, Vertex src) {
  std::vector<int> dist(g.order(), kUnreachable);
  std::queue<Vertex> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

}  // namespace

bool is_connected(const Graph& g) {
  const auto d = bfs(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x == kUnreachable; });
}

MatrixX<int> distance_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  MatrixX<int> d(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto row = bfs(g, static_cast<Vertex>(s));
    for (Eigen::Index t = 0; t < n; ++t) d(s, t) = row[static_cast<std::size_t>(t)];
  }
  return d;
}

namespace {

void require_size(std::size_t n, const char* family) {
  if (n == 0) throw std::invalid_argument(std::string(family) + " size must be at least 1");
}

}  // namespace

Graph path_graph(std::size_t n) {
  require_size(n, "path");
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle size must be at least 3");
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph complete_graph(std::size_t n) {
  require_size(n, "complete");
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph cocktail_party_graph(std::size_t n) {
  require_size(n, "cocktail");
  std::vector<Edge> e;
  for (Vertex i = 0; i < 2 * n; ++i)
    for (Vertex j = i + 1; j < 2 * n; ++j)
      if (j != (i ^ 1U)) e.emplace_back(i, j);
  return Graph(2 * n, std::move(e));
}

Graph empty_graph(std::size_t n) {
  require_size(n, "empty");
  return Graph(n, {});
}

Graph star_graph(std::size_t leaves) {
  require_size(leaves, "star");
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, std::move(e));
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0;
    if (!(ls >> a)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) fail("expected an integer");
      continue;
    }
    if (!n) {
      if (a <= 0) fail("vertex count must be positive");
      n = static_cast<std::size_t>(a);
    } else {
      long long b = 0;
      if (!(ls >> b)) fail("expected two vertex indices");
      if (a < 0 || b < 0 || static_cast<std::size_t>(b) >= *n) fail("vertex index out of range");
      if (a >= b) fail("edges must be written as \"u v\" with u < v");
      edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    std::string rest;
    if (ls >> rest) fail("trailing characters");
  }
  if (!n) throw std::runtime_error("edge list is missing the vertex count");
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
    throw std::runtime_error("edge list: duplicate edge " + std::to_string(dup->first) + " " +
                             std::to_string(dup->second));
  return Graph(*n, std::move(edges));
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read edge list file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace coronawalk
