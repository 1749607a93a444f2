#include "coronawalk/corona.hpp"

#include "coronawalk/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace coronawalk {

std::size_t CoronaSpec::degree() const {
  if (!k) throw std::invalid_argument("H is not regular; closed forms need a k-regular H");
  return *k;
}

CoronaSpec make_corona_spec(Graph G, Graph H) {
  auto k = is_regular(H);
  return CoronaSpec{std::move(G), std::move(H), k};
}

CoronaLabel corona_label(std::size_t n, Vertex index) {
  if (index < n) return {index, std::nullopt};
  return {(index - n) % n, (index - n) / n};
}

Graph corona_adjacency(const Graph& G, const Graph& H) {
  const std::size_t n = G.order(), m = H.order();
  std::vector<Edge> edges(G.edges());
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& [w1, w2] : H.edges()) edges.emplace_back(corona_index(n, v, w1), corona_index(n, v, w2));
    for (Vertex w = 0; w < m; ++w)
      for (Vertex nb : G.neighbors(v)) edges.emplace_back(nb, corona_index(n, v, w));
  }
  std::vector<CoronaLabel> labels;
  labels.reserve(n * (m + 1));
  for (Vertex i = 0; i < n * (m + 1); ++i) labels.push_back(corona_label(n, i));
  return Graph(n * (m + 1), std::move(edges), std::move(labels));
}

namespace {

__extension__ using i128 = __int128;

// Checks that q = (qa + qb sqrt(d))/2 is a root of
// x^2 - (lambda + k) x + (k lambda - m lambda^2) with lambda = (a + b sqrt(d))/2.
bool is_pair_root(i128 qa, i128 qb, i128 a, i128 b, i128 d, i128 k, i128 m) {
  const i128 rational = qa * qa + qb * qb * d - (a + 2 * k) * qa - b * qb * d + 2 * k * a - m * (a * a + b * b * d);
  const i128 irrational = 2 * qa * qb - (a + 2 * k) * qb - b * qa + 2 * k * b - 2 * m * a * b;
  return rational == 0 && irrational == 0;
}

// Embeds q into Q(sqrt(d)) as (A, B) with q = (A + B sqrt(d))/2.
std::optional<std::pair<i128, i128>> embed(const QuadInt& q, std::int64_t d) {
  if (q.is_integer()) return std::pair<i128, i128>{q.a, 0};
  if (q.delta != d) return std::nullopt;
  return std::pair<i128, i128>{q.a, q.b};
}

std::optional<QuadInt> verified_root(const std::optional<QuadInt>& candidate, const QuadInt& lambda, std::int64_t field,
                                     std::size_t k, std::size_t m) {
  if (!candidate) return std::nullopt;
  const auto q = embed(*candidate, field);
  const auto l = embed(lambda, field);
  if (!q || !l) return std::nullopt;
  if (!is_pair_root(q->first, q->second, l->first, l->second, field, static_cast<i128>(k), static_cast<i128>(m)))
    return std::nullopt;
  return candidate;
}

std::optional<QuadInt> try_make(std::int64_t a, std::int64_t b, std::int64_t delta) {
  try {
    return QuadInt::make(a, b, delta);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

CoronaEigenPair corona_eigen_pair(double lambda, std::optional<QuadInt> lambda_exact, std::size_t k, std::size_t m) {
  CoronaEigenPair p;
  if (lambda_exact) lambda = lambda_exact->value();
  const double kd = static_cast<double>(k), md = static_cast<double>(m);
  p.lambda = lambda;
  p.lambda_exact = lambda_exact;
  p.Lambda = std::sqrt((lambda - kd) * (lambda - kd) + 4 * md * lambda * lambda);
  p.plus = (lambda + kd + p.Lambda) / 2;
  p.minus = (lambda + kd - p.Lambda) / 2;
  if (!lambda_exact) return p;

  const QuadInt& le = *lambda_exact;
  if (le.is_integer()) {
    const std::int64_t L = le.integer_value();
    const auto ki = static_cast<std::int64_t>(k), mi = static_cast<std::int64_t>(m);
    const auto disc = static_cast<std::uint64_t>((L - ki) * (L - ki) + 4 * mi * L * L);
    if (disc == 0) {
      p.plus_exact = p.minus_exact = QuadInt::integer(0);
      return p;
    }
    const auto split = square_free_part(disc);
    p.discriminant_split = split;
    const auto s = static_cast<std::int64_t>(split.s), c = static_cast<std::int64_t>(split.c);
    p.plus_exact = verified_root(try_make(L + ki + (c == 1 ? s : 0), c == 1 ? 0 : s, c), le, c, k, m);
    p.minus_exact = verified_root(try_make(L + ki - (c == 1 ? s : 0), c == 1 ? 0 : -s, c), le, c, k, m);
  } else {
    const std::int64_t candidates[] = {1, le.delta};
    p.plus_exact = verified_root(recognize_quad(p.plus, candidates, 1e-9), le, le.delta, k, m);
    p.minus_exact = verified_root(recognize_quad(p.minus, candidates, 1e-9), le, le.delta, k, m);
  }
  return p;
}

namespace {

double zero_tolerance(const SpectralDecomposition& d, double group_tol) {
  double radius = 0;
  for (const auto& c : d.classes) radius = std::max(radius, std::abs(c.value));
  return group_tol * std::max(1.0, radius);
}

bool is_zero_class(const EigenClass& c, double tol) {
  if (c.exact) return c.exact->is_integer() && c.exact->a == 0;
  return std::abs(c.value) < tol;
}

}  // namespace

SpectralDecomposition corona_spectral_closed_form(const CoronaSpec& spec, const SpectralDecomposition& g_decomp,
                                                  const SpectralDecomposition& h_decomp, double group_tol) {
  const std::size_t k = spec.degree();
  const auto n = static_cast<Eigen::Index>(spec.n()), m = static_cast<Eigen::Index>(spec.m());
  if (g_decomp.n != n || h_decomp.n != m) throw std::invalid_argument("decomposition dimensions do not match the spec");
  if (!is_connected(spec.H)) throw std::invalid_argument("closed-form spectrum needs a connected H");
  if (!is_connected(spec.G)) diag::warn("G is disconnected; closed-form decomposition hypotheses are not met");

  const double kd = static_cast<double>(k), md = static_cast<double>(m);
  SpectralDecomposition out;
  out.n = n * (m + 1);

  const double h_tol = zero_tolerance(h_decomp, group_tol);
  bool saw_k = false;
  const MatrixX<double> id_n = MatrixX<double>::Identity(n, n);
  for (const auto& hc : h_decomp.classes) {
    if (std::abs(hc.value - kd) < h_tol) {
      if (hc.multiplicity != 1) throw std::invalid_argument("closed-form spectrum needs a connected H");
      saw_k = true;
      continue;
    }
    MatrixX<double> block = MatrixX<double>::Zero(m + 1, m + 1);
    block.bottomRightCorner(m, m) = hc.projector;
    out.classes.push_back({hc.value, kron(block, id_n), hc.multiplicity * spec.n(), hc.exact});
  }
  if (!saw_k) throw std::invalid_argument("H decomposition has no class at its degree k");

  const double g_tol = zero_tolerance(g_decomp, group_tol);
  for (const auto& gc : g_decomp.classes) {
    if (is_zero_class(gc, g_tol)) {
      MatrixX<double> ck = MatrixX<double>::Zero(m + 1, m + 1);
      ck.bottomRightCorner(m, m).setConstant(1.0 / md);
      MatrixX<double> c0 = MatrixX<double>::Zero(m + 1, m + 1);
      c0(0, 0) = 1;
      out.classes.push_back({kd, kron(ck, gc.projector), gc.multiplicity, QuadInt::integer(static_cast<std::int64_t>(k))});
      out.classes.push_back({0.0, kron(c0, gc.projector), gc.multiplicity, QuadInt::integer(0)});
      continue;
    }
    const auto pair = corona_eigen_pair(gc.value, gc.exact, k, spec.m());
    const double lam = pair.lambda;
    for (const auto& [mu, exact] : {std::pair{pair.plus, pair.plus_exact}, std::pair{pair.minus, pair.minus_exact}}) {
      const double shift = mu - kd;
      const double denom = shift * shift + md * lam * lam;
      MatrixX<double> coeff(m + 1, m + 1);
      coeff(0, 0) = shift * shift;
      coeff.row(0).tail(m).setConstant(lam * shift);
      coeff.col(0).tail(m).setConstant(lam * shift);
      coeff.bottomRightCorner(m, m).setConstant(lam * lam);
      out.classes.push_back({mu, kron(coeff / denom, gc.projector), gc.multiplicity, exact});
    }
  }

  double radius = 0;
  for (const auto& c : out.classes) radius = std::max(radius, std::abs(c.value));
  merge_coincident(out, group_tol * std::max(1.0, radius));
  return out;
}

BaseEntryKernel::BaseEntryKernel(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex v, Vertex v2)
    : k_(static_cast<double>(spec.degree())) {
  if (g_decomp.n != static_cast<Eigen::Index>(spec.n())) throw std::invalid_argument("G decomposition dimension mismatch");
  check_vertex(g_decomp, v);
  check_vertex(g_decomp, v2);
  const double md = static_cast<double>(spec.m());
  const double zero_tol = zero_tolerance(g_decomp, 1e-8);
  for (const auto& c : g_decomp.classes) {
    const double lam = is_zero_class(c, zero_tol) ? 0.0 : (c.exact ? c.exact->value() : c.value);
    const double Lambda = std::sqrt((lam - k_) * (lam - k_) + 4 * md * lam * lam);
    terms_.push_back({lam, Lambda, c.projector(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v2))});
  }
}

std::complex<double> BaseEntryKernel::base_base(double t) const {
  using namespace std::complex_literals;
  std::complex<double> sum{0, 0};
  for (const auto& [lam, Lambda, weight] : terms_) {
    // Lambda == 0 only when lambda = k = 0; the bracket tends to 1 there.
    const std::complex<double> bracket =
        Lambda == 0 ? std::complex<double>{1, 0}
                    : std::cos(t * Lambda / 2) - ((lam - k_) / Lambda) * 1i * std::sin(t * Lambda / 2);
    sum += std::polar(1.0, -t * (lam + k_) / 2) * weight * bracket;
  }
  return sum;
}

std::complex<double> BaseEntryKernel::base_copy(double t) const {
  using namespace std::complex_literals;
  std::complex<double> sum{0, 0};
  for (const auto& [lam, Lambda, weight] : terms_) {
    if (lam == 0 || Lambda == 0) continue;
    sum += std::polar(1.0, -t * (lam + k_) / 2) * weight * (-2 * lam / Lambda) * 1i * std::sin(t * Lambda / 2);
  }
  return sum;
}

double BaseEntryKernel::static_bound() const {
  double s = 0;
  for (const auto& term : terms_) s += std::abs(term.weight);
  return s;
}

std::complex<double> corona_entry_base_base(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex v,
                                            Vertex v2, double t) {
  return BaseEntryKernel(spec, g_decomp, v, v2).base_base(t);
}

std::complex<double> corona_entry_base_copy(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex v2,
                                            Vertex v, Vertex w, double t) {
  if (w >= spec.m()) throw std::out_of_range("H vertex out of range");
  return BaseEntryKernel(spec, g_decomp, v, v2).base_copy(t);
}

std::vector<SupportValue> corona_support_base_vertex(std::span<const QuadInt> phi_v, std::size_t k, std::size_t m) {
  std::vector<SupportValue> out;
  auto push = [&](double value, const std::optional<QuadInt>& exact) {
    for (const auto& s : out)
      if (exact && s.exact && *s.exact == *exact) return;
    out.push_back({exact ? exact->value() : value, exact});
  };
  for (const QuadInt& lam : phi_v) {
    const auto p = corona_eigen_pair(lam.value(), lam, k, m);
    push(p.plus, p.plus_exact);
    push(p.minus, p.minus_exact);
  }
  return out;
}

}  // namespace coronawalk
