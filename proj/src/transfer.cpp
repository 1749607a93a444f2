#include "coronawalk/transfer.hpp"

#include "coronawalk/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace coronawalk {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<SupportValue> support_values(const SpectralDecomposition& d, Vertex u, double tol) {
  std::vector<SupportValue> out;
  for (auto r : eigenvalue_support(d, u, tol).classes) out.push_back({d.classes[r].value, d.classes[r].exact});
  return out;
}

}  // namespace

PeriodicityVerdict periodicity_test(std::span<const SupportValue> support) {
  if (support.empty()) throw std::invalid_argument("periodicity_test: empty support");
  PeriodicityVerdict out;
  for (const auto& s : support)
    if (!s.exact) return out;  // inconclusive

  std::set<std::int64_t> deltas;
  for (const auto& s : support)
    if (!s.exact->is_integer()) deltas.insert(s.exact->delta);

  out.periodic = Periodic::no;
  if (deltas.size() > 1) return out;

  std::vector<std::int64_t> b;
  if (deltas.empty()) {
    out.kind = PeriodicityCase::all_integer;
    for (const auto& s : support) b.push_back(s.exact->a);
  } else {
    out.kind = PeriodicityCase::quadratic;
    out.delta = *deltas.begin();
    std::optional<std::int64_t> a;
    for (const auto& s : support) {
      if (s.exact->is_integer()) continue;
      if (a && *a != s.exact->a) {
        out.kind = PeriodicityCase::none;
        return out;
      }
      a = s.exact->a;
    }
    out.a = *a;
    for (const auto& s : support) {
      if (s.exact->is_integer() && s.exact->a != out.a) {
        out.kind = PeriodicityCase::none;
        return out;
      }
      b.push_back(s.exact->is_integer() ? 0 : s.exact->b);
    }
  }

  out.periodic = Periodic::yes;
  std::int64_t g2 = 0;
  for (auto br : b) g2 = std::gcd(g2, b.front() - br);
  out.witness_period = g2 == 0 ? 2 * kPi : 4 * kPi / (static_cast<double>(g2) * std::sqrt(static_cast<double>(out.delta)));
  return out;
}

PeriodicityVerdict vertex_periodicity(const SpectralDecomposition& d, Vertex u, const Tolerances& tols) {
  auto verdict = periodicity_test(support_values(d, u, tols.support));
  if (verdict.witness_period) verdict.confirmed_fidelity = fidelity(d, u, u, *verdict.witness_period);
  return verdict;
}

CoronaBasePeriodicity corona_base_periodicity(const Graph& G, const Graph& H, Vertex v, const Tolerances& tols) {
  const auto k = is_regular(H);
  if (!k) throw std::invalid_argument("H is not regular");
  if (G.order() < 2) throw std::invalid_argument("G must have at least two vertices");
  if (v >= G.order()) throw std::out_of_range("base vertex out of range");
  if (!is_connected(G)) diag::warn("G is disconnected; periodicity conditions assume a connected G");

  const std::uint64_t m = H.order();
  CoronaBasePeriodicity out;
  auto& c = out.conditions;
  c.k_is_zero = *k == 0;
  const auto root = exact_sqrt(1 + 4 * m);
  c.one_plus_4m_odd_square = root && *root > 1 && *root % 2 == 1;

  const auto gd = analyze_graph(G, tols);
  const auto phi = support_values(gd, v, tols.support);
  const bool exact = std::all_of(phi.begin(), phi.end(), [](const auto& s) { return s.exact.has_value(); });
  if (exact) {
    const bool all_integer = std::all_of(phi.begin(), phi.end(), [](const auto& s) { return s.exact->is_integer(); });
    // every lambda = (b/2) sqrt(delta) with b/2 a nonzero integer, one delta
    const bool multiples = std::all_of(phi.begin(), phi.end(), [&](const auto& s) {
      const auto& q = *s.exact;
      return q.a == 0 && q.b != 0 && q.b % 2 == 0 && q.delta == phi.front().exact->delta;
    });
    c.support_condition = all_integer || multiples;
  }

  out.verdict.periodic = Periodic::no;
  if (!c.k_is_zero || !c.one_plus_4m_odd_square) return out;
  if (!c.support_condition) {
    out.verdict.periodic = Periodic::inconclusive;
    return out;
  }
  if (!*c.support_condition) return out;

  std::vector<QuadInt> exact_phi;
  for (const auto& s : phi) exact_phi.push_back(*s.exact);
  const auto corona_support = corona_support_base_vertex(exact_phi, *k, m);
  out.verdict = periodicity_test(corona_support);
  return out;
}

std::optional<int> two_adic_alpha(std::span<const std::int64_t> diffs, std::span<const int> signs) {
  if (diffs.size() != signs.size()) throw std::invalid_argument("two_adic_alpha: size mismatch");
  std::vector<int> nu;
  for (auto d : diffs) nu.push_back(p_adic_valuation(Rational(d), 2));
  for (int alpha = 0; alpha <= 64; ++alpha) {
    bool ok = true;
    for (std::size_t r = 0; r < diffs.size() && ok; ++r) {
      // |D|_2 < 2^-alpha  <=>  nu > alpha ;  |D|_2 = 2^-alpha  <=>  nu == alpha
      ok = signs[r] > 0 ? nu[r] > alpha : nu[r] == alpha;
    }
    if (ok) return alpha;
  }
  return std::nullopt;
}

std::string tau_symbol(std::int64_t g, std::int64_t delta) {
  std::string denom;
  if (delta == 1) {
    if (g == 1) return "pi";
    return "pi/" + std::to_string(g);
  }
  const std::string root = "sqrt(" + std::to_string(delta) + ")";
  if (g == 1) return "pi/" + root;
  return "pi/(" + std::to_string(g) + "*" + root + ")";
}

PSTCertificate pst_certify(const SpectralDecomposition& d, Vertex u, Vertex v, const Tolerances& tols) {
  check_vertex(d, u);
  check_vertex(d, v);
  if (u == v) throw std::invalid_argument("pst_certify: vertices must differ");
  PSTCertificate cert;
  cert.u = u;
  cert.v = v;
  auto fail = [&](Verdict verdict, FailureReason why) {
    cert.verdict = verdict;
    cert.failure = why;
    return cert;
  };

  const auto support = eigenvalue_support(d, u, tols.support).classes;
  for (auto r : support) cert.support_values.push_back(d.classes[r].value);

  const auto signs = strong_cospectral(d, u, v, tols.cospectral);
  if (!signs) return fail(Verdict::no_pst, FailureReason::not_strongly_cospectral);

  std::vector<QuadInt> lam;
  for (auto r : support) {
    int s = 0;
    for (const auto& cs : *signs)
      if (cs.class_index == r) s = cs.sign;
    cert.signs.push_back(s);
    if (d.classes[r].exact) lam.push_back(*d.classes[r].exact);
  }
  if (lam.size() != support.size()) return fail(Verdict::inconclusive, FailureReason::inexact_spectrum);

  std::set<std::int64_t> deltas;
  for (const auto& q : lam)
    if (!q.is_integer()) deltas.insert(q.delta);
  if (deltas.size() > 1) return fail(Verdict::no_pst, FailureReason::support_not_quadratic);
  if (deltas.empty()) {
    cert.delta = 1;
    cert.a = 0;
    for (const auto& q : lam) cert.b_values.push_back(q.a);
  } else {
    cert.delta = *deltas.begin();
    std::optional<std::int64_t> a;
    for (const auto& q : lam)
      if (!q.is_integer()) {
        if (a && *a != q.a) return fail(Verdict::no_pst, FailureReason::support_not_quadratic);
        a = q.a;
      }
    cert.a = *a;
    for (const auto& q : lam) {
      if (q.is_integer() && q.a != cert.a) return fail(Verdict::no_pst, FailureReason::support_not_quadratic);
      cert.b_values.push_back(q.is_integer() ? 0 : q.b);
    }
  }

  // D_r = (lambda_0 - lambda_r)/sqrt(delta) = (b_0 - b_r)/2
  std::vector<std::int64_t> diffs;
  for (std::size_t r = 1; r < cert.b_values.size(); ++r) {
    const std::int64_t twice = cert.b_values.front() - cert.b_values[r];
    if (twice % 2 != 0) return fail(Verdict::no_pst, FailureReason::support_not_quadratic);
    diffs.push_back(twice / 2);
  }
  if (diffs.empty() || cert.signs.front() <= 0) return fail(Verdict::no_pst, FailureReason::sign_pattern_fails);
  cert.g = gcd_list(diffs);

  const auto alpha = two_adic_alpha(diffs, std::span(cert.signs).subspan(1));
  if (!alpha) return fail(Verdict::no_pst, FailureReason::sign_pattern_fails);
  cert.alpha = *alpha;
  cert.verdict = Verdict::pst;
  cert.tau = kPi / (static_cast<double>(cert.g) * std::sqrt(static_cast<double>(cert.delta)));
  cert.tau_symbolic = tau_symbol(cert.g, cert.delta);
  cert.phase = transition_entry(d, u, v, cert.tau);
  cert.confirmed_fidelity = std::abs(cert.phase);
  return cert;
}

std::vector<double> uniform_grid(double t_max, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("grid needs at least two steps");
  if (!(t_max > 0)) throw std::invalid_argument("grid needs t_max > 0");
  std::vector<double> t(steps);
  for (std::size_t j = 0; j < steps; ++j) t[j] = static_cast<double>(j) * t_max / static_cast<double>(steps - 1);
  return t;
}

FidelityTrace fidelity_sweep(const SpectralDecomposition& d, Vertex u, Vertex v, double t_max, std::size_t steps) {
  FidelityTrace trace;
  trace.times = uniform_grid(t_max, steps);
  trace.values.reserve(steps);
  for (double t : trace.times) trace.values.push_back(fidelity(d, u, v, t));
  trace.argmax = static_cast<std::size_t>(
      std::distance(trace.values.begin(), std::max_element(trace.values.begin(), trace.values.end())));
  return trace;
}

NoPstReport corona_no_pst_check(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, const CoronaPair& pair,
                                std::span<const double> t_grid) {
  if (pair.kind == CoronaPair::Kind::base_base && pair.v == pair.v2)
    throw std::invalid_argument("base-base scan needs two distinct vertices of G");
  if (pair.kind == CoronaPair::Kind::base_copy && pair.w >= spec.m())
    throw std::out_of_range("H vertex out of range");
  if (spec.n() < 2) throw std::invalid_argument("G must have at least two vertices");
  if (!is_connected(spec.H)) throw std::invalid_argument("H must be connected");
  if (!is_connected(spec.G)) diag::warn("G is disconnected; the no-PST bound assumes a connected G");

  const BaseEntryKernel kernel(spec, g_decomp, pair.v, pair.v2);
  NoPstReport report;
  report.static_bound = kernel.static_bound();
  for (double t : t_grid) {
    const double f = std::abs(pair.kind == CoronaPair::Kind::base_base ? kernel.base_base(t) : kernel.base_copy(t));
    if (f > report.max_fidelity || report.samples == 0) {
      report.max_fidelity = f;
      report.argmax_time = t;
    }
    if (!(f < 1.0)) report.all_below_one = false;
    ++report.samples;
  }
  return report;
}

double pgst_time(PgstFamily family, std::int64_t g, std::int64_t ell) {
  const auto l = static_cast<double>(ell);
  switch (family) {
    case PgstFamily::theorem51: return (4 * l + 2.0 / static_cast<double>(g)) * kPi;
    case PgstFamily::theorem52: return (4 * l + 1) * kPi;
    case PgstFamily::cocktail: return 8 * l * kPi;
  }
  return 0;
}

bool is_cocktail_party(const Graph& g) {
  const std::size_t n = g.order();
  if (n % 2 != 0 || n < 2) return false;
  for (Vertex x = 0; x < n; ++x)
    if (g.degree(x) != n - 2) return false;
  return true;
}

namespace {

bool has_zero_eigenvalue(const SpectralDecomposition& d) {
  return std::any_of(d.classes.begin(), d.classes.end(), [](const auto& c) {
    return c.exact ? (c.exact->is_integer() && c.exact->a == 0) : std::abs(c.value) < 1e-8;
  });
}

}  // namespace

PGSTSearchResult pgst_search(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex u, Vertex v,
                             PgstFamily family, std::int64_t ell_max, double target, const Tolerances& tols) {
  if (ell_max < 0) throw std::invalid_argument("ell_max must be nonnegative");
  if (!spec.k) throw PreconditionError("H is not regular");
  if (*spec.k == 0) throw PreconditionError("H must have nonzero degree k");
  if (!is_connected(spec.H)) throw PreconditionError("H must be connected");
  if (u >= spec.n() || v >= spec.n()) throw PreconditionError("u and v must be base vertices of G");
  if (u == v) throw PreconditionError("u and v must be distinct");
  if (!is_connected(spec.G)) diag::warn("G is disconnected; the PGST constructions assume a connected G");

  PGSTSearchResult result;
  result.family = family;
  switch (family) {
    case PgstFamily::theorem51: {
      const auto cert = pst_certify(g_decomp, u, v, tols);
      if (cert.verdict != Verdict::pst) throw PreconditionError("G has no certified perfect state transfer between u and v");
      if (cert.delta != 1) throw PreconditionError("perfect state transfer time is not pi/g for an integer g");
      const auto support = eigenvalue_support(g_decomp, u, tols.support).classes;
      for (auto r : support)
        if (g_decomp.classes[r].exact && g_decomp.classes[r].exact->a == 0 && g_decomp.classes[r].exact->is_integer())
          throw PreconditionError("0 lies in the eigenvalue support of u");
      result.g = cert.g;
      break;
    }
    case PgstFamily::theorem52: {
      if (!has_zero_eigenvalue(g_decomp)) throw PreconditionError("0 is not an eigenvalue of G");
      const auto cert = pst_certify(g_decomp, u, v, tols);
      if (cert.verdict != Verdict::pst || cert.delta != 1 || cert.g % 4 != 2)
        throw PreconditionError("G has no perfect state transfer at time pi/2 between u and v");
      break;
    }
    case PgstFamily::cocktail: {
      if (!is_cocktail_party(spec.G)) throw PreconditionError("G is not a cocktail party graph");
      const std::size_t half = spec.n() / 2;
      if (half < 3 || half % 2 == 0) throw PreconditionError("cocktail party graph needs an odd n >= 3");
      const auto& nb = spec.G.neighbors(u);
      if (std::binary_search(nb.begin(), nb.end(), v)) throw PreconditionError("u and v are not antipodal");
      break;
    }
  }

  const BaseEntryKernel kernel(spec, g_decomp, u, v);
  for (std::int64_t ell = 0; ell <= ell_max; ++ell) {
    const double t = pgst_time(family, result.g, ell);
    const double f = std::abs(kernel.base_base(t));
    ++result.evaluated;
    if (result.trace.empty() || f > result.best_fidelity) {
      result.best_ell = ell;
      result.best_time = t;
      result.best_fidelity = f;
      result.trace.push_back({ell, f});
    }
    if (f >= target) {
      result.reached_target = true;
      break;
    }
  }
  return result;
}

}  // namespace coronawalk
