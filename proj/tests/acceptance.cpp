// Acceptance checks. Usage: acceptance [criterion ...] with criterion in
// 1 2 3 4 5a 5b 5c 6 7a 7b; no argument runs all. One PASS/FAIL line each.

#include "coronawalk/corona.hpp"
#include "coronawalk/diagnostics.hpp"
#include "coronawalk/graph_spec.hpp"
#include "coronawalk/transfer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace coronawalk;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? static_cast<double>(m.cwiseAbs().maxCoeff()) : 0.0;
}

Graph named(const std::string& text) { return build_family(parse_graph_spec(text)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string fidelity_text(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15f", f);
  return buf;
}

Eigen::MatrixXd reconstruct(const SpectralDecomposition& d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d.n, d.n);
  for (const auto& c : d.classes) m += c.value * c.projector;
  return m;
}

// 1: closed form against the assembled corona
Outcome closed_form_vs_numeric() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ut(0, 20);
  double worst_rec = 0, worst_entry = 0;
  for (const char* g_name : {"path:2", "path:3", "cycle:4", "cocktail:3"})
    for (const char* h_name : {"cycle:3", "cycle:4", "complete:4"}) {
      const auto g = named(g_name), h = named(h_name);
      const auto spec = make_corona_spec(g, h);
      const auto gd = analyze_graph(g);
      const auto assembled = corona_adjacency(g, h);
      const auto closed = corona_spectral_closed_form(spec, gd, analyze_graph(h));
      worst_rec = std::max(worst_rec, max_abs(reconstruct(closed) - adjacency<double>(assembled)));
      const auto numeric = decompose(adjacency<double>(assembled));
      const std::size_t n = g.order(), m = h.order();
      for (int i = 0; i < 25; ++i) {
        const double t = ut(rng);
        const auto u = transition_matrix(numeric, t);
        for (Vertex v = 0; v < n; ++v)
          for (Vertex v2 = 0; v2 < n; ++v2) {
            const BaseEntryKernel kernel(spec, gd, v, v2);
            worst_entry = std::max(worst_entry, std::abs(kernel.base_base(t) - u(static_cast<Eigen::Index>(v),
                                                                                  static_cast<Eigen::Index>(v2))));
            const auto bc = kernel.base_copy(t);
            for (Vertex w = 0; w < m; ++w) {
              const auto ref = u(static_cast<Eigen::Index>(v2), static_cast<Eigen::Index>(corona_index(n, v, w)));
              worst_entry = std::max(worst_entry, std::abs(bc - ref));
            }
          }
      }
    }
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = worst_rec <= 1e-8 && worst_entry <= 1e-7 && elapsed < 60;
  o.detail = "12 coronas: reconstruction " + fmt(worst_rec) + " (<= 1e-8), entries " + fmt(worst_entry) +
             " (<= 1e-7), " + fmt(elapsed) + " s (< 60)";
  return o;
}

// 2: PST certificates
Outcome pst_certificates() {
  Outcome o;
  std::ostringstream d;
  auto check = [&](const char* name, Vertex u, Vertex v, std::int64_t delta, std::int64_t g, double tau) {
    const auto cert = pst_certify(analyze_graph(named(name)), u, v);
    const bool ok = cert.verdict == Verdict::pst && (delta < 0 || cert.delta == delta) && (g < 0 || cert.g == g) &&
                    std::abs(cert.tau - tau) < 1e-12 && cert.confirmed_fidelity > 1 - 1e-10;
    o.pass = o.pass && ok;
    d << name << " " << u << "->" << v << ": delta=" << cert.delta << " g=" << cert.g << " tau=" << cert.tau_symbolic
      << " fidelity=" << fidelity_text(cert.confirmed_fidelity) << (ok ? "" : " [mismatch]") << "; ";
  };
  check("path:2", 0, 1, 1, 2, pi / 2);
  check("path:3", 0, 2, 2, 1, pi / std::sqrt(2.0));
  check("cycle:4", 0, 2, -1, -1, pi / 2);
  o.detail = d.str();
  return o;
}

// 3: periodicity of (v, 0)
Outcome base_periodicity() {
  Outcome o;
  const auto yes = corona_base_periodicity(named("path:2"), named("empty:2"), 0);
  const auto assembled = analyze_graph(corona_adjacency(named("path:2"), named("empty:2")));
  const double f = fidelity(assembled, 0, 0, 2 * pi);
  const auto no3 = corona_base_periodicity(named("path:2"), named("empty:3"), 0);
  const auto c3 = corona_base_periodicity(named("path:2"), named("cycle:3"), 0);
  o.pass = yes.verdict.periodic == Periodic::yes && f > 1 - 1e-8 && no3.verdict.periodic == Periodic::no &&
           c3.verdict.periodic == Periodic::no;
  auto word = [](Periodic p) { return p == Periodic::yes ? "yes" : p == Periodic::no ? "no" : "inconclusive"; };
  o.detail = std::string("P2*empty:2 ") + word(yes.verdict.periodic) + " with |U(2pi)| = " + fidelity_text(f) +
             ", P2*empty:3 " + word(no3.verdict.periodic) + ", P2*C3 " + word(c3.verdict.periodic);
  return o;
}

// 4: no-PST scans
Outcome no_pst_scan() {
  Outcome o;
  const auto grid = uniform_grid(50, 10000);
  double worst = 0;
  std::size_t pairs = 0;
  for (const char* g_name : {"path:2", "path:3"}) {
    const auto g = named(g_name);
    const auto spec = make_corona_spec(g, named("cycle:3"));
    const auto gd = analyze_graph(g);
    for (Vertex v = 0; v < g.order(); ++v)
      for (Vertex v2 = 0; v2 < g.order(); ++v2) {
        if (v != v2) {
          worst = std::max(worst, corona_no_pst_check(spec, gd, {CoronaPair::Kind::base_base, v, v2, 0}, grid)
                                      .max_fidelity);
          ++pairs;
        }
        for (Vertex w = 0; w < spec.m(); ++w) {
          worst = std::max(worst, corona_no_pst_check(spec, gd, {CoronaPair::Kind::base_copy, v, v2, w}, grid)
                                      .max_fidelity);
          ++pairs;
        }
      }
  }
  o.pass = worst < 1 - 1e-6;
  o.detail = std::to_string(pairs) + " pairs x 10^4 samples on [0, 50], max fidelity " + fmt(worst) +
             " (< 1 - 1e-6)";
  return o;
}

// 5: PGST searches
Outcome pgst(const char* g_name, Vertex u, Vertex v, PgstFamily family, std::optional<std::int64_t> frozen_ell) {
  Outcome o;
  const auto start = Clock::now();
  const auto g = named(g_name);
  const auto spec = make_corona_spec(g, named("cycle:3"));
  PGSTSearchResult r;
  try {
    r = pgst_search(spec, analyze_graph(g), u, v, family, 100000, 0.99);
  } catch (const PreconditionError& e) {
    return {false, std::string(g_name) + "*C3: precondition failed: " + e.what()};
  }
  const double elapsed = seconds_since(start);
  o.pass = r.reached_target && elapsed < 120 && (!frozen_ell || r.best_ell == *frozen_ell);
  o.detail = std::string(g_name) + "*C3 (" + std::to_string(u) + "," + std::to_string(v) + "): best l=" +
             std::to_string(r.best_ell) + " fidelity " + fmt(r.best_fidelity) + " after " +
             std::to_string(r.evaluated) + " steps, target 0.99 " + (r.reached_target ? "reached" : "missed") + ", " +
             fmt(elapsed) + " s (< 120)";
  if (frozen_ell) o.detail += ", frozen l=" + std::to_string(*frozen_ell);
  return o;
}

// 6: invariants on random graphs
Outcome random_invariants() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> un(1, 8);
  std::uniform_real_distribution<double> ut(0, 10), up(0.2, 0.8);
  double algebra = 0, unitary = 0, symmetric = 0, group = 0, eq32 = 0;
  const std::vector<Graph> hs{named("cycle:3"), named("cycle:4"), named("complete:4"), named("empty:2")};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = un(rng);
    std::bernoulli_distribution coin(up(rng));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    const Graph g(n, edges);
    const auto a = adjacency<double>(g);
    const auto d = analyze_graph(g);
    const auto id = Eigen::MatrixXd::Identity(d.n, d.n);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d.n, d.n);
    for (std::size_t r = 0; r < d.classes.size(); ++r) {
      const auto& e = d.classes[r].projector;
      sum += e;
      algebra = std::max(algebra, max_abs(e * e - e));
      for (std::size_t s = r + 1; s < d.classes.size(); ++s)
        algebra = std::max(algebra, max_abs(e * d.classes[s].projector));
    }
    algebra = std::max(algebra, max_abs(sum - id));
    algebra = std::max(algebra, max_abs(reconstruct(d) - a) / 10);  // reconstruction bound is 1e-8
    const double t = ut(rng), s = ut(rng);
    const Eigen::MatrixXcd u = transition_matrix(d, t), us = transition_matrix(d, s);
    unitary = std::max(unitary, max_abs(u * u.adjoint() - Eigen::MatrixXcd::Identity(d.n, d.n)));
    symmetric = std::max(symmetric, max_abs(u - u.transpose()));
    group = std::max(group, max_abs(transition_matrix(d, t + s) - u * us));

    const auto& h = hs[static_cast<std::size_t>(trial) % hs.size()];
    const double k = static_cast<double>(*is_regular(h)), m = static_cast<double>(h.order());
    for (const auto& c : d.classes) {
      const auto p = corona_eigen_pair(c.value, c.exact, *is_regular(h), h.order());
      const double l2 = c.value * c.value;
      const double lhs1 = ((p.plus - k) * (p.plus - k) + m * l2) * ((p.minus - k) * (p.minus - k) + m * l2);
      const double rhs1 = m * l2 * p.Lambda * p.Lambda;
      const double lhs2 = (p.plus - k) * (p.minus - k), rhs2 = -m * l2;
      eq32 = std::max(eq32, std::abs(lhs1 - rhs1) / std::max(1.0, std::abs(rhs1)));
      eq32 = std::max(eq32, std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(rhs2)));
    }
  }
  Outcome o;
  o.pass = algebra <= 1e-9 && unitary <= 1e-8 && symmetric <= 1e-8 && group <= 1e-7 && eq32 <= 1e-6;
  o.detail = "50 graphs: projector algebra " + fmt(algebra) + " (<= 1e-9), unitarity " + fmt(unitary) +
             ", symmetry " + fmt(symmetric) + " (<= 1e-8), group law " + fmt(group) + " (<= 1e-7), product identities " +
             fmt(eq32) + " (<= 1e-6 rel)";
  return o;
}

// 7a: support of (v,0) contained in the support of (v,w)
Outcome support_containment() {
  Outcome o;
  std::size_t checked = 0, failures = 0, failures_at_zero = 0;
  std::ostringstream first;
  for (const char* g_name : {"path:2", "path:3", "path:4", "cycle:4", "star:3", "cocktail:3"})
    for (const char* h_name : {"empty:2", "cycle:3", "cycle:4", "complete:4"}) {
      const auto g = named(g_name), h = named(h_name);
      const auto d = analyze_graph(corona_adjacency(g, h));
      for (Vertex v = 0; v < g.order(); ++v) {
        const auto base = eigenvalue_support(d, v).classes;
        for (Vertex w = 0; w < h.order(); ++w) {
          const auto copy = eigenvalue_support(d, corona_index(g.order(), v, w)).classes;
          ++checked;
          for (auto r : base)
            if (std::find(copy.begin(), copy.end(), r) == copy.end()) {
              if (failures == 0)
                first << g_name << "*" << h_name << " v=" << v << " w=" << w << " missing eigenvalue "
                      << fmt(d.classes[r].value);
              ++failures;
              if (std::abs(d.classes[r].value) < 1e-9) ++failures_at_zero;
            }
        }
      }
    }
  o.pass = failures == 0;
  o.detail = std::to_string(checked) + " (v,w) samples over 24 coronas, " + std::to_string(failures) +
             " missing eigenvalues (" + std::to_string(failures_at_zero) + " of them 0)";
  if (failures) o.detail += "; first: " + first.str();
  return o;
}

// 7b: no periodic vertex in G => no periodic base vertex in G * H
Outcome no_periodic_transfer() {
  Outcome o;
  const auto g = named("path:4");
  const auto gd = analyze_graph(g);
  bool premise = true;
  for (Vertex v = 0; v < g.order(); ++v) premise = premise && vertex_periodicity(gd, v).periodic == Periodic::no;
  bool conclusion = true, numeric = true;
  for (const char* h_name : {"empty:2", "cycle:3"}) {
    const auto h = named(h_name);
    const auto cd = analyze_graph(corona_adjacency(g, h));
    for (Vertex v = 0; v < g.order(); ++v) {
      conclusion = conclusion && corona_base_periodicity(g, h, v).verdict.periodic == Periodic::no;
      numeric = numeric && vertex_periodicity(cd, v).periodic != Periodic::yes;
    }
  }
  o.pass = premise && conclusion && numeric;
  o.detail = std::string("P4 periodic nowhere: ") + (premise ? "yes" : "no") +
             "; P4*empty:2 and P4*C3 base vertices periodic nowhere: " + (conclusion ? "yes" : "no") +
             " (assembled graphs agree: " + (numeric ? "yes" : "no") + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  diag::set_sink([](std::string_view) {});
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1", closed_form_vs_numeric},
      {"2", pst_certificates},
      {"3", base_periodicity},
      {"4", no_pst_scan},
      {"5a", [] { return pgst("path:2", 0, 1, PgstFamily::theorem51, 53); }},
      {"5b", [] { return pgst("cycle:4", 0, 2, PgstFamily::theorem52, std::nullopt); }},
      {"5c", [] { return pgst("cocktail:3", 0, 1, PgstFamily::cocktail, std::nullopt); }},
      {"6", random_invariants},
      {"7a", support_containment},
      {"7b", no_periodic_transfer},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    const bool known = std::any_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; });
    if (!known) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  }
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
