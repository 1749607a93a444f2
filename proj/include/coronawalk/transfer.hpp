#pragma once

#include "coronawalk/corona.hpp"
#include "coronawalk/spectral.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coronawalk {

// ---------------------------------------------------------------------------
// Periodicity

enum class Periodic { yes, no, inconclusive };
enum class PeriodicityCase { all_integer, quadratic, none };

struct PeriodicityVerdict {
  Periodic periodic = Periodic::inconclusive;
  PeriodicityCase kind = PeriodicityCase::none;
  std::int64_t a = 0;      // shared a in the quadratic case
  std::int64_t delta = 1;  // shared delta in the quadratic case
  std::optional<double> witness_period;
  std::optional<double> confirmed_fidelity;  // |U(T)_{u,u}| when checked numerically
};

/// Periodicity from an exact eigenvalue support: periodic iff every value is
/// an integer, or every value is (a + b sqrt(delta))/2 with one shared a and
/// delta. Any inexact entry gives inconclusive. Witness period
/// T = 4 pi / (gcd |b_0 - b_r| sqrt(delta)). Throws on an empty support.
PeriodicityVerdict periodicity_test(std::span<const SupportValue> support);

/// periodicity_test on the support of u, with the witness period confirmed
/// numerically on the decomposition.
PeriodicityVerdict vertex_periodicity(const SpectralDecomposition& d, Vertex u, const Tolerances& tols = {});

/// The three conditions for periodicity at a base vertex (v, 0).
struct BasePeriodicityConditions {
  bool k_is_zero = false;
  bool one_plus_4m_odd_square = false;
  std::optional<bool> support_condition;  // empty when the support of v is inexact
};

struct CoronaBasePeriodicity {
  PeriodicityVerdict verdict;
  BasePeriodicityConditions conditions;
};

/// Periodicity of G * H at (v, 0): k = 0, 1 + 4m an odd square, and the
/// support of v in G all integers or all nonzero integer multiples of one
/// sqrt(delta). Throws std::invalid_argument if H is not regular or n < 2.
CoronaBasePeriodicity corona_base_periodicity(const Graph& G, const Graph& H, Vertex v, const Tolerances& tols = {});

// ---------------------------------------------------------------------------
// Perfect state transfer

enum class Verdict { pst, no_pst, inconclusive };
enum class FailureReason { none, not_strongly_cospectral, support_not_quadratic, sign_pattern_fails, inexact_spectrum };

struct PSTCertificate {
  Verdict verdict = Verdict::inconclusive;
  FailureReason failure = FailureReason::none;
  Vertex u = 0;
  Vertex v = 0;
  std::int64_t delta = 1;
  std::int64_t a = 0;
  std::vector<double> support_values;  // lambda_0 > lambda_1 > ...
  std::vector<std::int64_t> b_values;  // lambda_r = (a + b_r sqrt(delta)) / 2
  std::vector<int> signs;              // sign of (E_r)_{u,v}
  std::int64_t g = 0;
  int alpha = 0;
  double tau = 0;
  std::string tau_symbolic;
  std::complex<double> phase{0, 0};  // U(tau)_{u,v}
  double confirmed_fidelity = 0;
};

/// Exact PST test between u and v. Needs a decomposition with exact labels
/// (see analyze_graph); unlabeled support classes give Inconclusive.
PSTCertificate pst_certify(const SpectralDecomposition& d, Vertex u, Vertex v, const Tolerances& tols = {});

/// Lowest alpha in [0, 64] satisfying the 2-adic sign pattern, if any.
/// `diffs` are (lambda_0 - lambda_r)/sqrt(delta) for r >= 1, paired with the
/// signs of (E_r)_{u,v}.
std::optional<int> two_adic_alpha(std::span<const std::int64_t> diffs, std::span<const int> signs);

std::string tau_symbol(std::int64_t g, std::int64_t delta);

// ---------------------------------------------------------------------------
// Sweeps and scans

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::size_t argmax = 0;
};

/// |U(t)_{u,v}| at t_j = j t_max / (steps - 1).
FidelityTrace fidelity_sweep(const SpectralDecomposition& d, Vertex u, Vertex v, double t_max, std::size_t steps);

std::vector<double> uniform_grid(double t_max, std::size_t steps);

/// A pair of corona vertices addressed through G: base-base is
/// (v,0)-(v2,0); base-copy is (v2,0)-(v,w).
struct CoronaPair {
  enum class Kind { base_base, base_copy } kind = Kind::base_base;
  Vertex v = 0;
  Vertex v2 = 0;
  Vertex w = 0;
};

struct NoPstReport {
  double max_fidelity = 0;
  double argmax_time = 0;
  bool all_below_one = true;
  double static_bound = 0;  // sum_lambda |<v|E_lambda|v2>|
  std::size_t samples = 0;
};

/// Samples the closed-form entry on the grid and records the largest modulus.
NoPstReport corona_no_pst_check(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, const CoronaPair& pair,
                                std::span<const double> t_grid);

// ---------------------------------------------------------------------------
// Pretty good state transfer search

enum class PgstFamily { theorem51, theorem52, cocktail };

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PgstStep {
  std::int64_t ell = 0;
  double fidelity = 0;
};

struct PGSTSearchResult {
  PgstFamily family = PgstFamily::theorem51;
  std::int64_t g = 0;  // theorem51 only
  std::int64_t best_ell = 0;
  double best_time = 0;
  double best_fidelity = 0;
  bool reached_target = false;
  std::int64_t evaluated = 0;
  std::vector<PgstStep> trace;  // strictly increasing best-so-far
};

/// theorem51: (4l + 2/g) pi, theorem52: (4l + 1) pi, cocktail: 8 l pi.
double pgst_time(PgstFamily family, std::int64_t g, std::int64_t ell);

/// Sweeps l = 0..ell_max on the family's time sequence, evaluating
/// |<(u,0)|U(t)|(v,0)>| with the closed-form entry. Stops at the first l
/// reaching `target`. Throws PreconditionError naming the first violated
/// precondition. `g_decomp` must carry exact labels.
PGSTSearchResult pgst_search(const CoronaSpec& spec, const SpectralDecomposition& g_decomp, Vertex u, Vertex v,
                             PgstFamily family, std::int64_t ell_max = 100000, double target = 0.99,
                             const Tolerances& tols = {});

/// True if g is a cocktail party graph (complement a perfect matching).
bool is_cocktail_party(const Graph& g);

}  // namespace coronawalk
