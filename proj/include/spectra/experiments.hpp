#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/dyson.hpp"
#include "spectra/linalg.hpp"
#include "spectra/ncpoly.hpp"
#include "spectra/pencil.hpp"
#include "spectra/sampling.hpp"
#include "spectra/stats.hpp"
#include "spectra/test_functions.hpp"

namespace spectra::experiments {

struct BoundCheck {
  std::string label;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct RunRecord {
  std::string experiment_id;
  SeedSpec seed;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  /// Names of the components of each per-trial observation vector.
  std::vector<std::string> labels;
  std::vector<std::vector<double>> per_trial;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::vector<BoundCheck> checks;
  /// Derived quantities (targets, bounds, fitted constants).
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  bool passed() const;
  /// Recompute mean and std_error from per_trial.
  void aggregate();
  /// Column `label` of per_trial.
  std::vector<double> column(const std::string& label) const;
};

struct ScanResult {
  RunRecord record;
  stats::ScalingFit fit;
};

struct RunOptions {
  /// Worker threads for independent trials; results never depend on this.
  int threads = 1;
};

/// Runs body(t) for t in [0, trials) on up to `threads` workers and stores
/// the results by trial index. The first exception thrown by any trial is
/// rethrown after all workers stop.
std::vector<std::vector<double>> run_trials(long trials, int threads,
                                            const std::function<std::vector<double>(long)>& body);

/// r independent SGRM(n, 1/n) matrices for one trial; matrix i uses stream
/// (level << 16) + i.
std::vector<Matrix> sample_tuple(int r, Index n, const SeedSpec& trial_seed, std::uint64_t level = 0);

/// a0 ⊗ 1ₙ + Σ ai ⊗ mats[i-1]; n is explicit so r = 0 pencils work.
Matrix assemble(const Pencil& p, std::span<const Matrix> mats, Index n);

/// (idₘ ⊗ trₙ)[(λ ⊗ 1ₙ - Sₙ)^{-1}]
Matrix resolvent_partial_trace(const Pencil& p, const Matrix& lambda, std::span<const Matrix> mats, Index n);

/// m³ ||Σ ai²||² ||(Im λ)^{-1}||⁴ / n², the explicit master-inequality bound.
double master_inequality_bound(const Pencil& p, const Matrix& lambda, Index n);
/// 4 C (K + ||λ||)² ||(Im λ)^{-1}||⁷ / n² with K = ||a0|| + 4 Σ ||ai||.
double gn_bound(const Pencil& p, const Matrix& lambda, Index n, double constant);
/// 2 + 2 sqrt(log(2n) / (2n))
double expected_norm_formula(Index n);

RunRecord master_equation_residual(const Pencil& p, const Matrix& lambda, Index n, long trials,
                                   std::uint64_t seed, const RunOptions& opts = {});

/// The residual at Ĝₙ is estimated through the covariance of Hₙ, which
/// removes the O(1/T) bias of plugging the sample mean into a quadratic
/// expression. The plug-in value is reported alongside.
ScanResult master_inequality_scan(const Pencil& p, const Matrix& lambda, const std::vector<Index>& n_list,
                                  long trials, std::uint64_t seed, const RunOptions& opts = {});

enum class GnMethod { monte_carlo, exact };

/// `exact` integrates the resolvent against the finite-n GUE density and
/// needs m = 1.
RunRecord gn_vs_g(const Pencil& p, const Matrix& lambda, Index n, long trials, std::uint64_t seed,
                  GnMethod method = GnMethod::monte_carlo, const RunOptions& opts = {});

RunRecord variance_poincare_check(const Pencil& p, const TestFunction& f, Index n, long trials,
                                  std::uint64_t seed, const RunOptions& opts = {});

struct FreeExpectationOptions {
  /// Heights η, η/2, η/4 are combined to cancel the O(η) and O(η²) smoothing terms.
  double eta = 4e-3;
  /// Grid step is η / oversampling, fine enough that the trapezoid sum of the
  /// smoothed density is exact at the smallest height.
  int oversampling = 16;
  double bump_eta = 1e-10;
  int bump_points = 8001;
  MdeOptions mde;
};

/// (trₘ ⊗ τ) φ(s), by integrating φ against the spectral density of s. For
/// the bump the density is sampled at η = 1e-10 inside (-a, a) whenever the
/// solver converges there; otherwise the extrapolated route is used.
double free_expectation(const Pencil& p, const TestFunction& f, const FreeExpectationOptions& opts = {});

enum class BiasMethod { automatic, monte_carlo, exact };

/// `automatic` picks the exact finite-n density for m = 1 pencils and Monte
/// Carlo otherwise.
ScanResult bias_scan(const Pencil& p, const TestFunction& f, const std::vector<Index>& n_list, long trials,
                     std::uint64_t seed, BiasMethod method = BiasMethod::automatic, const RunOptions& opts = {});

RunRecord spectrum_containment(const Pencil& p, Index n, double eps, long trials, std::uint64_t seed,
                               const RunOptions& opts = {});

struct FreeNorm {
  double value = 0.0;
  /// "pencil" (exact via the MDE), "linearization" or "fock" (lower bound at `depth`).
  std::string method;
  int depth = 0;
};

/// ||p(x1, ..., xr)|| for free semicirculars.
FreeNorm free_polynomial_norm(const NCPolynomial& p, int fock_depth = 0);

RunRecord norm_convergence(const NCPolynomial& p, const std::vector<Index>& n_list, long trials,
                           std::uint64_t seed, const RunOptions& opts = {});

RunRecord expected_norm_bound(const std::vector<Index>& n_list, long trials, std::uint64_t seed,
                              const RunOptions& opts = {});

/// ((p+1)^{p+1} / p^p)^{1/2}
double power_norm_target(int p);

RunRecord power_norm(int power, Index n, long trials, std::uint64_t seed, double tolerance = 0.05,
                     const RunOptions& opts = {});

enum class UnitarySampler { psi, qr };

constexpr Index kUnitaryPairMaxDim = 10000;

/// ||Σ uᵢ ⊗ conj(uᵢ')|| over two independent r-tuples. With `identical` the
/// second tuple equals the first, which pins the norm at r.
RunRecord unitary_pair_norm(int r, Index n, long trials, std::uint64_t seed, UnitarySampler sampler,
                            bool identical = false, double tolerance = 0.10, const RunOptions& opts = {});

/// ||Σ uᵢ ⊗ vᵢ|| computed matrix-free (Lanczos on A*A). When the top of the
/// spectrum is a continuum (r = 2 unitaries) Lanczos stops at the iteration
/// cap and the value is a lower bound, about 1e-6 relative below the norm.
double tensor_sum_norm(std::span<const Matrix> u, std::span<const Matrix> v,
                       const linalg::LanczosOptions& opts = {.max_iterations = 1000});

RunRecord circular_sum_bounds(const std::vector<Matrix>& a, Index n, long trials, std::uint64_t seed,
                              const RunOptions& opts = {});

}  // namespace spectra::experiments
