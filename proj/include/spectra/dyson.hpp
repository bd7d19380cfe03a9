#pragma once

#include <optional>
#include <vector>

#include "spectra/linalg.hpp"
#include "spectra/pencil.hpp"

namespace spectra {

struct MdeOptions {
  double tol = 1e-12;
  /// θ in G ← (1-θ) G + θ (λ - a0 - η(G))^{-1}
  double damping = 0.5;
  long max_iterations = 50000;
};

/// Solution of Σ ai G ai G + (a0 - λ) G + 1 = 0 at one λ with Im λ ≻ 0.
struct StieltjesSolution {
  Matrix lambda;
  Matrix G;
  double residual = 0.0;
  long iterations = 0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct SpectralDensity {
  std::vector<double> grid;
  std::vector<double> rho;
  /// MDE residual at each grid point (worst of the two heights when extrapolating).
  std::vector<double> residual;
  double eta = 0.0;
  /// Grid-level estimate: maximal runs of points with rho above the detection threshold.
  std::vector<Interval> support;
};

struct DensityOptions {
  MdeOptions mde;
  /// Two-point extrapolation 2 ρ(η/2) - ρ(η).
  bool richardson = true;
  double support_threshold = 1e-4;
};

struct SupportOptions {
  MdeOptions mde;
  double eta = 1e-3;
  double threshold = 1e-4;
  /// A point is inside the support when ρ(η/2) ≥ ratio · ρ(η); outside, ρ is linear in η.
  double ratio = 0.75;
  int grid_points = 2001;
};

/// Σ_{i≥1} ai z ai
Matrix eta_map(const Pencil& p, const Matrix& z);

/// Σ ai G ai G + (a0 - λ) G + 1
Matrix mde_residual(const Pencil& p, const Matrix& lambda, const Matrix& g);

/// Damped fixed-point iteration; on non-convergence retries once with half
/// the damping before throwing SolverFailure. The returned G satisfies
/// residual ≤ tol and Im G ≺ 0.
StieltjesSolution solve_mde(const Pencil& p, const Matrix& lambda, const MdeOptions& opts = {},
                            const std::optional<Matrix>& warm_start = std::nullopt);

/// tr_m G(z 1_m)
Complex scalar_stieltjes(const Pencil& p, Complex z, const MdeOptions& opts = {});

/// ρ(x) = -(1/π) Im tr_m G((x + iη) 1_m) along a sorted grid, warm-starting
/// each point from its left neighbour.
SpectralDensity spectral_density(const Pencil& p, const std::vector<double>& grid, double eta,
                                 const DensityOptions& opts = {});

/// Closed intervals approximating sp(s); endpoints bisected to eps_refine.
std::vector<Interval> support(const Pencil& p, double eps_refine = 1e-6, const SupportOptions& opts = {});

/// max |endpoint| over support(p).
double pencil_norm(const Pencil& p, double eps_refine = 1e-6, const SupportOptions& opts = {});

/// lo + k (hi - lo) / (count - 1), k = 0..count-1
std::vector<double> linear_grid(double lo, double hi, int count);

double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spectra
