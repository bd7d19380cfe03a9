#include "spectra/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spectra/error.hpp"

namespace spectra {
namespace {

Matrix imag_part(const Matrix& x) { return (x - x.adjoint()) / Complex(0.0, 2.0); }

void check_lambda(const Pencil& p, const Matrix& lambda) {
  if (lambda.rows() != p.m() || lambda.cols() != p.m()) {
    throw InvalidParameter("lambda must be " + std::to_string(p.m()) + " x " + std::to_string(p.m()));
  }
  const RealVector ev = linalg::hermitian_eigenvalues(imag_part(lambda));
  if (!(ev(0) > 0.0)) throw InvalidParameter("Im(lambda) must be positive definite");
}

bool imag_negative_definite(const Matrix& g) {
  const RealVector ev = linalg::hermitian_eigenvalues(imag_part(g));
  return ev(ev.size() - 1) < 0.0;
}

struct Attempt {
  Matrix g;
  double residual;
  long iterations;
  bool converged;
};

Attempt iterate(const Pencil& p, const Matrix& lambda, Matrix g, double damping, const MdeOptions& opts) {
  const Matrix shifted = lambda - p.a(0);
  double res = mde_residual(p, lambda, g).norm();
  long it = 0;
  while (res > opts.tol && it < opts.max_iterations) {
    const Matrix next = linalg::inverse(shifted - eta_map(p, g));
    g = (1.0 - damping) * g + damping * next;
    res = mde_residual(p, lambda, g).norm();
    ++it;
    if (!std::isfinite(res)) break;
  }
  return {std::move(g), res, it, res <= opts.tol};
}

}  // namespace

Matrix eta_map(const Pencil& p, const Matrix& z) {
  if (z.rows() != p.m() || z.cols() != p.m()) throw InvalidParameter("eta_map: z must be m x m");
  Matrix out = Matrix::Zero(p.m(), p.m());
  for (int i = 1; i <= p.r(); ++i) out.noalias() += p.a(i) * z * p.a(i);
  return out;
}

Matrix mde_residual(const Pencil& p, const Matrix& lambda, const Matrix& g) {
  Matrix out = (p.a(0) - lambda) * g;
  out += eta_map(p, g) * g;
  out.diagonal().array() += 1.0;
  return out;
}

StieltjesSolution solve_mde(const Pencil& p, const Matrix& lambda, const MdeOptions& opts,
                            const std::optional<Matrix>& warm_start) {
  check_lambda(p, lambda);
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw InvalidParameter("damping must lie in (0, 1]");
  if (!(opts.tol > 0.0)) throw InvalidParameter("tol must be > 0");

  const Matrix cold = linalg::inverse(lambda - p.a(0));
  Matrix start = cold;
  if (warm_start && warm_start->rows() == p.m() && warm_start->cols() == p.m() && imag_negative_definite(*warm_start)) {
    start = *warm_start;
  }

  long total = 0;
  double last = 0.0;
  double damping = opts.damping;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Attempt a = iterate(p, lambda, attempt == 0 ? start : cold, damping, opts);
    total += a.iterations;
    last = a.residual;
    if (a.converged && imag_negative_definite(a.g)) {
      return {lambda, std::move(a.g), a.residual, total};
    }
    damping *= 0.5;
  }
  throw SolverFailure("solve_mde: no admissible fixed point (last residual " + std::to_string(last) + ")", last, total);
}

Complex scalar_stieltjes(const Pencil& p, Complex z, const MdeOptions& opts) {
  if (!(z.imag() > 0.0)) throw InvalidParameter("scalar_stieltjes: Im z must be > 0");
  const Matrix lambda = z * Matrix::Identity(p.m(), p.m());
  return solve_mde(p, lambda, opts).G.trace() / static_cast<double>(p.m());
}

namespace {

struct Sweep {
  std::vector<double> rho;
  std::vector<double> residual;
  std::vector<Matrix> g;
};

Sweep sweep(const Pencil& p, const std::vector<double>& grid, double eta, const MdeOptions& opts) {
  Sweep s;
  s.rho.reserve(grid.size());
  s.residual.reserve(grid.size());
  s.g.reserve(grid.size());
  const Matrix id = Matrix::Identity(p.m(), p.m());
  std::optional<Matrix> warm;
  for (double x : grid) {
    StieltjesSolution sol = solve_mde(p, Complex(x, eta) * id, opts, warm);
    const Complex tr = sol.G.trace() / static_cast<double>(p.m());
    s.rho.push_back(-tr.imag() / std::numbers::pi);
    s.residual.push_back(sol.residual);
    warm = sol.G;
    s.g.push_back(std::move(sol.G));
  }
  return s;
}

double density_at(const Pencil& p, double x, double eta, const MdeOptions& opts, const std::optional<Matrix>& warm,
                  Matrix* g_out = nullptr) {
  const Matrix id = Matrix::Identity(p.m(), p.m());
  StieltjesSolution sol = solve_mde(p, Complex(x, eta) * id, opts, warm);
  const double rho = -(sol.G.trace() / static_cast<double>(p.m())).imag() / std::numbers::pi;
  if (g_out) *g_out = std::move(sol.G);
  return rho;
}

std::vector<Interval> runs_to_intervals(const std::vector<double>& grid, const std::vector<bool>& inside) {
  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (!inside[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && inside[j + 1]) ++j;
    out.push_back({grid[i], grid[j]});
    i = j + 1;
  }
  return out;
}

std::vector<Interval> merge_close(std::vector<Interval> in, double gap) {
  std::vector<Interval> out;
  for (const auto& iv : in) {
    if (!out.empty() && iv.lo - out.back().hi < gap) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

bool only_constant_term(const Pencil& p) {
  for (int i = 1; i <= p.r(); ++i) {
    if (p.a(i).norm() != 0.0) return false;
  }
  return true;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 2) throw InvalidParameter("grid needs at least 2 points");
  if (!(hi > lo)) throw InvalidParameter("grid needs lo < hi");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  return g;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

SpectralDensity spectral_density(const Pencil& p, const std::vector<double>& grid, double eta,
                                 const DensityOptions& opts) {
  if (!(eta > 0.0)) throw InvalidParameter("eta must be > 0");
  if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidParameter("grid must be sorted");

  SpectralDensity out;
  out.grid = grid;
  out.eta = eta;
  Sweep coarse = sweep(p, grid, eta, opts.mde);
  if (opts.richardson) {
    Sweep fine = sweep(p, grid, 0.5 * eta, opts.mde);
    out.rho.resize(grid.size());
    out.residual.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out.rho[i] = 2.0 * fine.rho[i] - coarse.rho[i];
      out.residual[i] = std::max(fine.residual[i], coarse.residual[i]);
    }
  } else {
    out.rho = std::move(coarse.rho);
    out.residual = std::move(coarse.residual);
  }
  for (double& r : out.rho) r = std::max(r, 0.0);

  std::vector<bool> inside(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) inside[i] = out.rho[i] > opts.support_threshold;
  const double step = grid.size() > 1 ? (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1) : 0.0;
  out.support = merge_close(runs_to_intervals(grid, inside), 2.0 * step);
  return out;
}

std::vector<Interval> support(const Pencil& p, double eps_refine, const SupportOptions& opts) {
  if (!(eps_refine > 0.0)) throw InvalidParameter("eps_refine must be > 0");
  if (only_constant_term(p)) {
    // s = a0 ⊗ 1 has point spectrum sp(a0).
    const RealVector ev = linalg::hermitian_eigenvalues(p.a(0));
    std::vector<Interval> out;
    for (Index i = 0; i < ev.size(); ++i) {
      if (out.empty() || ev(i) - out.back().hi > eps_refine) out.push_back({ev(i), ev(i)});
    }
    return out;
  }

  const double radius = p.norm_bound() + 0.25;
  const std::vector<double> grid = linear_grid(-radius, radius, opts.grid_points);
  const double step = grid[1] - grid[0];
  Sweep coarse = sweep(p, grid, opts.eta, opts.mde);
  Sweep fine = sweep(p, grid, 0.5 * opts.eta, opts.mde);

  auto classify = [&](double rho_coarse, double rho_fine) {
    return rho_fine > opts.threshold && rho_fine >= opts.ratio * rho_coarse;
  };
  std::vector<bool> inside(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) inside[i] = classify(coarse.rho[i], fine.rho[i]);

  // Bisect every label change between neighbouring grid points.
  auto refine = [&](std::size_t left) {
    double lo = grid[left];
    double hi = grid[left + 1];
    const bool left_inside = inside[left];
    std::optional<Matrix> warm_c = coarse.g[left];
    std::optional<Matrix> warm_f = fine.g[left];
    while (hi - lo > eps_refine) {
      const double mid = 0.5 * (lo + hi);
      Matrix gc;
      Matrix gf;
      const double rc = density_at(p, mid, opts.eta, opts.mde, warm_c, &gc);
      const double rf = density_at(p, mid, 0.5 * opts.eta, opts.mde, warm_f, &gf);
      if (classify(rc, rf) == left_inside) {
        lo = mid;
      } else {
        hi = mid;
      }
      warm_c = std::move(gc);
      warm_f = std::move(gf);
    }
    return 0.5 * (lo + hi);
  };

  std::vector<Interval> raw;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (!inside[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && inside[j + 1]) ++j;
    const double lo = i == 0 ? grid[0] : refine(i - 1);
    const double hi = j + 1 == grid.size() ? grid.back() : refine(j);
    raw.push_back({lo, hi});
    i = j + 1;
  }
  return merge_close(std::move(raw), 2.0 * step);
}

double pencil_norm(const Pencil& p, double eps_refine, const SupportOptions& opts) {
  double best = 0.0;
  for (const auto& iv : support(p, eps_refine, opts)) best = std::max({best, std::abs(iv.lo), std::abs(iv.hi)});
  return best;
}

}  // namespace spectra
