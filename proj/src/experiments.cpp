#include "spectra/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <numbers>
#include <thread>

#include "spectra/error.hpp"
#include "spectra/fock.hpp"
#include "spectra/gue_exact.hpp"

namespace spectra::experiments {

namespace {

using Json = nlohmann::ordered_json;

Matrix imag_part(const Matrix& x) { return (x - x.adjoint()) / Complex(0.0, 2.0); }

// ||(Im λ)^{-1}|| after checking Im λ ≻ 0.
double inverse_imag_norm(const Pencil& p, const Matrix& lambda) {
  if (lambda.rows() != p.m() || lambda.cols() != p.m()) throw InvalidParameter("lambda must be m x m");
  const RealVector ev = linalg::hermitian_eigenvalues(imag_part(lambda));
  if (!(ev(0) > 0.0)) throw InvalidParameter("Im(lambda) must be positive definite");
  return 1.0 / ev(0);
}

void require_positive(long value, const char* name) {
  if (value < 1) throw InvalidParameter(std::string(name) + " must be >= 1");
}

void require_n_list(const std::vector<Index>& n_list) {
  if (n_list.empty()) throw InvalidParameter("n_list must not be empty");
  for (Index n : n_list) require_positive(static_cast<long>(n), "n");
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json matrix_json(const Matrix& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(complex_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json pencil_json(const Pencil& p) {
  Json coeffs = Json::array();
  for (const Matrix& a : p.coefficients()) coeffs.push_back(matrix_json(a));
  return Json{{"m", p.m()}, {"r", p.r()}, {"coefficients", std::move(coeffs)}};
}

std::string entry_label(const std::string& prefix, Index j, Index k, const char* part) {
  return prefix + "[" + std::to_string(j) + "," + std::to_string(k) + "]." + part;
}

void push_matrix(std::vector<double>& out, const Matrix& a) {
  for (Index j = 0; j < a.rows(); ++j) {
    for (Index k = 0; k < a.cols(); ++k) {
      out.push_back(a(j, k).real());
      out.push_back(a(j, k).imag());
    }
  }
}

void push_matrix_labels(std::vector<std::string>& labels, const std::string& prefix, Index m) {
  for (Index j = 0; j < m; ++j) {
    for (Index k = 0; k < m; ++k) {
      labels.push_back(entry_label(prefix, j, k, "re"));
      labels.push_back(entry_label(prefix, j, k, "im"));
    }
  }
}

// Per-trial m x m matrix stored at `offset` in the observation vector.
Matrix read_matrix(const std::vector<double>& obs, std::size_t offset, Index m) {
  Matrix a(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index k = 0; k < m; ++k) {
      a(j, k) = Complex(obs[offset], obs[offset + 1]);
      offset += 2;
    }
  }
  return a;
}

struct MatrixMoments {
  Matrix mean;
  /// Entrywise standard error, real and imaginary parts combined in quadrature.
  double frobenius_error = 0.0;
};

MatrixMoments matrix_moments(const std::vector<Matrix>& samples) {
  const Index m = samples.front().rows();
  const auto t = static_cast<double>(samples.size());
  MatrixMoments out;
  out.mean = Matrix::Zero(m, m);
  for (const Matrix& s : samples) out.mean += s;
  out.mean /= t;
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (const Matrix& s : samples) ss += (s - out.mean).squaredNorm();
  out.frobenius_error = std::sqrt(ss / (t - 1.0) / t);
  return out;
}

std::string n_label(Index n) { return "n=" + std::to_string(n); }

double trace_of(const TestFunction& f, const RealVector& eig) {
  double s = 0.0;
  for (Index i = 0; i < eig.size(); ++i) s += f.value(eig(i));
  return s / static_cast<double>(eig.size());
}

bool zero_coefficients(const Pencil& p) {
  for (int i = 1; i <= p.r(); ++i) {
    if (p.a(i).norm() != 0.0) return false;
  }
  return true;
}

}  // namespace

bool RunRecord::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

void RunRecord::aggregate() {
  const std::size_t k = labels.size();
  mean.assign(k, 0.0);
  std_error.assign(k, 0.0);
  std::vector<double> col(per_trial.size());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t t = 0; t < per_trial.size(); ++t) col[t] = per_trial[t].at(j);
    mean[j] = stats::mean(col);
    std_error[j] = stats::std_error(col);
  }
}

std::vector<double> RunRecord::column(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidParameter("no observation labelled '" + label + "'");
  const auto j = static_cast<std::size_t>(it - labels.begin());
  std::vector<double> out;
  out.reserve(per_trial.size());
  for (const auto& row : per_trial) out.push_back(row.at(j));
  return out;
}

std::vector<std::vector<double>> run_trials(long trials, int threads,
                                            const std::function<std::vector<double>(long)>& body) {
  if (trials < 0) throw InvalidParameter("trials must be >= 0");
  std::vector<std::vector<double>> out(static_cast<std::size_t>(trials));
  const long workers = std::clamp<long>(threads, 1, std::max<long>(trials, 1));
  if (workers == 1) {
    for (long t = 0; t < trials; ++t) out[static_cast<std::size_t>(t)] = body(t);
    return out;
  }
  std::atomic<long> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (!stop.load()) {
      const long t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        out[static_cast<std::size_t>(t)] = body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (long w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<Matrix> sample_tuple(int r, Index n, const SeedSpec& trial_seed, std::uint64_t level) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(r));
  const double var = 1.0 / static_cast<double>(n);
  for (int i = 0; i < r; ++i) {
    out.push_back(sample_sgrm(n, var, trial_seed.with_stream((level << 16) + static_cast<std::uint64_t>(i))).entries);
  }
  return out;
}

Matrix assemble(const Pencil& p, std::span<const Matrix> mats, Index n) {
  if (static_cast<int>(mats.size()) != p.r()) throw InvalidParameter("assemble: need one matrix per variable");
  Matrix s = linalg::kron(p.a(0), Matrix::Identity(n, n));
  for (int i = 1; i <= p.r(); ++i) {
    const Matrix& x = mats[static_cast<std::size_t>(i - 1)];
    if (x.rows() != n || x.cols() != n) throw InvalidParameter("assemble: matrices must be n x n");
    const Matrix& a = p.a(i);
    for (Index j = 0; j < p.m(); ++j) {
      for (Index k = 0; k < p.m(); ++k) {
        if (a(j, k) != 0.0) s.block(j * n, k * n, n, n) += a(j, k) * x;
      }
    }
  }
  return s;
}

Matrix resolvent_partial_trace(const Pencil& p, const Matrix& lambda, std::span<const Matrix> mats, Index n) {
  const Matrix shifted = linalg::kron(lambda, Matrix::Identity(n, n)) - assemble(p, mats, n);
  const Eigen::PartialPivLU<Matrix> lu(shifted);
  const Matrix inv = lu.inverse();
  if (!inv.allFinite()) throw NumericFailure("singular resolvent");
  return linalg::partial_trace(inv, p.m(), n);
}

double master_inequality_bound(const Pencil& p, const Matrix& lambda, Index n) {
  const double m = static_cast<double>(p.m());
  const double s = linalg::hermitian_norm(p.sum_of_squares());
  const double inv = inverse_imag_norm(p, lambda);
  return m * m * m * s * s * std::pow(inv, 4) / (static_cast<double>(n) * static_cast<double>(n));
}

double gn_bound(const Pencil& p, const Matrix& lambda, Index n, double constant) {
  double k = linalg::hermitian_norm(p.a(0));
  for (int i = 1; i <= p.r(); ++i) k += 4.0 * linalg::hermitian_norm(p.a(i));
  const double inv = inverse_imag_norm(p, lambda);
  const double lam = linalg::operator_norm(lambda);
  return 4.0 * constant * (k + lam) * (k + lam) * std::pow(inv, 7) /
         (static_cast<double>(n) * static_cast<double>(n));
}

double expected_norm_formula(Index n) {
  const double nn = static_cast<double>(n);
  return 2.0 + 2.0 * std::sqrt(std::log(2.0 * nn) / (2.0 * nn));
}

// --- master equation -------------------------------------------------------

RunRecord master_equation_residual(const Pencil& p, const Matrix& lambda, Index n, long trials,
                                   std::uint64_t seed, const RunOptions& opts) {
  const double inv_norm = inverse_imag_norm(p, lambda);
  require_positive(static_cast<long>(n), "n");
  require_positive(trials, "trials");
  const Index m = p.m();

  RunRecord rec;
  rec.experiment_id = "master-equation";
  rec.seed = SeedSpec{seed, 0, 0};
  rec.params = Json{{"pencil", pencil_json(p)}, {"lambda", matrix_json(lambda)}, {"n", n}, {"trials", trials}};
  push_matrix_labels(rec.labels, "R", m);
  rec.labels.push_back("norm_H");

  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    const auto mats = sample_tuple(p.r(), n, SeedSpec{seed, static_cast<std::uint64_t>(t), 0});
    const Matrix h = resolvent_partial_trace(p, lambda, mats, n);
    std::vector<double> obs;
    obs.reserve(rec.labels.size());
    push_matrix(obs, mde_residual(p, lambda, h));
    obs.push_back(linalg::operator_norm(h));
    return obs;
  });
  rec.aggregate();

  double mean_sq = 0.0;
  double se_sq = 0.0;
  for (std::size_t j = 0; j + 1 < rec.labels.size(); ++j) {
    mean_sq += rec.mean[j] * rec.mean[j];
    se_sq += rec.std_error[j] * rec.std_error[j];
  }
  // Absolute floor for pencils without randomness, where every residual is
  // pure roundoff.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + linalg::operator_norm(lambda)) *
                       (1.0 + static_cast<double>(m));
  const double mean_norm = std::sqrt(mean_sq);
  const double se_norm = std::sqrt(se_sq);
  rec.checks.push_back({"residual", mean_norm, 3.0 * se_norm + floor, mean_norm <= 3.0 * se_norm + floor});

  const auto norms = rec.column("norm_H");
  const double max_h = *std::max_element(norms.begin(), norms.end());
  rec.checks.push_back({"resolvent_bound", max_h, inv_norm, max_h <= inv_norm * (1.0 + 1e-10)});
  rec.summary = Json{{"mean_residual_norm", mean_norm}, {"stderr_norm", se_norm}, {"max_norm_H", max_h},
                     {"inverse_imag_norm", inv_norm}};
  return rec;
}

// --- master inequality -----------------------------------------------------

ScanResult master_inequality_scan(const Pencil& p, const Matrix& lambda, const std::vector<Index>& n_list,
                                  long trials, std::uint64_t seed, const RunOptions& opts) {
  inverse_imag_norm(p, lambda);
  require_n_list(n_list);
  if (trials < 2) throw InvalidParameter("trials must be >= 2");
  const Index m = p.m();
  const std::size_t block = static_cast<std::size_t>(2 * m * m);

  ScanResult out;
  RunRecord& rec = out.record;
  rec.experiment_id = "master-inequality";
  rec.seed = SeedSpec{seed, 0, 0};
  Json nl = Json::array();
  for (Index n : n_list) nl.push_back(n);
  rec.params = Json{{"pencil", pencil_json(p)}, {"lambda", matrix_json(lambda)}, {"n_list", nl}, {"trials", trials}};
  for (Index n : n_list) push_matrix_labels(rec.labels, n_label(n) + ":H", m);

  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    std::vector<double> obs;
    obs.reserve(rec.labels.size());
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      const auto mats = sample_tuple(p.r(), n_list[k], SeedSpec{seed, static_cast<std::uint64_t>(t), 0}, k);
      push_matrix(obs, resolvent_partial_trace(p, lambda, mats, n_list[k]));
    }
    return obs;
  });
  rec.aggregate();

  constexpr double kPiFactor = std::numbers::pi * std::numbers::pi / 8.0;
  const auto tt = static_cast<double>(trials);
  std::vector<double> ns;
  std::vector<double> observed;
  Json levels = Json::array();
  bool small_constant_enough = true;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    std::vector<Matrix> h;
    h.reserve(static_cast<std::size_t>(trials));
    for (const auto& row : rec.per_trial) h.push_back(read_matrix(row, k * block, m));
    const Matrix g_hat = matrix_moments(h).mean;

    // E{Σ ai K ai K} with K = Hₙ - Gₙ equals minus the residual at Gₙ.
    std::vector<Matrix> z;
    z.reserve(h.size());
    for (const Matrix& hk : h) {
      const Matrix kk = hk - g_hat;
      z.push_back(-eta_map(p, kk) * kk * (tt / (tt - 1.0)));
    }
    const MatrixMoments zm = matrix_moments(z);
    const double residual = linalg::operator_norm(zm.mean);
    const double plug_in = linalg::operator_norm(mde_residual(p, lambda, g_hat));
    const double bound = master_inequality_bound(p, lambda, n_list[k]);
    const double err = zm.frobenius_error;

    const bool small_ok = residual <= bound + 3.0 * err;
    small_constant_enough = small_constant_enough && small_ok;
    const double large = kPiFactor * bound;
    rec.checks.push_back({n_label(n_list[k]), residual, large + 3.0 * err, residual <= large + 3.0 * err});
    levels.push_back(Json{{"n", n_list[k]},
                          {"residual", residual},
                          {"mc_error", err},
                          {"plug_in_residual", plug_in},
                          {"bound", bound},
                          {"bound_pi2_over_8", large},
                          {"within_bound", small_ok}});
    ns.push_back(static_cast<double>(n_list[k]));
    observed.push_back(residual);
  }
  out.fit = stats::loglog_fit(ns, observed);
  rec.summary = Json{{"levels", std::move(levels)},
                     {"constant_needed", small_constant_enough ? "m^3" : "pi^2/8 m^3"},
                     {"slope", out.fit.valid ? Json(out.fit.slope) : Json(nullptr)},
                     {"r_squared", out.fit.valid ? Json(out.fit.r_squared) : Json(nullptr)}};
  return out;
}

// --- Gₙ against G ------------------------------------------------------------

RunRecord gn_vs_g(const Pencil& p, const Matrix& lambda, Index n, long trials, std::uint64_t seed,
                  GnMethod method, const RunOptions& opts) {
  inverse_imag_norm(p, lambda);
  require_positive(static_cast<long>(n), "n");
  const Index m = p.m();

  RunRecord rec;
  rec.experiment_id = "gn-vs-g";
  rec.seed = SeedSpec{seed, 0, 0};
  rec.params = Json{{"pencil", pencil_json(p)},
                    {"lambda", matrix_json(lambda)},
                    {"n", n},
                    {"trials", method == GnMethod::exact ? 0L : trials},
                    {"method", method == GnMethod::exact ? "exact" : "monte-carlo"}};

  const Matrix g = solve_mde(p, lambda).G;
  Matrix g_hat;
  double err = 0.0;
  if (method == GnMethod::exact) {
    if (m != 1) throw InvalidParameter("exact Gn needs m = 1");
    const double sigma = std::sqrt(p.sum_of_squares()(0, 0).real());
    const Complex lam = lambda(0, 0);
    const double a0 = p.a(0)(0, 0).real();
    g_hat = Matrix::Constant(1, 1, gue::expected_trace(n, [&](double x) { return 1.0 / (lam - x); }, a0, sigma));
  } else {
    require_positive(trials, "trials");
    push_matrix_labels(rec.labels, "H", m);
    rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
      const auto mats = sample_tuple(p.r(), n, SeedSpec{seed, static_cast<std::uint64_t>(t), 0});
      std::vector<double> obs;
      push_matrix(obs, resolvent_partial_trace(p, lambda, mats, n));
      return obs;
    });
    rec.aggregate();
    std::vector<Matrix> h;
    for (const auto& row : rec.per_trial) h.push_back(read_matrix(row, 0, m));
    const MatrixMoments mm = matrix_moments(h);
    g_hat = mm.mean;
    err = mm.frobenius_error;
  }

  const double m3 = std::pow(static_cast<double>(m), 3);
  const double s = linalg::hermitian_norm(p.sum_of_squares());
  const double c = m3 * s * s;
  const double bound = gn_bound(p, lambda, n, c);
  const double bound_large = gn_bound(p, lambda, n, std::numbers::pi * std::numbers::pi / 8.0 * c);
  const double gap = linalg::operator_norm(g_hat - g);
  rec.checks.push_back({"gap", gap, bound_large + 3.0 * err, gap <= bound_large + 3.0 * err});
  rec.summary = Json{{"gap", gap},
                     {"mc_error", err},
                     {"bound", bound},
                     {"bound_pi2_over_8", bound_large},
                     {"constant_needed", gap <= bound + 3.0 * err ? "m^3" : "pi^2/8 m^3"},
                     {"G", matrix_json(g)},
                     {"Gn", matrix_json(g_hat)}};
  return rec;
}

// --- Poincaré variance -------------------------------------------------------

RunRecord variance_poincare_check(const Pencil& p, const TestFunction& f, Index n, long trials,
                                  std::uint64_t seed, const RunOptions& opts) {
  require_positive(static_cast<long>(n), "n");
  if (trials < 4) throw InvalidParameter("trials must be >= 4");

  RunRecord rec;
  rec.experiment_id = "poincare";
  rec.seed = SeedSpec{seed, 0, 0};
  rec.params = Json{{"pencil", pencil_json(p)}, {"test_function", f.name()}, {"n", n}, {"trials", trials}};
  rec.labels = {"trace_phi", "trace_dphi2"};
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    const auto mats = sample_tuple(p.r(), n, SeedSpec{seed, static_cast<std::uint64_t>(t), 0});
    const RealVector eig = linalg::hermitian_eigenvalues(assemble(p, mats, n));
    double d2 = 0.0;
    for (Index i = 0; i < eig.size(); ++i) d2 += f.derivative(eig(i)) * f.derivative(eig(i));
    return std::vector<double>{trace_of(f, eig), d2 / static_cast<double>(eig.size())};
  });
  rec.aggregate();

  const auto values = rec.column("trace_phi");
  const double var = stats::variance(values);
  const double var_err = stats::variance_std_error(values);
  const double s = linalg::hermitian_norm(p.sum_of_squares());
  const double nn = static_cast<double>(n);
  const double bound = s * s / (nn * nn) * rec.mean[1];
  const double rel_var = var > 0.0 ? var_err / var : 0.0;
  const double rel_bound = rec.mean[1] > 0.0 ? rec.std_error[1] / rec.mean[1] : 0.0;
  const double rel = std::sqrt(rel_var * rel_var + rel_bound * rel_bound);
  const double limit = bound * (1.0 + 3.0 * rel);
  rec.checks.push_back({"variance", var, limit, var <= limit});
  rec.summary = Json{{"variance", var}, {"variance_stderr", var_err}, {"bound", bound}, {"relative_mc_error", rel}};
  return rec;
}

// --- bias ---------------------------------------------------------------------

double free_expectation(const Pencil& p, const TestFunction& f, const FreeExpectationOptions& opts) {
  if (p.r() == 0 || zero_coefficients(p)) {
    return trace_of(f, linalg::hermitian_eigenvalues(p.a(0)));
  }
  DensityOptions dens;
  dens.mde = opts.mde;
  dens.richardson = false;
  const double reach = p.norm_bound() + 0.5;

  if (f.compactly_supported()) {
    const double lo = std::max(-f.param(), -reach);
    const double hi = std::min(f.param(), reach);
    if (!(hi > lo)) return 0.0;
    try {
      const auto grid = linear_grid(lo, hi, opts.bump_points);
      const SpectralDensity sd = spectral_density(p, grid, opts.bump_eta, dens);
      std::vector<double> y(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) y[i] = f.value(grid[i]) * sd.rho[i];
      return trapezoid(grid, y);
    } catch (const SolverFailure&) {
      // A spectral edge inside (-a, a) stalls the solver at tiny η.
    }
  }

  const double half = f.compactly_supported() ? std::min(f.param(), reach) : reach + 2.0;
  const double step = opts.eta / 4.0 / static_cast<double>(opts.oversampling);
  const int points = static_cast<int>(std::ceil(2.0 * half / step)) + 1;
  const auto grid = linear_grid(-half, half, points);
  double level[3];
  for (int j = 0; j < 3; ++j) {
    const SpectralDensity sd = spectral_density(p, grid, opts.eta / static_cast<double>(1 << j), dens);
    std::vector<double> y(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) y[i] = f.value(grid[i]) * sd.rho[i];
    level[j] = trapezoid(grid, y);
  }
  return (8.0 * level[2] - 6.0 * level[1] + level[0]) / 3.0;
}

ScanResult bias_scan(const Pencil& p, const TestFunction& f, const std::vector<Index>& n_list, long trials,
                     std::uint64_t seed, BiasMethod method, const RunOptions& opts) {
  require_n_list(n_list);
  if (method == BiasMethod::automatic) method = p.m() == 1 ? BiasMethod::exact : BiasMethod::monte_carlo;
  if (method == BiasMethod::exact && p.m() != 1) throw InvalidParameter("exact bias needs m = 1");
  if (method == BiasMethod::monte_carlo) require_positive(trials, "trials");

  ScanResult out;
  RunRecord& rec = out.record;
  rec.experiment_id = "bias";
  rec.seed = SeedSpec{seed, 0, 0};
  Json nl = Json::array();
  for (Index n : n_list) nl.push_back(n);
  rec.params = Json{{"pencil", pencil_json(p)},
                    {"test_function", f.name()},
                    {"n_list", nl},
                    {"trials", method == BiasMethod::exact ? 0L : trials},
                    {"method", method == BiasMethod::exact ? "exact" : "monte-carlo"}};

  const double free_side = free_expectation(p, f);
  std::vector<double> expectation(n_list.size());
  std::vector<double> err(n_list.size(), 0.0);
  if (method == BiasMethod::exact) {
    const double a0 = p.a(0)(0, 0).real();
    const double sigma = p.r() == 0 ? 0.0 : std::sqrt(p.sum_of_squares()(0, 0).real());
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      expectation[k] = gue::expected_trace(n_list[k], [&](double x) { return Complex(f.value(x)); }, a0, sigma).real();
    }
  } else {
    for (Index n : n_list) rec.labels.push_back(n_label(n));
    rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
      std::vector<double> obs;
      for (std::size_t k = 0; k < n_list.size(); ++k) {
        const auto mats = sample_tuple(p.r(), n_list[k], SeedSpec{seed, static_cast<std::uint64_t>(t), 0}, k);
        obs.push_back(trace_of(f, linalg::hermitian_eigenvalues(assemble(p, mats, n_list[k]))));
      }
      return obs;
    });
    rec.aggregate();
    expectation = rec.mean;
    err = rec.std_error;
  }

  std::vector<double> ns;
  std::vector<double> observed;
  Json levels = Json::array();
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    const double bias = std::abs(expectation[k] - free_side);
    levels.push_back(Json{{"n", n_list[k]}, {"expectation", expectation[k]}, {"bias", bias}, {"mc_error", err[k]}});
    ns.push_back(static_cast<double>(n_list[k]));
    observed.push_back(bias);
  }
  out.fit = stats::loglog_fit(ns, observed);
  rec.summary = Json{{"free_expectation", free_side},
                     {"levels", std::move(levels)},
                     {"slope", out.fit.valid ? Json(out.fit.slope) : Json(nullptr)},
                     {"r_squared", out.fit.valid ? Json(out.fit.r_squared) : Json(nullptr)}};
  return out;
}

// --- containment --------------------------------------------------------------

RunRecord spectrum_containment(const Pencil& p, Index n, double eps, long trials, std::uint64_t seed,
                               const RunOptions& opts) {
  require_positive(static_cast<long>(n), "n");
  require_positive(trials, "trials");
  if (!(eps > 0.0)) throw InvalidParameter("eps must be > 0");

  RunRecord rec;
  rec.experiment_id = "containment";
  rec.seed = SeedSpec{seed, 0, 0};
  rec.params = Json{{"pencil", pencil_json(p)}, {"n", n}, {"eps", eps}, {"trials", trials}};
  rec.labels = {"outliers"};

  const std::vector<Interval> supp = support(p);
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    const auto mats = sample_tuple(p.r(), n, SeedSpec{seed, static_cast<std::uint64_t>(t), 0});
    const RealVector eig = linalg::hermitian_eigenvalues(assemble(p, mats, n));
    long count = 0;
    for (Index i = 0; i < eig.size(); ++i) {
      const double x = eig(i);
      const bool inside =
          std::any_of(supp.begin(), supp.end(), [&](const Interval& iv) { return x > iv.lo - eps && x < iv.hi + eps; });
      if (!inside) ++count;
    }
    return std::vector<double>{static_cast<double>(count)};
  });
  rec.aggregate();

  std::map<long, long> histogram;
  long with_outliers = 0;
  for (const auto& row : rec.per_trial) {
    const auto c = static_cast<long>(row[0]);
    ++histogram[c];
    if (c > 0) ++with_outliers;
  }
  const double allowed = std::floor(0.1 * static_cast<double>(trials));
  rec.checks.push_back({"trials_with_outliers", static_cast<double>(with_outliers), allowed,
                        static_cast<double>(with_outliers) <= allowed});
  Json hist = Json::object();
  for (const auto& [count, freq] : histogram) hist[std::to_string(count)] = freq;
  Json sj = Json::array();
  for (const Interval& iv : supp) sj.push_back(Json::array({iv.lo, iv.hi}));
  rec.summary = Json{{"support", std::move(sj)},
                     {"zero_fraction", 1.0 - static_cast<double>(with_outliers) / static_cast<double>(trials)},
                     {"histogram", std::move(hist)}};
  return rec;
}

// --- norms of polynomials ---------------------------------------------------

namespace {

// True when 0 lies in the spectrum of the pencil, judged at height η by the
// same ratio test the support scan uses.
bool zero_in_spectrum(const Pencil& e, double eta) {
  const Index m = e.m();
  const Matrix id = Matrix::Identity(m, m);
  try {
    const auto coarse = solve_mde(e, Complex(0.0, eta) * id);
    const auto fine = solve_mde(e, Complex(0.0, eta / 2.0) * id, {}, coarse.G);
    const double r1 = -coarse.G.trace().imag() / static_cast<double>(m) / std::numbers::pi;
    const double r2 = -fine.G.trace().imag() / static_cast<double>(m) / std::numbers::pi;
    return r2 > 1e-4 && r2 >= 0.75 * r1;
  } catch (const SolverFailure&) {
    // Only the spectral edge slows the iteration down this much.
    return true;
  }
}

// Spectrum membership of λ for c0 + Σ ci xi + c Σ xi², through the
// self-adjoint embedding of the linearization of p - λ.
bool quadratic_spectrum_contains(const std::vector<double>& c, double lambda, double eta) {
  std::vector<Matrix> a;
  a.reserve(c.size());
  for (double v : c) a.push_back(Matrix::Constant(1, 1, v));
  a[0](0, 0) -= lambda;
  const LinearPencil lin = linearize_quadratic(a);
  return zero_in_spectrum(selfadjoint_embed(lin.coefficients()), eta);
}

std::optional<std::vector<double>> quadratic_shape(const NCPolynomial& p) {
  if (!p.is_selfadjoint()) return std::nullopt;
  const int r = p.num_vars();
  std::vector<double> c(static_cast<std::size_t>(r + 2), 0.0);
  std::optional<double> square;
  int squares = 0;
  for (const auto& [word, coeff] : p.terms()) {
    if (coeff.imag() != 0.0) return std::nullopt;
    if (word.empty()) {
      c[0] = coeff.real();
    } else if (word.size() == 1) {
      c[static_cast<std::size_t>(word[0] + 1)] = coeff.real();
    } else if (word.size() == 2 && word[0] == word[1]) {
      if (square && *square != coeff.real()) return std::nullopt;
      square = coeff.real();
      ++squares;
    } else {
      return std::nullopt;
    }
  }
  if (!square || squares != r) return std::nullopt;
  c[static_cast<std::size_t>(r + 1)] = *square;
  return c;
}

double bisect_edge(const std::vector<double>& c, double inside, double outside, double eta) {
  for (int it = 0; it < 40 && std::abs(inside - outside) > 1e-7; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (quadratic_spectrum_contains(c, mid, eta)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return 0.5 * (inside + outside);
}

int default_fock_depth(int r) {
  int d = 16;
  while (d > 2) {
    double size = 0.0;
    double pw = 1.0;
    for (int k = 0; k <= d; ++k) {
      size += pw;
      pw *= std::max(r, 1);
    }
    if (size <= static_cast<double>(1 << 18)) break;
    --d;
  }
  return d;
}

}  // namespace

FreeNorm free_polynomial_norm(const NCPolynomial& p, int fock_depth) {
  const int r = p.num_vars();
  if (p.is_zero()) return {0.0, "pencil", 0};

  if (p.degree() <= 1) {
    std::vector<Matrix> b(static_cast<std::size_t>(r + 1), Matrix::Zero(1, 1));
    for (const auto& [word, coeff] : p.terms()) {
      b[word.empty() ? 0 : static_cast<std::size_t>(word[0] + 1)](0, 0) = coeff;
    }
    return {pencil_norm(selfadjoint_embed(b)), "pencil", 0};
  }

  if (const auto c = quadratic_shape(p)) {
    double reach = std::abs((*c)[0]) + 4.0 * static_cast<double>(r) * std::abs(c->back()) + 0.5;
    for (int i = 1; i <= r; ++i) reach += 2.0 * std::abs((*c)[static_cast<std::size_t>(i)]);
    constexpr int kScan = 401;
    constexpr double kScanEta = 1e-3;
    constexpr double kRefineEta = 1e-5;
    const auto grid = linear_grid(-reach, reach, kScan);
    int first = -1;
    int last = -1;
    for (int i = 0; i < kScan; ++i) {
      if (quadratic_spectrum_contains(*c, grid[static_cast<std::size_t>(i)], kScanEta)) {
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first > 0 && last < kScan - 1) {
      const double top = bisect_edge(*c, grid[static_cast<std::size_t>(last)], grid[static_cast<std::size_t>(last + 1)],
                                     kRefineEta);
      const double bottom = bisect_edge(*c, grid[static_cast<std::size_t>(first)],
                                        grid[static_cast<std::size_t>(first - 1)], kRefineEta);
      return {std::max(std::abs(top), std::abs(bottom)), "linearization", 0};
    }
  }

  const int depth = fock_depth > 0 ? fock_depth : default_fock_depth(r);
  const auto basis = fock::make_basis(std::max(r, 1), depth);
  const fock::FockNorm fn = fock::fock_norm(fock::evaluate_semicircular(p, basis));
  return {fn.value, "fock", fn.depth};
}

RunRecord norm_convergence(const NCPolynomial& p, const std::vector<Index>& n_list, long trials,
                           std::uint64_t seed, const RunOptions& opts) {
  require_n_list(n_list);
  require_positive(trials, "trials");

  RunRecord rec;
  rec.experiment_id = "norm-convergence";
  rec.seed = SeedSpec{seed, 0, 0};
  Json nl = Json::array();
  for (Index n : n_list) nl.push_back(n);
  rec.params = Json{{"polynomial", p.to_string()}, {"n_list", nl}, {"trials", trials}};
  for (Index n : n_list) rec.labels.push_back(n_label(n));

  const bool selfadjoint = p.is_selfadjoint();
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    std::vector<double> obs;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      const auto mats = sample_tuple(p.num_vars(), n_list[k], SeedSpec{seed, static_cast<std::uint64_t>(t), 0}, k);
      const Matrix value = evaluate(p, mats);
      obs.push_back(selfadjoint ? linalg::hermitian_norm(value) : linalg::operator_norm(value));
    }
    return obs;
  });
  rec.aggregate();

  const FreeNorm target = free_polynomial_norm(p);
  Json gaps = Json::array();
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    gaps.push_back(Json{{"n", n_list[k]}, {"mean_norm", rec.mean[k]}, {"gap", std::abs(rec.mean[k] - target.value)}});
  }
  rec.summary = Json{{"target", target.value}, {"target_method", target.method}, {"levels", std::move(gaps)}};
  if (target.method == "fock") rec.summary["fock_depth"] = target.depth;
  return rec;
}

RunRecord expected_norm_bound(const std::vector<Index>& n_list, long trials, std::uint64_t seed,
                              const RunOptions& opts) {
  require_n_list(n_list);
  require_positive(trials, "trials");

  RunRecord rec;
  rec.experiment_id = "expected-norm";
  rec.seed = SeedSpec{seed, 0, 0};
  Json nl = Json::array();
  for (Index n : n_list) nl.push_back(n);
  rec.params = Json{{"n_list", nl}, {"trials", trials}};
  for (Index n : n_list) rec.labels.push_back(n_label(n));
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    std::vector<double> obs;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      const auto x = sample_tuple(1, n_list[k], SeedSpec{seed, static_cast<std::uint64_t>(t), 0}, k);
      obs.push_back(linalg::hermitian_norm(x[0]));
    }
    return obs;
  });
  rec.aggregate();

  Json bounds = Json::array();
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    const double b = expected_norm_formula(n_list[k]);
    rec.checks.push_back({n_label(n_list[k]), rec.mean[k], b, rec.mean[k] <= b});
    rec.checks.push_back({n_label(n_list[k]) + ":global", rec.mean[k], 4.0, rec.mean[k] <= 4.0});
    bounds.push_back(Json{{"n", n_list[k]}, {"bound", b}});
  }
  rec.summary = Json{{"bounds", std::move(bounds)}};
  return rec;
}

// --- non-self-adjoint ensembles --------------------------------------------

double power_norm_target(int p) {
  if (p < 1) throw InvalidParameter("power must be >= 1");
  const double pp = static_cast<double>(p);
  return std::sqrt(std::pow(pp + 1.0, pp + 1.0) / std::pow(pp, pp));
}

RunRecord power_norm(int power, Index n, long trials, std::uint64_t seed, double tolerance, const RunOptions& opts) {
  const double target = power_norm_target(power);
  require_positive(static_cast<long>(n), "n");
  require_positive(trials, "trials");

  RunRecord rec;
  rec.experiment_id = "power-norm";
  rec.seed = SeedSpec{seed, 0, 0};
  rec.params = Json{{"p", power}, {"n", n}, {"trials", trials}, {"tol", tolerance}};
  rec.labels = {"norm"};
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    const Matrix y = sample_grm(n, 1.0 / static_cast<double>(n), SeedSpec{seed, static_cast<std::uint64_t>(t), 0}).entries;
    // largest eigenvalue of (Y^p)* Y^p without forming the power
    auto apply = [&](const Vector& x, Vector& out) {
      Vector v = x;
      for (int k = 0; k < power; ++k) v = (y * v).eval();
      for (int k = 0; k < power; ++k) v = (y.adjoint() * v).eval();
      out = std::move(v);
    };
    const double top = linalg::lanczos_max_eigenvalue(apply, n, {.max_iterations = 1000, .tol = 1e-12});
    return std::vector<double>{std::sqrt(std::max(0.0, top))};
  });
  rec.aggregate();
  const double rel = std::abs(rec.mean[0] - target) / target;
  rec.checks.push_back({"relative_gap", rel, tolerance, rel <= tolerance});
  rec.summary = Json{{"target", target}, {"mean_norm", rec.mean[0]}};
  return rec;
}

double tensor_sum_norm(std::span<const Matrix> u, std::span<const Matrix> v, const linalg::LanczosOptions& opts) {
  if (u.size() != v.size() || u.empty()) throw InvalidParameter("tensor_sum_norm: need equal, non-empty tuples");
  const Index n = u[0].rows();
  const Index nv = v[0].rows();
  std::vector<Matrix> ut(u.size());
  std::vector<Matrix> vh(v.size());
  std::vector<Matrix> uc(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    ut[i] = u[i].transpose();
    vh[i] = v[i].adjoint();
    uc[i] = u[i].conjugate();
  }
  // With x = vec of the column-major nv x n matrix M, (U ⊗ V) x = vec(V M Uᵀ).
  auto apply = [&](const Vector& x, Vector& y) {
    const Eigen::Map<const Matrix> mx(x.data(), nv, n);
    Matrix ax = Matrix::Zero(nv, n);
    for (std::size_t i = 0; i < u.size(); ++i) ax.noalias() += v[i] * mx * ut[i];
    Matrix back = Matrix::Zero(nv, n);
    for (std::size_t i = 0; i < u.size(); ++i) back.noalias() += vh[i] * ax * uc[i];
    y = Eigen::Map<const Vector>(back.data(), nv * n);
  };
  const double top = linalg::lanczos_max_eigenvalue(apply, n * nv, opts);
  return std::sqrt(std::max(0.0, top));
}

RunRecord unitary_pair_norm(int r, Index n, long trials, std::uint64_t seed, UnitarySampler sampler, bool identical,
                            double tolerance, const RunOptions& opts) {
  if (r < 2) throw InvalidParameter("r must be >= 2");
  require_positive(static_cast<long>(n), "n");
  require_positive(trials, "trials");
  if (n * n > kUnitaryPairMaxDim) {
    throw InvalidParameter("n^2 = " + std::to_string(n * n) + " exceeds the cap " + std::to_string(kUnitaryPairMaxDim));
  }

  RunRecord rec;
  rec.experiment_id = "unitary-pairs";
  rec.seed = SeedSpec{seed, 0, 0};
  rec.params = Json{{"r", r},
                    {"n", n},
                    {"trials", trials},
                    {"sampler", sampler == UnitarySampler::psi ? "psi" : "qr"},
                    {"identical", identical},
                    {"tol", tolerance}};
  rec.labels = {"norm"};
  auto draw = [&](const SeedSpec& s) {
    return sampler == UnitarySampler::psi ? pseudo_haar_unitary(n, s) : haar_unitary_qr(n, s);
  };
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    const SeedSpec base{seed, static_cast<std::uint64_t>(t), 0};
    std::vector<Matrix> u;
    std::vector<Matrix> v;
    for (int i = 0; i < r; ++i) u.push_back(draw(base.with_stream(static_cast<std::uint64_t>(i))));
    for (int i = 0; i < r; ++i) {
      v.push_back(identical ? Matrix(u[static_cast<std::size_t>(i)].conjugate())
                            : Matrix(draw(base.with_stream(static_cast<std::uint64_t>(r + i))).conjugate()));
    }
    return std::vector<double>{tensor_sum_norm(u, v)};
  });
  rec.aggregate();

  const double target = identical ? static_cast<double>(r) : 2.0 * std::sqrt(static_cast<double>(r - 1));
  const double rel = std::abs(rec.mean[0] - target) / target;
  // The QR sampler collects evidence only; no claim is attached to it.
  if (sampler == UnitarySampler::psi || identical) {
    rec.checks.push_back({"relative_gap", rel, tolerance, rel <= tolerance});
  }
  rec.summary = Json{{"target", target}, {"mean_norm", rec.mean[0]}, {"relative_gap", rel}};
  return rec;
}

RunRecord circular_sum_bounds(const std::vector<Matrix>& a, Index n, long trials, std::uint64_t seed,
                              const RunOptions& opts) {
  if (a.empty()) throw InvalidParameter("need at least one coefficient");
  require_positive(static_cast<long>(n), "n");
  require_positive(trials, "trials");
  const Index p = a[0].rows();
  const Index q = a[0].cols();
  Matrix outer = Matrix::Zero(p, p);
  Matrix inner = Matrix::Zero(q, q);
  for (const Matrix& ai : a) {
    if (ai.rows() != p || ai.cols() != q) throw InvalidParameter("coefficients must share one shape");
    outer += ai * ai.adjoint();
    inner += ai.adjoint() * ai;
  }
  const double outer_norm = linalg::hermitian_norm(outer);
  if (outer_norm > 1.0 + 1e-12) throw InvalidParameter("||sum a a*|| must be <= 1");
  const double c = linalg::hermitian_norm(inner);
  const double upper = (std::sqrt(c) + 1.0) * (std::sqrt(c) + 1.0);
  const double lower = (std::sqrt(c) - 1.0) * (std::sqrt(c) - 1.0);

  RunRecord rec;
  rec.experiment_id = "circular-bounds";
  rec.seed = SeedSpec{seed, 0, 0};
  Json coeffs = Json::array();
  for (const Matrix& ai : a) coeffs.push_back(matrix_json(ai));
  rec.params = Json{{"coefficients", std::move(coeffs)}, {"n", n}, {"trials", trials}};
  rec.labels = {"max_sp", "min_sp"};
  rec.per_trial = run_trials(trials, opts.threads, [&](long t) {
    Matrix s = Matrix::Zero(p * n, q * n);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Matrix y = sample_grm(n, 1.0 / static_cast<double>(n),
                                  SeedSpec{seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)})
                           .entries;
      s += linalg::kron(a[i], y);
    }
    const RealVector ev = linalg::hermitian_eigenvalues(s.adjoint() * s);
    return std::vector<double>{ev(ev.size() - 1), ev(0)};
  });
  rec.aggregate();
  rec.checks.push_back({"max_sp", rec.mean[0], upper * 1.05, rec.mean[0] <= upper * 1.05});
  if (c >= 1.0) rec.checks.push_back({"min_sp", rec.mean[1], lower - 0.05, rec.mean[1] >= lower - 0.05});
  rec.summary = Json{{"c", c}, {"upper_target", upper}, {"lower_target", lower}};
  return rec;
}

}  // namespace spectra::experiments
