// Desk-scale acceptance run: one PASS/FAIL line per criterion, nonzero exit
// status when any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles/oracles.hpp"
#include "spectra/dyson.hpp"
#include "spectra/experiments.hpp"
#include "spectra/fock.hpp"
#include "spectra/linalg.hpp"
#include "spectra/pencil.hpp"
#include "spectra/sampling.hpp"
#include "spectra/stats.hpp"

using namespace spectra;
namespace ex = spectra::experiments;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ex::RunOptions g_opts;

Matrix scalar(Complex z, Index m) { return z * Matrix::Identity(m, m); }

// --- criteria ---------------------------------------------------------------

Verdict semicircle_norm() {
  const auto rec = ex::norm_convergence(NCPolynomial::variable(1, 0), {1000}, 20, 1001, g_opts);
  const double mean = rec.mean[0];
  return {mean >= 1.90 && mean <= 2.05, fmt("mean ||X|| = %.5f, window [1.90, 2.05]", mean)};
}

Verdict catalan_moments() {
  const Index n = 1000;
  const long trials = 20;
  const auto values = ex::run_trials(trials, g_opts.threads, [&](long t) {
    const Matrix x = sample_sgrm(n, 1.0 / n, SeedSpec{1002, static_cast<std::uint64_t>(t), 0}).entries;
    const RealVector ev = linalg::hermitian_eigenvalues(x);
    std::vector<double> m(3, 0.0);
    for (Index i = 0; i < n; ++i) {
      const double e2 = ev(i) * ev(i);
      m[0] += e2;
      m[1] += e2 * e2;
      m[2] += e2 * e2 * e2;
    }
    for (double& v : m) v /= static_cast<double>(n);
    return m;
  });
  bool ok = true;
  std::string detail;
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> col;
    for (const auto& row : values) col.push_back(row[std::size_t(k - 1)]);
    const double mu = stats::mean(col);
    const double se = stats::std_error(col);
    const double target = oracle::catalan(k);
    ok = ok && std::abs(mu - target) <= 3.0 * se;
    detail += fmt("k=%d: %.5f (se %.1e) ", k, mu, se);
  }
  const auto basis = fock::make_basis(1, 6);
  const auto x = fock::semicircular_op(basis, 1);
  const auto x2 = x * x;
  const bool exact = fock::vacuum_expectation(x2) == Complex(1.0) && fock::vacuum_expectation(x2 * x2) == Complex(2.0) &&
                     fock::vacuum_expectation(x2 * x2 * x2) == Complex(5.0);
  detail += exact ? "| Fock d=6 exact" : "| Fock d=6 mismatch";
  return {ok && exact, detail};
}

Verdict mde_closed_form() {
  const Pencil p = Pencil::semicircle();
  std::mt19937_64 gen(1003);
  std::uniform_real_distribution<double> re(-4.0, 4.0);
  std::uniform_real_distribution<double> logim(std::log(0.1), std::log(10.0));
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Complex z(re(gen), std::exp(logim(gen)));
    worst = std::max(worst, std::abs(scalar_stieltjes(p, z) - oracle::semicircle_g(z)));
  }
  return {worst <= 1e-10, fmt("max |g - g_closed| = %.2e over 100 points, tolerance 1e-10", worst)};
}

Verdict master_equation() {
  Matrix b0(2, 2);
  b0 << 0.5, Complex(0.2, -0.1), Complex(0.2, 0.1), -0.3;
  Matrix b1(2, 2);
  b1 << 1.0, Complex(0.0, 0.4), Complex(0.0, -0.4), 0.6;
  Matrix b2(2, 2);
  b2 << -0.2, 0.7, 0.7, 0.9;
  const std::vector<Pencil> pencils{
      Pencil::semicircle(1, 1), Pencil::semicircle(1, 2), Pencil({b0, b1}), Pencil({b0, b1, b2})};
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1004;
  for (const Pencil& p : pencils) {
    for (Complex z : {Complex(0, 1), Complex(0, 2)}) {
      const auto rec = ex::master_equation_residual(p, scalar(z, p.m()), 100, 200, seed++, g_opts);
      const double ratio = rec.summary["mean_residual_norm"].get<double>() / rec.summary["stderr_norm"].get<double>();
      ok = ok && rec.checks[0].pass;
      detail += fmt("m%ld r%d %gi: %.2f se; ", static_cast<long>(p.m()), p.r(), z.imag(), ratio);
    }
  }
  return {ok, detail};
}

Verdict master_inequality() {
  const auto scan = ex::master_inequality_scan(Pencil::semicircle(), scalar(Complex(0, 1), 1), {50, 100, 200, 400},
                                               400, 1005, g_opts);
  const double slope = scan.fit.slope;
  const bool slope_ok = scan.fit.valid && slope >= -2.6 && slope <= -1.4;
  return {slope_ok && scan.record.passed(),
          fmt("slope = %.3f, window [-2.6, -1.4]; per-n bound checks %s", slope,
              scan.record.passed() ? "all pass" : "FAIL")};
}

Verdict gn_vs_g() {
  const auto rec = ex::gn_vs_g(Pencil::semicircle(), scalar(Complex(0, 2), 1), 200, 500, 1006,
                               ex::GnMethod::monte_carlo, g_opts);
  return {rec.passed(), fmt("gap = %.2e, bound + 3 MC error = %.2e", rec.checks[0].observed, rec.checks[0].bound)};
}

Verdict poincare() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1007;
  for (const char* name : {"gauss", "cosine", "bump"}) {
    const auto rec = ex::variance_poincare_check(Pencil::semicircle(), TestFunction::parse(name), 100, 500, seed++, g_opts);
    ok = ok && rec.passed();
    detail += fmt("%s: %.2e <= %.2e; ", name, rec.checks[0].observed, rec.checks[0].bound);
  }
  return {ok, detail};
}

Verdict bias_decay() {
  const auto scan = ex::bias_scan(Pencil::semicircle(), TestFunction(TestFunction::Kind::bump), {50, 100, 200, 400},
                                  200, 1008, ex::BiasMethod::automatic, g_opts);
  const double slope = scan.fit.slope;
  return {scan.fit.valid && slope >= -2.6 && slope <= -1.4,
          fmt("bump slope = %.3f (r^2 %.4f), window [-2.6, -1.4]", slope, scan.fit.r_squared)};
}

Verdict containment() {
  const auto rec = ex::spectrum_containment(Pencil::semicircle(1, 2), 400, 0.3, 10, 1009, g_opts);
  const auto col = rec.column("outliers");
  long clean = 0;
  for (double v : col) clean += v == 0.0 ? 1 : 0;
  return {clean >= 9, fmt("%ld/10 trials without outliers beyond sp(s) + 0.3", clean)};
}

Verdict power_norms() {
  bool ok = true;
  std::string detail;
  for (int p = 1; p <= 3; ++p) {
    const auto rec = ex::power_norm(p, 1000, 10, 1010 + static_cast<std::uint64_t>(p), 0.05, g_opts);
    const double target = ex::power_norm_target(p);
    const double rel = std::abs(rec.mean[0] - target) / target;
    ok = ok && rel <= 0.05;
    detail += fmt("p=%d: %.4f vs %.5f (%.2f%%); ", p, rec.mean[0], target, 100.0 * rel);
  }
  return {ok, detail};
}

Verdict circular_sums() {
  Matrix e1 = Matrix::Zero(2, 1);
  Matrix e2 = Matrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  const auto rec = ex::circular_sum_bounds({e1, e2}, 500, 3, 1014, g_opts);
  const double hi = rec.mean[0];
  const double lo = rec.mean[1];
  const double hi_t = oracle::mp_upper(2.0);
  const double lo_t = oracle::mp_lower(2.0);
  const bool ok = std::abs(hi - hi_t) <= 0.05 * hi_t && std::abs(lo - lo_t) <= 0.05;
  return {ok, fmt("max sp = %.4f vs %.4f (5%%), min sp = %.4f vs %.4f (0.05)", hi, hi_t, lo, lo_t)};
}

Verdict unitary_pairs() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1015;
  for (int r : {2, 3}) {
    for (Index n : {60, 80}) {
      const auto rec = ex::unitary_pair_norm(r, n, 5, seed++, ex::UnitarySampler::psi, false, 0.10, g_opts);
      const double target = 2.0 * std::sqrt(static_cast<double>(r - 1));
      const double rel = std::abs(rec.mean[0] - target) / target;
      ok = ok && rel <= 0.10;
      detail += fmt("r=%d n=%ld: %.4f (%.1f%%); ", r, static_cast<long>(n), rec.mean[0], 100.0 * rel);
    }
  }
  return {ok, detail};
}

Verdict expected_norm() {
  const auto rec = ex::expected_norm_bound({4, 16, 64, 256, 1000}, 50, 1019, g_opts);
  std::string detail;
  for (const auto& c : rec.checks) {
    if (c.label.find(':') == std::string::npos) detail += fmt("%s: %.4f <= %.4f; ", c.label.c_str(), c.observed, c.bound);
  }
  return {rec.passed(), detail};
}

// smallest singular value relative to the largest
double singular_proxy(const Matrix& a) {
  const double top = linalg::operator_norm(a);
  return top == 0.0 ? 0.0 : linalg::smallest_singular_value(a) / top;
}

Matrix random_matrix(Index rows, Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = Complex(g(gen), g(gen));
  }
  return a;
}

Matrix random_hermitian(Index n, std::mt19937_64& gen) {
  const Matrix a = random_matrix(n, n, gen);
  return 0.5 * (a + a.adjoint());
}

Verdict linearization_zero_sets() {
  constexpr double kProxy = 1e-9;
  std::mt19937_64 gen(1020);
  std::uniform_int_distribution<int> dim(1, 3);
  int agree = 0;
  int total = 0;
  int singular = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const Index m = dim(gen);
    const Index n = std::max<Index>(1, 6 / (2 * m));
    std::vector<Matrix> xs{random_hermitian(n, gen), random_hermitian(n, gen)};

    // Step I: B = b0 ⊗ 1 + b1 ⊗ x1 + b2 ⊗ x2 against its self-adjoint embedding
    std::vector<Matrix> b{random_matrix(m, m, gen), random_matrix(m, m, gen), random_matrix(m, m, gen)};
    const Matrix direct = LinearPencil(b).evaluate(xs);
    Eigen::ComplexEigenSolver<Matrix> ces(direct);
    std::vector<Matrix> shifted = b;
    shifted[0] -= ces.eigenvalues()(inst % direct.rows()) * Matrix::Identity(m, m);
    for (const auto& bb : {b, shifted}) {
      const bool s_direct = singular_proxy(LinearPencil(bb).evaluate(xs)) <= kProxy;
      const bool s_embed = singular_proxy(pencil_evaluate(selfadjoint_embed(bb), xs)) <= kProxy;
      agree += s_direct == s_embed ? 1 : 0;
      singular += s_direct ? 1 : 0;
      ++total;
    }

    // Step II: a0 + a1 x1 + a2 x2 + a3 (x1² + x2²) against its linearization
    std::vector<Matrix> a;
    for (int i = 0; i < 4; ++i) a.push_back(random_hermitian(m, gen));
    const Matrix q = quadratic_evaluate(a, xs);
    const RealVector ev = linalg::hermitian_eigenvalues(q);
    std::vector<Matrix> a_shift = a;
    a_shift[0] -= ev(inst % ev.size()) * Matrix::Identity(m, m);
    for (const auto& aa : {a, a_shift}) {
      const bool s_direct = singular_proxy(quadratic_evaluate(aa, xs)) <= kProxy;
      const bool s_lin = singular_proxy(linearize_quadratic(aa).evaluate(xs)) <= kProxy;
      agree += s_direct == s_lin ? 1 : 0;
      singular += s_direct ? 1 : 0;
      ++total;
    }
  }
  // every shifted instance lands on the zero set, every unshifted one misses it
  return {agree == total && singular == total / 2,
          fmt("%d/%d evaluations agree on singularity (proxy 1e-9), %d singular", agree, total, singular)};
}

Verdict fock_closed_form() {
  double worst = 0.0;
  for (int d : {5, 10, 20}) {
    const auto x = fock::semicircular_op(fock::make_basis(1, d), 1);
    worst = std::max(worst, std::abs(fock::fock_norm(x).value - oracle::truncated_semicircular_norm(d)));
  }
  return {worst <= 1e-10, fmt("max |norm - 2cos(pi/(d+2))| = %.2e for d in {5, 10, 20}", worst)};
}

struct Criterion {
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra acceptance checks"};
  std::vector<int> only;
  app.add_option("criteria", only, "criterion numbers to run (default: all)");
  app.add_option("--threads", g_opts.threads, "worker threads for Monte Carlo trials")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {"semicircle norm", semicircle_norm},
      {"Catalan moments", catalan_moments},
      {"MDE closed form", mde_closed_form},
      {"master equation", master_equation},
      {"master inequality decay", master_inequality},
      {"Gn vs G", gn_vs_g},
      {"Poincare variance", poincare},
      {"bias decay", bias_decay},
      {"spectrum containment", containment},
      {"power norms", power_norms},
      {"circular sum bounds", circular_sums},
      {"unitary pairs", unitary_pairs},
      {"expected-norm bound", expected_norm},
      {"linearization zero sets", linearization_zero_sets},
      {"Fock closed form", fock_closed_form},
  };
  const std::set<int> selected(only.begin(), only.end());

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %-24s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, criteria[i].name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
