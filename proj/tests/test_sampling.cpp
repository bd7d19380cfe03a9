#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracles/oracles.hpp"
#include "spectra/error.hpp"
#include "spectra/linalg.hpp"
#include "spectra/sampling.hpp"
#include "spectra/stats.hpp"
#include "support.hpp"

using namespace spectra;

namespace {

double normalized_trace_power(const Matrix& x, int k) {
  const RealVector ev = linalg::hermitian_eigenvalues(x);
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i) s += std::pow(ev(i), k);
  return s / static_cast<double>(ev.size());
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("sgrm draws are exactly Hermitian with real diagonal") {
    const auto x = sample_sgrm(37, 0.5, SeedSpec{11, 2, 3});
    for (Index i = 0; i < 37; ++i) {
      CHECK(x.entries(i, i).imag() == 0.0);
      for (Index j = 0; j < 37; ++j) CHECK(x.entries(i, j) == std::conj(x.entries(j, i)));
    }
    CHECK(x.n == 37);
    CHECK(x.sigma2 == 0.5);
  }

  TEST_CASE("invalid sizes and variances are rejected") {
    CHECK_THROWS_AS(sample_sgrm(0, 1.0, SeedSpec{}), InvalidParameter);
    CHECK_THROWS_AS(sample_sgrm(4, 0.0, SeedSpec{}), InvalidParameter);
    CHECK_THROWS_AS(sample_sgrm(4, -1.0, SeedSpec{}), InvalidParameter);
    CHECK_THROWS_AS(sample_grm(0, 1.0, SeedSpec{}), InvalidParameter);
    CHECK_THROWS_AS(pseudo_haar_unitary(0, SeedSpec{}), InvalidParameter);
    CHECK_THROWS_AS(haar_unitary_qr(0, SeedSpec{}), InvalidParameter);
  }

  TEST_CASE("identical seeds reproduce identical matrices") {
    const SeedSpec s{2024, 7, 1};
    CHECK(sample_sgrm(50, 0.02, s).entries == sample_sgrm(50, 0.02, s).entries);
    CHECK(sample_grm(20, 1.0, s).entries == sample_grm(20, 1.0, s).entries);
    CHECK(pseudo_haar_unitary(20, s) == pseudo_haar_unitary(20, s));
    CHECK(haar_unitary_qr(20, s) == haar_unitary_qr(20, s));
    CHECK(sample_sgrm(50, 0.02, s).entries != sample_sgrm(50, 0.02, s.with_trial(8)).entries);
    CHECK(derive_seed(s) != derive_seed(s.with_stream(2)));
  }

  TEST_CASE("variance parameter scales the same standard normals") {
    const SeedSpec s{5, 0, 0};
    const double sigma2 = 0.37;
    const Matrix unit = sample_sgrm(30, 1.0, s).entries;
    const Matrix scaled = sample_sgrm(30, sigma2, s).entries;
    CHECK(testing_support::max_abs(scaled - std::sqrt(sigma2) * unit) <= 1e-15);
  }

  TEST_CASE("normalized trace of X^2 has mean one at n = 1000") {
    const Index n = 1000;
    std::vector<double> tr2;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Matrix x = sample_sgrm(n, 1.0 / n, SeedSpec{1, t, 0}).entries;
      tr2.push_back((x.adjoint() * x).trace().real() / n);
    }
    CHECK(stats::mean(tr2) == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("off-diagonal real parts have variance 1/(2n)") {
    const Index n = 1000;
    const Matrix x = sample_sgrm(n, 1.0 / n, SeedSpec{3, 0, 0}).entries;
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> diag;
    for (Index i = 0; i < n; ++i) {
      diag.push_back(x(i, i).real());
      for (Index j = i + 1; j < n; ++j) {
        re.push_back(x(i, j).real());
        im.push_back(x(i, j).imag());
      }
    }
    const double target = 1.0 / (2.0 * n);
    CHECK(stats::variance(re) == doctest::Approx(target).epsilon(0.2));
    CHECK(stats::variance(im) == doctest::Approx(target).epsilon(0.2));
    CHECK(stats::variance(diag) == doctest::Approx(1.0 / n).epsilon(0.2));
    CHECK(std::abs(stats::mean(re)) < 5.0 * std::sqrt(target / static_cast<double>(re.size())));
  }

  TEST_CASE("even moments at small n match the Harer-Zagier recursion") {
    const Index n = 6;
    const int trials = 4000;
    const auto exact = oracle::gue_even_moments(static_cast<int>(n), 3);
    for (int k = 1; k <= 3; ++k) {
      std::vector<double> obs;
      for (int t = 0; t < trials; ++t) {
        obs.push_back(normalized_trace_power(sample_sgrm(n, 1.0 / n, SeedSpec{77, std::uint64_t(t), 0}).entries, 2 * k));
      }
      CAPTURE(k);
      CHECK(std::abs(stats::mean(obs) - exact[std::size_t(k)]) <= 3.0 * stats::std_error(obs));
    }
    // 1, 2 + 1/n², 5 + 10/n²
    CHECK(exact[2] == doctest::Approx(2.0 + 1.0 / 36.0));
    CHECK(exact[3] == doctest::Approx(5.0 + 10.0 / 36.0));
  }

  TEST_CASE("grm is assembled from its two Hermitian draws") {
    const auto y = sample_grm(9, 0.3, SeedSpec{4, 1, 2});
    const Matrix rebuilt = (y.x1 + Complex(0.0, 1.0) * y.x2) / std::sqrt(2.0);
    CHECK(testing_support::max_abs(y.entries - rebuilt) == 0.0);
    CHECK(linalg::is_hermitian(y.x1, 0.0));
    CHECK(linalg::is_hermitian(y.x2, 0.0));
  }

  TEST_CASE("grm corner entry has second moment sigma2") {
    std::vector<double> abs2;
    for (std::uint64_t t = 0; t < 10000; ++t) abs2.push_back(std::norm(sample_grm(4, 1.0, SeedSpec{9, t, 0}).entries(0, 0)));
    CHECK(stats::mean(abs2) == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("largest singular value of a Ginibre matrix is near 2") {
    const Index n = 1000;
    const auto y = sample_grm(n, 1.0 / n, SeedSpec{12, 0, 0});
    CHECK(std::abs(linalg::operator_norm(y.entries) - 2.0) <= 0.1);
  }

  TEST_CASE("phi is the clamped semicircle antiderivative") {
    const double pi = std::numbers::pi;
    CHECK(phi(0.0) == 0.0);
    CHECK(phi(2.0) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(phi(-2.0) == doctest::Approx(-pi).epsilon(1e-15));
    CHECK(phi(-3.0) == -pi);
    CHECK(phi(7.5) == pi);
    // derivative of the closed form is sqrt(4 - t²)
    for (double t : {-1.7, -0.4, 0.3, 1.1, 1.9}) {
      const double h = 1e-6;
      const double fd = (phi(t + h) - phi(t - h)) / (2.0 * h);
      CHECK(fd == doctest::Approx(std::sqrt(4.0 - t * t)).epsilon(1e-7));
    }
  }

  TEST_CASE("psi maps to the unit circle") {
    CHECK(std::abs(psi(0.0) - Complex(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(psi(2.0) - Complex(-1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(psi(-2.0) - Complex(-1.0, 0.0)) <= 1e-15);
    for (double t = -3.0; t <= 3.0; t += 0.125) CHECK(std::abs(std::abs(psi(t)) - 1.0) <= 1e-15);
  }

  TEST_CASE("both unitary samplers return unitaries") {
    const Index n = 120;
    for (const Matrix& u : {pseudo_haar_unitary(n, SeedSpec{1, 0, 0}), haar_unitary_qr(n, SeedSpec{1, 0, 0})}) {
      const Matrix defect = u.adjoint() * u - Matrix::Identity(n, n);
      CHECK(linalg::operator_norm(defect) <= 1e-10);
    }
  }

  TEST_CASE("normalized traces of the unitaries average to zero at n = 300") {
    const Index n = 300;
    Complex psi_sum = 0.0;
    Complex qr_sum = 0.0;
    Complex rotated_sum = 0.0;
    const Matrix v = haar_unitary_qr(n, SeedSpec{999, 0, 0});
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Matrix u = pseudo_haar_unitary(n, SeedSpec{21, t, 0});
      const Matrix q = haar_unitary_qr(n, SeedSpec{22, t, 0});
      psi_sum += u.trace() / double(n);
      qr_sum += q.trace() / double(n);
      rotated_sum += (v * q).trace() / double(n);
    }
    CHECK(std::abs(psi_sum / 20.0) <= 0.1);
    CHECK(std::abs(qr_sum / 20.0) <= 0.1);
    CHECK(std::abs(rotated_sum / 20.0) <= 0.1);
  }

  TEST_CASE("eigenvalue angles of psi unitaries pass a chi-square uniformity test") {
    const Index n = 300;
    const int arcs = 12;
    // 95% quantile of chi-square with 11 degrees of freedom
    const double critical = 19.675;
    int passes = 0;
    for (std::uint64_t t = 0; t < 10; ++t) {
      Eigen::ComplexEigenSolver<Matrix> es(pseudo_haar_unitary(n, SeedSpec{31, t, 0}), false);
      std::vector<int> counts(arcs, 0);
      for (Index i = 0; i < n; ++i) {
        const double a = std::arg(es.eigenvalues()(i)) + std::numbers::pi;
        const int bin = std::min(arcs - 1, static_cast<int>(a / (2.0 * std::numbers::pi) * arcs));
        ++counts[std::size_t(bin)];
      }
      const double expected = double(n) / arcs;
      double chi2 = 0.0;
      for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
      if (chi2 < critical) ++passes;
    }
    CHECK(passes >= 8);
  }

  TEST_CASE("distinct streams are uncorrelated") {
    std::vector<double> a;
    std::vector<double> b;
    for (std::uint64_t t = 0; t < 10000; ++t) {
      a.push_back(sample_sgrm(1, 1.0, SeedSpec{8, t, 0}).entries(0, 0).real());
      b.push_back(sample_sgrm(1, 1.0, SeedSpec{8, t, 1}).entries(0, 0).real());
    }
    const double ma = stats::mean(a);
    const double mb = stats::mean(b);
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) cov += (a[i] - ma) * (b[i] - mb);
    cov /= double(a.size() - 1);
    const double corr = cov / std::sqrt(stats::variance(a) * stats::variance(b));
    CHECK(std::abs(corr) <= 0.05);
  }

  TEST_CASE("Gaussian integration by parts for F(x) = x^3") {
    const double sigma2 = 0.7;
    Rng rng(SeedSpec{101, 0, 0});
    std::vector<double> obs;
    for (int i = 0; i < 100000; ++i) {
      const double g = std::sqrt(sigma2) * rng.normal();
      obs.push_back(g * g * g * g);
    }
    CHECK(std::abs(stats::mean(obs) - 3.0 * sigma2 * sigma2) <= 3.0 * stats::std_error(obs));
  }
}
