#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles/oracles.hpp"
#include "spectra/dyson.hpp"
#include "spectra/error.hpp"
#include "spectra/linalg.hpp"
#include "spectra/pencil.hpp"
#include "support.hpp"

using namespace spectra;
using testing_support::max_abs;
using testing_support::random_hermitian;

namespace {

const Complex I{0.0, 1.0};

Matrix scalar(Complex c) { return Matrix::Constant(1, 1, c); }

Pencil scalar_pencil(std::vector<double> a) {
  std::vector<Matrix> c;
  for (double v : a) c.push_back(scalar(v));
  return Pencil(std::move(c));
}

Pencil random_pencil(Index m, int r, std::mt19937_64& gen) {
  std::vector<Matrix> a{random_hermitian(m, gen) * 0.5};
  for (int i = 0; i < r; ++i) a.push_back(random_hermitian(m, gen) * 0.5);
  return Pencil(std::move(a));
}

double max_imag_eigenvalue(const Matrix& g) {
  const Matrix im = (g - g.adjoint()) / Complex(0.0, 2.0);
  return linalg::hermitian_eigenvalues(im).maxCoeff();
}

}  // namespace

TEST_SUITE("dyson") {
  TEST_CASE("eta_map on simple inputs") {
    std::mt19937_64 gen(1);
    const Pencil p = random_pencil(3, 2, gen);
    CHECK(max_abs(eta_map(p, Matrix::Identity(3, 3)) - p.sum_of_squares()) <= 1e-14);
    CHECK(eta_map(scalar_pencil({0.0, 2.0}), scalar(3.0))(0, 0) == Complex(12.0, 0.0));
    CHECK_THROWS_AS(eta_map(p, Matrix::Identity(2, 2)), InvalidParameter);
  }

  TEST_CASE("eta_map is completely positive and bounded by the unit") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 20; ++trial) {
      const Pencil p = random_pencil(3, 3, gen);
      const Matrix b = testing_support::random_matrix(3, 3, gen);
      const Matrix z = b * b.adjoint();
      const Matrix e = eta_map(p, z);
      CHECK(linalg::hermitian_eigenvalues(e).minCoeff() >= -1e-12);
      CHECK(linalg::hermitian_norm(e) <= linalg::hermitian_norm(p.sum_of_squares()) * linalg::hermitian_norm(z) + 1e-12);
    }
  }

  TEST_CASE("semicircle solution at i is the golden ratio branch") {
    const auto sol = solve_mde(Pencil::semicircle(), scalar(I));
    CHECK(std::abs(sol.G(0, 0) - Complex(0.0, -(std::sqrt(5.0) - 1.0) / 2.0)) <= 1e-11);
    CHECK(sol.residual <= 1e-12);
    CHECK(sol.iterations > 0);
  }

  TEST_CASE("two semicirculars of unit weight at i") {
    const auto sol = solve_mde(scalar_pencil({0.0, 1.0, 1.0}), scalar(I));
    // 2 G² - i G + 1 = 0 with Im G < 0
    CHECK(std::abs(sol.G(0, 0) - Complex(0.0, -0.5)) <= 1e-11);
    const Complex g = sol.G(0, 0);
    CHECK(std::abs(2.0 * g * g - I * g + 1.0) <= 1e-11);
  }

  TEST_CASE("shifting a0 translates the spectral parameter") {
    const double mu = 0.7;
    const Pencil shifted = scalar_pencil({mu, 1.0});
    for (double x : {-2.5, -1.0, 0.0, 0.9, 3.1}) {
      const Complex z(x, 0.3);
      const Complex g_shift = solve_mde(shifted, scalar(z)).G(0, 0);
      const Complex g0 = solve_mde(Pencil::semicircle(), scalar(z - mu)).G(0, 0);
      CHECK(std::abs(g_shift - g0) <= 1e-10);
    }
  }

  TEST_CASE("closed-form semicircle transform on 100 points") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> re(-4.0, 4.0);
    std::uniform_real_distribution<double> im(0.1, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Complex z(re(gen), im(gen));
      worst = std::max(worst, std::abs(scalar_stieltjes(Pencil::semicircle(), z) - oracle::semicircle_g(z)));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("scalar transform examples") {
    CHECK(std::abs(scalar_stieltjes(Pencil::semicircle(), I) - Complex(0.0, -0.6180339887498949)) <= 1e-11);
    CHECK(std::abs(scalar_stieltjes(Pencil::semicircle(), 3.0 * I) - Complex(0.0, (3.0 - std::sqrt(13.0)) / 2.0)) <=
          1e-11);
    CHECK_THROWS_AS(scalar_stieltjes(Pencil::semicircle(), Complex(1.0, 0.0)), InvalidParameter);
  }

  TEST_CASE("reflection symmetry for even densities") {
    std::mt19937_64 gen(4);
    std::vector<Matrix> a{Matrix::Zero(2, 2), random_hermitian(2, gen), random_hermitian(2, gen)};
    const Pencil p(std::move(a));
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 5; ++k) {
      const Complex z(u(gen), 0.2 + std::abs(u(gen)));
      const Complex g = scalar_stieltjes(p, z);
      const Complex g_reflected = scalar_stieltjes(p, -std::conj(z));
      CHECK(std::abs(g_reflected + std::conj(g)) <= 1e-10);
      CHECK(g.imag() < 0.0);
    }
  }

  TEST_CASE("solutions certify their residual, sign and resolvent bound") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 10; ++trial) {
      const Pencil p = random_pencil(3, 2, gen);
      const Matrix b = testing_support::random_matrix(3, 3, gen);
      const Matrix im = b * b.adjoint() + 0.2 * Matrix::Identity(3, 3);
      const Matrix lambda = random_hermitian(3, gen) + I * im;
      const auto sol = solve_mde(p, lambda);
      CHECK(linalg::operator_norm(mde_residual(p, lambda, sol.G)) <= 1e-12);
      CHECK(sol.residual <= 1e-12);
      CHECK(max_imag_eigenvalue(sol.G) < 0.0);
      CHECK(linalg::operator_norm(sol.G) <= linalg::operator_norm(linalg::inverse(im)) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("invalid solver inputs") {
    const Pencil p = Pencil::semicircle(2);
    CHECK_THROWS_AS(solve_mde(p, Matrix::Identity(2, 2)), InvalidParameter);
    CHECK_THROWS_AS(solve_mde(p, I * Matrix::Identity(3, 3)), InvalidParameter);
    Matrix indefinite = Matrix::Identity(2, 2) * I;
    indefinite(1, 1) = -I;
    CHECK_THROWS_AS(solve_mde(p, indefinite), InvalidParameter);
    CHECK_THROWS_AS(solve_mde(p, I * Matrix::Identity(2, 2), MdeOptions{.damping = 0.0}), InvalidParameter);
    CHECK_THROWS_AS(solve_mde(p, I * Matrix::Identity(2, 2), MdeOptions{.damping = 1.5}), InvalidParameter);
    CHECK_THROWS_AS(solve_mde(p, I * Matrix::Identity(2, 2), MdeOptions{.tol = 0.0}), InvalidParameter);
  }

  TEST_CASE("non-convergence reports the last residual") {
    const MdeOptions opts{.tol = 1e-14, .damping = 0.5, .max_iterations = 3};
    try {
      solve_mde(Pencil::semicircle(), scalar(Complex(0.1, 1e-3)), opts);
      FAIL("expected a solver failure");
    } catch (const SolverFailure& e) {
      CHECK(e.last_residual() > 0.0);
      CHECK(e.iterations() >= 3);
    }
  }

  TEST_CASE("semicircle density at the centre and outside the support") {
    const auto d = spectral_density(Pencil::semicircle(), {-3.0, 0.0, 3.0}, 1e-3);
    CHECK(d.rho[1] == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-4));
    CHECK(d.rho[0] <= 2e-3);
    CHECK(d.rho[2] <= 2e-3);
    CHECK(d.eta == 1e-3);
  }

  TEST_CASE("density integrates to one and matches the semicircle moments") {
    const auto grid = linear_grid(-2.2, 2.2, 2201);
    const auto d = spectral_density(Pencil::semicircle(), grid, 1e-3);
    CHECK(trapezoid(d.grid, d.rho) == doctest::Approx(1.0).epsilon(0.03));
    for (double r : d.rho) CHECK(r >= 0.0);
    for (int k : {2, 4, 6}) {
      std::vector<double> w(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) w[i] = std::pow(grid[i], k) * d.rho[i];
      CAPTURE(k);
      CHECK(std::abs(trapezoid(grid, w) - oracle::catalan(k / 2)) <= 1e-3 * oracle::catalan(k / 2) + 1e-3);
    }
    REQUIRE(d.support.size() == 1);
    CHECK(d.support[0].lo == doctest::Approx(-2.0).epsilon(0.01));
    CHECK(d.support[0].hi == doctest::Approx(2.0).epsilon(0.01));
  }

  TEST_CASE("matrix pencil density against its scalar reduction") {
    // a1 = diag(1, 2): the density is the average of semicircles of radius 2 and 4
    Matrix a1 = Matrix::Zero(2, 2);
    a1(0, 0) = 1.0;
    a1(1, 1) = 2.0;
    const Pencil p({Matrix::Zero(2, 2), a1});
    const std::vector<double> grid{-3.0, -1.0, 0.0, 0.5, 2.5};
    const auto d = spectral_density(p, grid, 1e-4);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double expected = 0.5 * (oracle::semicircle_density(grid[i], 1.0) + oracle::semicircle_density(grid[i], 4.0));
      CHECK(d.rho[i] == doctest::Approx(expected).epsilon(1e-3));
    }
  }

  TEST_CASE("density input validation") {
    CHECK_THROWS_AS(spectral_density(Pencil::semicircle(), {0.0, 1.0}, 0.0), InvalidParameter);
    CHECK_THROWS_AS(spectral_density(Pencil::semicircle(), {1.0, 0.0}, 1e-3), InvalidParameter);
    CHECK_THROWS_AS(linear_grid(0.0, 1.0, 1), InvalidParameter);
  }

  TEST_CASE("support of affine images of the semicircle") {
    const auto s1 = support(scalar_pencil({1.0, 2.0}));
    REQUIRE(s1.size() == 1);
    CHECK(std::abs(s1[0].lo + 3.0) <= 0.01);
    CHECK(std::abs(s1[0].hi - 5.0) <= 0.01);

    const auto s2 = support(scalar_pencil({0.0, 1.0, 1.0}));
    REQUIRE(s2.size() == 1);
    CHECK(std::abs(s2[0].lo + 2.0 * std::sqrt(2.0)) <= 0.01);
    CHECK(std::abs(s2[0].hi - 2.0 * std::sqrt(2.0)) <= 0.01);
  }

  TEST_CASE("separated point spectrum gives two support intervals") {
    Matrix a0 = Matrix::Zero(2, 2);
    a0(0, 0) = -10.0;
    a0(1, 1) = 10.0;
    const Pencil p({a0, 0.1 * Matrix::Identity(2, 2)});
    const auto s = support(p);
    REQUIRE(s.size() == 2);
    CHECK(std::abs(s[0].lo + 10.2) <= 0.01);
    CHECK(std::abs(s[0].hi + 9.8) <= 0.01);
    CHECK(std::abs(s[1].lo - 9.8) <= 0.01);
    CHECK(std::abs(s[1].hi - 10.2) <= 0.01);
  }

  TEST_CASE("pencil norms") {
    CHECK(std::abs(pencil_norm(Pencil::semicircle()) - 2.0) <= 0.01);
    CHECK(std::abs(pencil_norm(scalar_pencil({1.0, 2.0})) - 5.0) <= 0.01);
    CHECK(pencil_norm(scalar_pencil({0.0, 0.0})) == 0.0);
    CHECK(pencil_norm(scalar_pencil({0.0})) == 0.0);
  }
}
