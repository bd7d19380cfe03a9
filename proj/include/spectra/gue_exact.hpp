#pragma once

#include <functional>

#include "spectra/linalg.hpp"

namespace spectra::gue {

/// One-point eigenvalue density of SGRM(n, 1/n) at x, from the Christoffel-Darboux
/// sum of orthonormal Hermite functions. Integrates to 1.
double density(Index n, double x);

/// Exact E{tr_n f(a0 + sigma X)} for X in SGRM(n, 1/n), by quadrature against
/// the one-point density. Every m = 1 pencil reduces to this form with
/// sigma² = Σ ai².
Complex expected_trace(Index n, const std::function<Complex(double)>& f, double a0 = 0.0, double sigma = 1.0);

}  // namespace spectra::gue
