#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/dyson.hpp"
#include "spectra/experiments.hpp"
#include "spectra/linalg.hpp"
#include "spectra/stats.hpp"

namespace spectra::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly v.
std::string shortest(double v);

/// JSON text with every floating-point number printed with 17 significant
/// digits; object keys keep insertion order. Non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(Complex z);
Json to_json(const Matrix& a);
Json to_json(const experiments::BoundCheck& c);
Json to_json(const experiments::RunRecord& rec);
Json to_json(const stats::ScalingFit& fit);
Json to_json(const SpectralDensity& d);
Json to_json(const std::vector<Interval>& support);

/// Accepts a number, a string such as "1-2i", or {"re": .., "im": ..}.
Complex complex_from_json(const Json& j);
/// Nested rows of complex entries; a bare scalar becomes scalar * 1_m when m > 0.
Matrix matrix_from_json(const Json& j, Index m = 0);
/// "a", "a+bi", "a-bi", "bi"
Complex parse_complex(const std::string& text);

/// Header comment lines are prefixed with '#'.
std::string density_csv(const SpectralDensity& d, const std::vector<std::string>& header = {});
/// Rows n, observed, bound, pass.
std::string scaling_fit_csv(const stats::ScalingFit& fit, const std::vector<double>& bounds,
                            const std::vector<bool>& pass, const std::vector<std::string>& header = {});
/// One row per trial: trial, then every labelled observation.
std::string per_trial_csv(const experiments::RunRecord& rec, const std::vector<std::string>& header = {});
/// Long format: row, col, re, im.
std::string matrix_csv(const Matrix& a, const std::vector<std::string>& header = {});

}  // namespace spectra::io
