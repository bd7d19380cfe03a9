#include "spectra/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>

#include "spectra/error.hpp"

namespace spectra::io {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw NumericFailure("cannot format number");
  return std::string(buf, ptr);
}

namespace {

void dump_into(const Json& j, int indent, int level, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_into(it.value(), indent, level + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        dump_into(e, indent, level + 1, out);
      }
      out += nl + close_pad + "]";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

std::string header_lines(const std::vector<std::string>& header) {
  std::string out;
  for (const auto& h : header) out += "# " + h + "\n";
  return out;
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < a.cols(); ++k) row.push_back(to_json(a(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const experiments::BoundCheck& c) {
  return Json{{"label", c.label}, {"observed", c.observed}, {"bound", c.bound}, {"pass", c.pass}};
}

Json to_json(const experiments::RunRecord& rec) {
  Json checks = Json::array();
  for (const auto& c : rec.checks) checks.push_back(to_json(c));
  Json seed{{"master_seed", rec.seed.master_seed},
            {"trial_index", rec.seed.trial_index},
            {"stream_index", rec.seed.stream_index}};
  return Json{{"experiment_id", rec.experiment_id},
              {"seed", std::move(seed)},
              {"params", rec.params},
              {"labels", rec.labels},
              {"per_trial", rec.per_trial},
              {"aggregate", Json{{"mean", rec.mean}, {"std_error", rec.std_error}}},
              {"bound_checks", std::move(checks)},
              {"summary", rec.summary},
              {"pass", rec.passed()}};
}

Json to_json(const stats::ScalingFit& fit) {
  return Json{{"n_values", fit.n_values},
              {"observed", fit.observed},
              {"slope", fit.valid ? Json(fit.slope) : Json(nullptr)},
              {"intercept", fit.valid ? Json(fit.intercept) : Json(nullptr)},
              {"r_squared", fit.valid ? Json(fit.r_squared) : Json(nullptr)}};
}

Json to_json(const SpectralDensity& d) {
  return Json{{"eta", d.eta}, {"grid", d.grid}, {"rho", d.rho}, {"residual", d.residual}, {"support", to_json(d.support)}};
}

Json to_json(const std::vector<Interval>& support) {
  Json out = Json::array();
  for (const Interval& iv : support) out.push_back(Json::array({iv.lo, iv.hi}));
  return out;
}

Complex parse_complex(const std::string& text) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^([+-]?" + num + ")$");
  static const std::regex imag_only("^([+-]?)(" + num + ")?i$");
  static const std::regex both("^([+-]?" + num + ")([+-])(" + num + ")?i$");
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  std::smatch mt;
  if (std::regex_match(s, mt, real_only)) return {std::stod(mt[1].str()), 0.0};
  if (std::regex_match(s, mt, imag_only)) {
    const double mag = mt[2].matched ? std::stod(mt[2].str()) : 1.0;
    return {0.0, mt[1].str() == "-" ? -mag : mag};
  }
  if (std::regex_match(s, mt, both)) {
    const double mag = mt[3].matched ? std::stod(mt[3].str()) : 1.0;
    return {std::stod(mt[1].str()), mt[2].str() == "-" ? -mag : mag};
  }
  throw InvalidParameter("malformed complex literal '" + text + "' (expected a, a+bi or bi)");
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "re" && it.key() != "im") throw InvalidParameter("complex object accepts only 're' and 'im'");
      if (!it.value().is_number()) throw InvalidParameter("complex parts must be numbers");
    }
    return {j.value("re", 0.0), j.value("im", 0.0)};
  }
  throw InvalidParameter("expected a complex number, got " + j.dump());
}

Matrix matrix_from_json(const Json& j, Index m) {
  if (!j.is_array()) {
    if (m <= 0) throw InvalidParameter("a scalar matrix literal needs a known size");
    return complex_from_json(j) * Matrix::Identity(m, m);
  }
  const auto rows = static_cast<Index>(j.size());
  if (rows == 0) throw InvalidParameter("empty matrix literal");
  if (!j[0].is_array()) throw InvalidParameter("matrix literal must be a list of rows");
  const auto cols = static_cast<Index>(j[0].size());
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw InvalidParameter("ragged matrix literal");
    for (Index k = 0; k < cols; ++k) a(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  if (m > 0 && (rows != m || cols != m)) {
    throw InvalidParameter("matrix literal must be " + std::to_string(m) + " x " + std::to_string(m));
  }
  return a;
}

std::string density_csv(const SpectralDensity& d, const std::vector<std::string>& header) {
  std::string out = header_lines(header) + "x,rho,eta,residual\n";
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    out += shortest(d.grid[i]) + "," + shortest(d.rho[i]) + "," + shortest(d.eta) + "," + shortest(d.residual[i]) + "\n";
  }
  return out;
}

std::string scaling_fit_csv(const stats::ScalingFit& fit, const std::vector<double>& bounds,
                            const std::vector<bool>& pass, const std::vector<std::string>& header) {
  std::string out = header_lines(header) + "n,observed,bound,pass\n";
  for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
    out += shortest(fit.n_values[i]) + "," + shortest(fit.observed[i]) + ",";
    out += (i < bounds.size() ? shortest(bounds[i]) : std::string()) + ",";
    out += (i < pass.size() ? (pass[i] ? "true" : "false") : "") + std::string("\n");
  }
  return out;
}

std::string per_trial_csv(const experiments::RunRecord& rec, const std::vector<std::string>& header) {
  std::string out = header_lines(header) + "trial";
  for (const auto& l : rec.labels) out += "," + l;
  out += "\n";
  for (std::size_t t = 0; t < rec.per_trial.size(); ++t) {
    out += std::to_string(t);
    for (double v : rec.per_trial[t]) out += "," + shortest(v);
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const Matrix& a, const std::vector<std::string>& header) {
  std::string out = header_lines(header) + "row,col,re,im\n";
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      out += std::to_string(i) + "," + std::to_string(k) + "," + shortest(a(i, k).real()) + "," +
             shortest(a(i, k).imag()) + "\n";
    }
  }
  return out;
}

}  // namespace spectra::io
