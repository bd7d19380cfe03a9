#include "spectra/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/experiments.hpp"
#include "spectra/fock.hpp"
#include "spectra/polynomial_parser.hpp"
#include "spectra/sampling.hpp"
#include "spectra/serialize.hpp"

#ifndef SPECTRA_VERSION
#define SPECTRA_VERSION "0.0.0"
#endif

namespace spectra::cli {

namespace {

namespace ex = spectra::experiments;

// Typed access to a parameter object. Every getter records the resolved
// value, so `resolved` ends up holding the complete configuration; finish()
// rejects whatever was never asked for.
class Params {
 public:
  Params(const Json& given, std::string experiment) : given_(given), experiment_(std::move(experiment)) {
    if (!given_.is_object()) throw InvalidParameter("params must be a JSON object");
  }

  bool has(const std::string& key) const { return given_.contains(key); }

  long integer(const std::string& key, long def, long min_value) {
    long v = def;
    if (const Json* j = find(key)) {
      if (j->is_number_integer() || j->is_number_unsigned()) {
        v = j->get<long>();
      } else if (j->is_number_float() && std::floor(j->get<double>()) == j->get<double>()) {
        v = static_cast<long>(j->get<double>());
      } else if (j->is_string()) {
        v = parse_long(key, j->get<std::string>());
      } else {
        bad(key, "an integer");
      }
    }
    if (v < min_value) bad(key, "an integer >= " + std::to_string(min_value));
    resolved[key] = v;
    return v;
  }

  double real(const std::string& key, double def, bool positive = false) {
    double v = def;
    if (const Json* j = find(key)) {
      if (j->is_number()) {
        v = j->get<double>();
      } else if (j->is_string()) {
        v = parse_double(key, j->get<std::string>());
      } else {
        bad(key, "a number");
      }
    }
    if (!std::isfinite(v) || (positive && !(v > 0.0))) bad(key, positive ? "a positive number" : "a finite number");
    resolved[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& def, const std::set<std::string>& allowed = {}) {
    std::string v = def;
    if (const Json* j = find(key)) {
      if (!j->is_string()) bad(key, "a string");
      v = j->get<std::string>();
    }
    if (!allowed.empty() && !allowed.count(v)) {
      std::string opts;
      for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
      bad(key, "one of " + opts);
    }
    resolved[key] = v;
    return v;
  }

  bool flag(const std::string& key, bool def) {
    bool v = def;
    if (const Json* j = find(key)) {
      if (j->is_boolean()) {
        v = j->get<bool>();
      } else if (j->is_string() && (j->get<std::string>() == "true" || j->get<std::string>() == "false")) {
        v = j->get<std::string>() == "true";
      } else {
        bad(key, "true or false");
      }
    }
    resolved[key] = v;
    return v;
  }

  std::vector<Index> n_list(const std::string& key, const std::vector<Index>& def) {
    std::vector<Index> v = def;
    if (const Json* j = find(key)) {
      v.clear();
      if (j->is_array()) {
        for (const auto& e : *j) {
          if (!e.is_number_integer()) bad(key, "a list of integers");
          v.push_back(e.get<Index>());
        }
      } else if (j->is_string()) {
        std::stringstream ss(j->get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(parse_long(key, item));
      } else {
        bad(key, "a list of integers");
      }
    }
    if (v.empty()) bad(key, "a non-empty list");
    for (Index n : v) {
      if (n < 1) bad(key, "a list of integers >= 1");
    }
    Json arr = Json::array();
    for (Index n : v) arr.push_back(n);
    resolved[key] = arr;
    return v;
  }

  const Json* raw(const std::string& key) { return find(key); }
  void record(const std::string& key, Json value) { resolved[key] = std::move(value); }

  void finish() const {
    for (auto it = given_.begin(); it != given_.end(); ++it) {
      if (!used_.count(it.key())) {
        throw InvalidParameter("unknown parameter '" + it.key() + "' for experiment '" + experiment_ + "'");
      }
    }
  }

  Json resolved = Json::object();

 private:
  const Json* find(const std::string& key) {
    used_.insert(key);
    const auto it = given_.find(key);
    return it == given_.end() ? nullptr : &*it;
  }

  [[noreturn]] void bad(const std::string& key, const std::string& expected) const {
    throw InvalidParameter("parameter '" + key + "' of '" + experiment_ + "' must be " + expected);
  }

  long parse_long(const std::string& key, const std::string& s) const {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad(key, "an integer");
    return v;
  }

  double parse_double(const std::string& key, const std::string& s) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad(key, "a number");
    return v;
  }

  const Json& given_;
  std::string experiment_;
  std::set<std::string> used_;
};

Pencil read_pencil(Params& p) {
  if (const Json* j = p.raw("pencil")) {
    if (p.has("m") || p.has("r")) throw InvalidParameter("give either 'pencil' or 'm'/'r', not both");
    if (!j->is_array() || j->empty()) throw InvalidParameter("'pencil' must be a list of coefficient matrices a0, a1, ...");
    std::vector<Matrix> coeffs;
    for (const auto& c : *j) coeffs.push_back(io::matrix_from_json(c));
    Pencil pencil(std::move(coeffs));
    Json lits = Json::array();
    for (const Matrix& a : pencil.coefficients()) lits.push_back(io::to_json(a));
    p.record("pencil", std::move(lits));
    return pencil;
  }
  const long m = p.integer("m", 1, 1);
  const long r = p.integer("r", 1, 0);
  return Pencil::semicircle(m, static_cast<int>(r));
}

Matrix read_lambda(Params& p, Index m, const char* def) {
  const Json* j = p.raw("lambda");
  const Json value = j ? *j : Json(def);
  const Matrix lambda = parse_lambda(value, m);
  p.record("lambda", value);
  return lambda;
}

MdeOptions read_mde(Params& p) {
  MdeOptions o;
  o.tol = p.real("tol", o.tol, true);
  o.damping = p.real("damping", o.damping, true);
  if (o.damping > 1.0) throw InvalidParameter("parameter 'damping' must lie in (0, 1]");
  return o;
}

NCPolynomial read_polynomial(Params& p) {
  const std::string text = p.text("polynomial", "");
  if (text.empty()) throw InvalidParameter("parameter 'polynomial' is required");
  return parse_polynomial(text);
}

ex::RunOptions read_threads(Params& p) {
  ex::RunOptions o;
  o.threads = static_cast<int>(p.integer("threads", 1, 1));
  return o;
}

Json interval_rows(const std::vector<Interval>& s) { return io::to_json(s); }

std::string join_csv(const std::vector<std::pair<std::string, std::string>>& cols) {
  std::string head;
  std::string row;
  for (const auto& [k, v] : cols) {
    head += (head.empty() ? "" : ",") + k;
    row += (row.empty() ? "" : ",") + v;
  }
  return head + "\n" + row + "\n";
}

struct Outcome {
  Json result;
  std::string csv;
  bool passed = true;
  std::string natural_format = "json";
};

using Handler = std::function<Outcome(Params&, std::uint64_t)>;

Outcome record_outcome(const ex::RunRecord& rec) {
  return {io::to_json(rec), io::per_trial_csv(rec), rec.passed(), "json"};
}

Outcome scan_outcome(const ex::ScanResult& scan) {
  Json result = io::to_json(scan.record);
  result["fit"] = io::to_json(scan.fit);
  std::vector<double> bounds;
  std::vector<bool> pass;
  for (const auto& c : scan.record.checks) {
    bounds.push_back(c.bound);
    pass.push_back(c.pass);
  }
  return {result, io::scaling_fit_csv(scan.fit, bounds, pass), scan.record.passed(), "json"};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"sample",
       [](Params& p, std::uint64_t seed) {
         const std::string ens = p.text("ensemble", "sgrm", {"sgrm", "grm", "psi", "haar"});
         const long n = p.integer("n", 8, 1);
         const double sigma2 = p.real("sigma2", 1.0 / static_cast<double>(n), true);
         if (ens == "psi" || ens == "haar") {
           if (p.has("sigma2")) throw InvalidParameter("'sigma2' does not apply to unitary samplers");
           p.resolved.erase("sigma2");
         }
         p.finish();
         const SeedSpec s{seed, 0, 0};
         Matrix a;
         if (ens == "sgrm") {
           a = sample_sgrm(n, sigma2, s).entries;
         } else if (ens == "grm") {
           a = sample_grm(n, sigma2, s).entries;
         } else {
           a = ens == "psi" ? pseudo_haar_unitary(n, s) : haar_unitary_qr(n, s);
         }
         Json result{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", io::to_json(a)}};
         return Outcome{result, io::matrix_csv(a), true, "json"};
       }},
      {"density",
       [](Params& p, std::uint64_t) {
         const Pencil pencil = read_pencil(p);
         const std::vector<double> grid = parse_grid(p.text("grid", "-3:3:601"));
         const double eta = p.real("eta", 1e-3, true);
         DensityOptions o;
         o.richardson = p.flag("richardson", true);
         o.mde = read_mde(p);
         p.finish();
         const SpectralDensity d = spectral_density(pencil, grid, eta, o);
         return Outcome{io::to_json(d), io::density_csv(d), true, "csv"};
       }},
      {"support",
       [](Params& p, std::uint64_t) {
         const Pencil pencil = read_pencil(p);
         SupportOptions o;
         o.eta = p.real("eta", o.eta, true);
         const double eps = p.real("eps", 1e-6, true);
         o.mde = read_mde(p);
         p.finish();
         const auto s = support(pencil, eps, o);
         std::string csv = "lo,hi\n";
         for (const Interval& iv : s) csv += io::shortest(iv.lo) + "," + io::shortest(iv.hi) + "\n";
         return Outcome{interval_rows(s), csv, true, "json"};
       }},
      {"norm",
       [](Params& p, std::uint64_t) {
         if (p.has("polynomial")) {
           const NCPolynomial poly = read_polynomial(p);
           const int depth = static_cast<int>(p.integer("depth", 0, 0));
           p.finish();
           const auto fn = ex::free_polynomial_norm(poly, depth);
           Json result{{"norm", fn.value}, {"method", fn.method}};
           if (fn.method == "fock") result["depth"] = fn.depth;
           return Outcome{result,
                          join_csv({{"norm", io::shortest(fn.value)},
                                    {"method", fn.method},
                                    {"depth", std::to_string(fn.depth)}}),
                          true, "json"};
         }
         const Pencil pencil = read_pencil(p);
         const double eps = p.real("eps", 1e-6, true);
         p.finish();
         const double value = pencil_norm(pencil, eps);
         return Outcome{Json{{"norm", value}, {"method", "pencil"}},
                        join_csv({{"norm", io::shortest(value)}, {"method", "pencil"}}), true, "json"};
       }},
      {"fock-moment",
       [](Params& p, std::uint64_t) {
         const NCPolynomial poly = read_polynomial(p);
         const long depth = p.integer("depth", std::max(poly.degree(), 1), 1);
         p.finish();
         const auto basis = fock::make_basis(std::max(poly.num_vars(), 1), static_cast<int>(depth));
         const Complex z = fock::polynomial_moment(poly, basis);
         return Outcome{Json{{"moment", io::to_json(z)}},
                        join_csv({{"re", io::shortest(z.real())}, {"im", io::shortest(z.imag())}}), true, "json"};
       }},
      {"master-equation",
       [](Params& p, std::uint64_t seed) {
         const Pencil pencil = read_pencil(p);
         const Matrix lambda = read_lambda(p, pencil.m(), "0+1i");
         const long n = p.integer("n", 100, 1);
         const long trials = p.integer("trials", 200, 1);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::master_equation_residual(pencil, lambda, n, trials, seed, opts));
       }},
      {"master-inequality",
       [](Params& p, std::uint64_t seed) {
         const Pencil pencil = read_pencil(p);
         const Matrix lambda = read_lambda(p, pencil.m(), "0+1i");
         const auto nl = p.n_list("n_list", {50, 100, 200, 400});
         const long trials = p.integer("trials", 400, 2);
         const auto opts = read_threads(p);
         p.finish();
         return scan_outcome(ex::master_inequality_scan(pencil, lambda, nl, trials, seed, opts));
       }},
      {"gn-vs-g",
       [](Params& p, std::uint64_t seed) {
         const Pencil pencil = read_pencil(p);
         const Matrix lambda = read_lambda(p, pencil.m(), "0+2i");
         const long n = p.integer("n", 200, 1);
         const std::string method = p.text("method", "monte-carlo", {"monte-carlo", "exact"});
         const long trials = p.integer("trials", 500, 1);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::gn_vs_g(pencil, lambda, n, trials, seed,
                                           method == "exact" ? ex::GnMethod::exact : ex::GnMethod::monte_carlo, opts));
       }},
      {"poincare",
       [](Params& p, std::uint64_t seed) {
         const Pencil pencil = read_pencil(p);
         const TestFunction f = TestFunction::parse(p.text("test_function", "gauss"));
         const long n = p.integer("n", 100, 1);
         const long trials = p.integer("trials", 500, 4);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::variance_poincare_check(pencil, f, n, trials, seed, opts));
       }},
      {"bias",
       [](Params& p, std::uint64_t seed) {
         const Pencil pencil = read_pencil(p);
         const TestFunction f = TestFunction::parse(p.text("test_function", "bump"));
         const auto nl = p.n_list("n_list", {50, 100, 200, 400});
         const std::string method = p.text("method", "auto", {"auto", "monte-carlo", "exact"});
         const long trials = p.integer("trials", 200, 1);
         const auto opts = read_threads(p);
         const auto m = method == "exact"         ? ex::BiasMethod::exact
                        : method == "monte-carlo" ? ex::BiasMethod::monte_carlo
                                                  : ex::BiasMethod::automatic;
         p.finish();
         return scan_outcome(ex::bias_scan(pencil, f, nl, trials, seed, m, opts));
       }},
      {"containment",
       [](Params& p, std::uint64_t seed) {
         const Pencil pencil = read_pencil(p);
         const long n = p.integer("n", 400, 1);
         const double eps = p.real("eps", 0.3, true);
         const long trials = p.integer("trials", 10, 1);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::spectrum_containment(pencil, n, eps, trials, seed, opts));
       }},
      {"norm-convergence",
       [](Params& p, std::uint64_t seed) {
         const NCPolynomial poly = read_polynomial(p);
         const auto nl = p.n_list("n_list", {100, 200, 400});
         const long trials = p.integer("trials", 10, 1);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::norm_convergence(poly, nl, trials, seed, opts));
       }},
      {"expected-norm",
       [](Params& p, std::uint64_t seed) {
         const auto nl = p.n_list("n_list", {4, 16, 64, 256, 1000});
         const long trials = p.integer("trials", 50, 1);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::expected_norm_bound(nl, trials, seed, opts));
       }},
      {"power-norm",
       [](Params& p, std::uint64_t seed) {
         const long power = p.integer("p", 1, 1);
         const long n = p.integer("n", 1000, 1);
         const long trials = p.integer("trials", 10, 1);
         const double tol = p.real("tol", 0.05, true);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::power_norm(static_cast<int>(power), n, trials, seed, tol, opts));
       }},
      {"unitary-pairs",
       [](Params& p, std::uint64_t seed) {
         const long r = p.integer("r", 2, 2);
         const long n = p.integer("n", 60, 1);
         const long trials = p.integer("trials", 5, 1);
         const std::string sampler = p.text("sampler", "psi", {"psi", "qr"});
         const bool identical = p.flag("identical", false);
         const double tol = p.real("tol", 0.10, true);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::unitary_pair_norm(static_cast<int>(r), n, trials, seed,
                                                     sampler == "psi" ? ex::UnitarySampler::psi : ex::UnitarySampler::qr,
                                                     identical, tol, opts));
       }},
      {"circular-bounds",
       [](Params& p, std::uint64_t seed) {
         std::vector<Matrix> coeffs;
         Json lits = Json::array();
         if (const Json* j = p.raw("coefficients")) {
           if (!j->is_array() || j->empty()) throw InvalidParameter("'coefficients' must be a list of matrices");
           for (const auto& c : *j) coeffs.push_back(io::matrix_from_json(c));
         } else {
           coeffs.push_back(Matrix::Identity(1, 1));
         }
         for (const Matrix& a : coeffs) lits.push_back(io::to_json(a));
         p.record("coefficients", std::move(lits));
         const long n = p.integer("n", 500, 1);
         const long trials = p.integer("trials", 5, 1);
         const auto opts = read_threads(p);
         p.finish();
         return record_outcome(ex::circular_sum_bounds(coeffs, n, trials, seed, opts));
       }},
  };
  return table;
}

}  // namespace

const char* version() { return SPECTRA_VERSION; }

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SPECTRA_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t v = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidParameter("SPECTRA_SEED must be an unsigned integer, got '" + s + "'");
  }
  return v;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  static const std::set<std::string> keys = {"experiment", "seed", "params", "output", "format"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!keys.count(it.key())) throw InvalidParameter("unknown config key '" + it.key() + "'");
  }
  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string()) throw InvalidParameter("config needs 'experiment'");
  cfg.experiment = j["experiment"].get<std::string>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      throw InvalidParameter("'seed' must be a non-negative integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  } else {
    cfg.seed = default_seed();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw InvalidParameter("'params' must be an object");
    cfg.params = j["params"];
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw InvalidParameter("'output' must be a path string");
    cfg.output = j["output"].get<std::string>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw InvalidParameter("'format' must be 'csv' or 'json'");
    cfg.format = j["format"].get<std::string>();
  }
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  return Json{{"experiment", cfg.experiment},
              {"seed", cfg.seed},
              {"params", cfg.params},
              {"output", cfg.output},
              {"format", cfg.format}};
}

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    throw InvalidParameter("grid must be lo:hi:count, got '" + text + "'");
  }
  auto num = [&](const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidParameter("bad number '" + s + "' in grid");
    return v;
  };
  const double lo = num(text.substr(0, a));
  const double hi = num(text.substr(a + 1, b - a - 1));
  const double count = num(text.substr(b + 1));
  if (!(hi > lo)) throw InvalidParameter("grid needs lo < hi");
  if (count < 2 || std::floor(count) != count || count > 1e7) throw InvalidParameter("grid count must be an integer >= 2");
  return linear_grid(lo, hi, static_cast<int>(count));
}

Matrix parse_lambda(const Json& j, Index m) {
  const Matrix lambda = io::matrix_from_json(j, m);
  return lambda;
}

Artifact execute(const ExperimentConfig& cfg) {
  const auto& table = handlers();
  const auto it = table.find(cfg.experiment);
  if (it == table.end()) throw InvalidParameter("unknown experiment '" + cfg.experiment + "'");
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv") {
    throw InvalidParameter("format must be 'csv' or 'json'");
  }
  Params params(cfg.params, cfg.experiment);
  Outcome outcome = it->second(params, cfg.seed);
  params.finish();

  Artifact art;
  art.config = cfg;
  art.config.params = params.resolved;
  if (art.config.format.empty()) art.config.format = outcome.natural_format;
  art.result = std::move(outcome.result);
  art.csv = std::move(outcome.csv);
  art.passed = outcome.passed;
  return art;
}

std::string render(const Artifact& artifact) {
  const Json cfg = config_to_json(artifact.config);
  if (artifact.config.format == "csv") {
    return "# spectra " + std::string(version()) + "\n# config " + io::dump(cfg, 0) + "\n" + artifact.csv;
  }
  const Json doc{{"artifact", "spectra"}, {"version", version()}, {"config", cfg}, {"result", artifact.result}};
  return io::dump(doc) + "\n";
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Artifact art;
  try {
    art = execute(cfg);
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << " (last residual " << e.last_residual() << " after " << e.iterations()
        << " iterations)\n";
    return kSolverFailure;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  }

  const std::string text = render(art);
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    out.flush();
  } else {
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "cannot open output file '" << cfg.output << "' for writing\n";
      return kIoError;
    }
    file << text;
    file.close();
    if (!file) {
      err << "failed writing output file '" << cfg.output << "'\n";
      return kIoError;
    }
  }
  if (!art.passed) {
    err << cfg.experiment << ": bound check failed\n";
    return kCheckFailed;
  }
  return kOk;
}

int run_file(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot open config file '" << path << "'\n";
    return kIoError;
  }
  ExperimentConfig cfg;
  try {
    cfg = config_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    err << "invalid configuration in '" << path << "': " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration in '" << path << "': " << e.what() << "\n";
    return kInvalidConfig;
  }
  return run(cfg, out, err);
}

}  // namespace spectra::cli
