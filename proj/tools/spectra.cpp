// Command-line front end: one subcommand per experiment, plus `run` for JSON
// config files. Flags map one-to-one onto experiment parameters.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spectra/cli.hpp"
#include "spectra/error.hpp"

namespace {

using spectra::cli::Json;

enum class Kind { integer, real, text, json };

struct Flag {
  const char* name;
  Kind kind;
  const char* help;
};

const std::vector<Flag> kPencilFlags = {
    {"m", Kind::integer, "coefficient size of the semicircle pencil a0 = 0, ai = 1_m"},
    {"r", Kind::integer, "number of semicircular variables"},
    {"pencil", Kind::json, "coefficients a0, a1, ... as a JSON list of matrices, or @file"},
};

std::vector<Flag> with_pencil(std::vector<Flag> extra) {
  std::vector<Flag> out = kPencilFlags;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

const Flag kThreads{"threads", Kind::integer, "worker threads for independent trials"};
const Flag kTrials{"trials", Kind::integer, "number of Monte Carlo trials"};
const Flag kN{"n", Kind::integer, "matrix size"};
const Flag kNList{"n_list", Kind::text, "comma-separated matrix sizes"};
const Flag kLambda{"lambda", Kind::text, "spectral parameter: complex scalar such as 0+1i, or a JSON matrix"};

struct Command {
  const char* name;
  const char* help;
  bool verify;
  std::vector<Flag> flags;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"sample", "draw one random matrix", false,
       {{"ensemble", Kind::text, "sgrm, grm, psi or haar"}, kN, {"sigma2", Kind::real, "entry variance (default 1/n)"}}},
      {"density", "spectral density of a pencil on a grid", false,
       with_pencil({{"grid", Kind::text, "lo:hi:count"},
                    {"eta", Kind::real, "imaginary height"},
                    {"richardson", Kind::text, "true or false"},
                    {"tol", Kind::real, "solver residual tolerance"},
                    {"damping", Kind::real, "fixed-point damping in (0, 1]"}})},
      {"support", "support intervals of a pencil", false,
       with_pencil({{"eta", Kind::real, "imaginary height of the scan"},
                    {"eps", Kind::real, "endpoint accuracy"},
                    {"tol", Kind::real, "solver residual tolerance"},
                    {"damping", Kind::real, "fixed-point damping in (0, 1]"}})},
      {"norm", "norm of a pencil or of a polynomial in free semicirculars", false,
       with_pencil({{"polynomial", Kind::text, "polynomial such as x1*x1 + x2"},
                    {"depth", Kind::integer, "Fock depth when the Fock route is used"},
                    {"eps", Kind::real, "endpoint accuracy"}})},
      {"fock-moment", "vacuum expectation of a polynomial in free semicirculars", false,
       {{"polynomial", Kind::text, "polynomial such as x1*x2*x2*x1"}, {"depth", Kind::integer, "Fock depth"}}},
      {"master-equation", "expectation of the master-equation residual", true,
       with_pencil({kLambda, kN, kTrials, kThreads})},
      {"master-inequality", "decay of the residual at the averaged resolvent", true,
       with_pencil({kLambda, kNList, kTrials, kThreads})},
      {"gn-vs-g", "distance between averaged and limiting resolvent", true,
       with_pencil({kLambda, kN, kTrials, {"method", Kind::text, "monte-carlo or exact"}, kThreads})},
      {"poincare", "variance bound for spectral statistics", true,
       with_pencil({{"test_function", Kind::text, "gauss, cosine, square, bump[:a] or constant[:c]"}, kN, kTrials,
                    kThreads})},
      {"bias", "decay of the bias of spectral statistics", true,
       with_pencil({{"test_function", Kind::text, "gauss, cosine, square, bump[:a] or constant[:c]"}, kNList, kTrials,
                    {"method", Kind::text, "auto, monte-carlo or exact"}, kThreads})},
      {"containment", "eigenvalues outside the dilated limiting support", true,
       with_pencil({kN, {"eps", Kind::real, "dilation"}, kTrials, kThreads})},
      {"norm-convergence", "norms of a polynomial in random matrices", true,
       {{"polynomial", Kind::text, "polynomial such as x1*x1"}, kNList, kTrials, kThreads}},
      {"expected-norm", "expected norm against its explicit bound", true, {kNList, kTrials, kThreads}},
      {"power-norm", "norm of powers of a Ginibre matrix", true,
       {{"p", Kind::integer, "power"}, kN, kTrials, {"tol", Kind::real, "relative tolerance"}, kThreads}},
      {"unitary-pairs", "norm of sums of tensor products of unitaries", true,
       {{"r", Kind::integer, "tuple length"},
        kN,
        kTrials,
        {"sampler", Kind::text, "psi or qr"},
        {"identical", Kind::text, "true or false"},
        {"tol", Kind::real, "relative tolerance"},
        kThreads}},
      {"circular-bounds", "extreme eigenvalues of S*S for circular sums", true,
       {{"coefficients", Kind::json, "JSON list of rectangular matrices, or @file"}, kN, kTrials, kThreads}},
  };
  return table;
}

std::string read_text_argument(const std::string& value) {
  if (value.empty() || value[0] != '@') return value;
  const std::string path = value.substr(1);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spectra::InvalidParameter("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json convert(const Flag& flag, const std::string& value) {
  switch (flag.kind) {
    case Kind::integer:
    case Kind::real:
    case Kind::text:
      // Typed validation happens when the experiment resolves its parameters.
      if (std::string(flag.name) == "lambda" && !value.empty() && (value[0] == '[' || value[0] == '{')) {
        return Json::parse(value);
      }
      return Json(value);
    case Kind::json:
      return Json::parse(read_text_argument(value));
  }
  return Json(value);
}

struct Invocation {
  const Command* command = nullptr;
  std::map<std::string, std::string> values;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random matrices, free semicirculars and the matrix Dyson equation"};
  app.set_version_flag("--version", spectra::cli::version());
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string output = "-";
  std::string format;
  app.add_option("--seed", seed, "master seed (default: SPECTRA_SEED, else 0)");
  app.add_option("-o,--output", output, "output path, - for standard output");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run a JSON config file");
  run_cmd->add_option("config", config_path, "config file")->required();

  auto* verify = app.add_subcommand("verify", "run one of the verification experiments");
  verify->require_subcommand(1);

  Invocation inv;
  std::vector<std::pair<CLI::App*, const Command*>> registered;
  auto add = [&](CLI::App* parent, const Command& cmd) {
    auto* sub = parent->add_subcommand(cmd.name, cmd.help);
    for (const Flag& f : cmd.flags) {
      std::string flag_name = "--" + std::string(f.name);
      for (auto& c : flag_name) {
        if (c == '_') c = '-';
      }
      sub->add_option_function<std::string>(
             flag_name, [&inv, &f](const std::string& v) { inv.values[f.name] = v; }, f.help)
          ->allow_extra_args(false);
    }
    registered.emplace_back(sub, &cmd);
  };
  for (const Command& cmd : commands()) {
    add(&app, cmd);
    if (cmd.verify) add(verify, cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : spectra::cli::kInvalidConfig;
  }

  if (run_cmd->parsed()) return spectra::cli::run_file(config_path, std::cout, std::cerr);

  for (const auto& [sub, cmd] : registered) {
    if (sub->parsed()) inv.command = cmd;
  }
  if (inv.command == nullptr) {
    std::cerr << app.help();
    return spectra::cli::kInvalidConfig;
  }

  spectra::cli::ExperimentConfig cfg;
  cfg.experiment = inv.command->name;
  cfg.output = output;
  cfg.format = format;
  try {
    cfg.seed = seed ? *seed : spectra::cli::default_seed();
    for (const Flag& f : inv.command->flags) {
      const auto it = inv.values.find(f.name);
      if (it != inv.values.end()) cfg.params[f.name] = convert(f, it->second);
    }
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return spectra::cli::kInvalidConfig;
  }
  return spectra::cli::run(cfg, std::cout, std::cerr);
}
