#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/dyson.hpp"
#include "spectra/linalg.hpp"
#include "spectra/pencil.hpp"

namespace spectra::cli {

using Json = nlohmann::ordered_json;

const char* version();

enum ExitCode : int {
  kOk = 0,
  kInvalidConfig = 1,
  kSolverFailure = 2,
  kCheckFailed = 3,
  kIoError = 4,
};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  Json params = Json::object();
  /// "-" writes to standard output.
  std::string output = "-";
  /// "json" or "csv"; empty picks the experiment's natural format.
  std::string format;
};

/// Names accepted in ExperimentConfig::experiment.
const std::vector<std::string>& experiment_names();

/// SPECTRA_SEED when set to an unsigned integer, otherwise 0.
std::uint64_t default_seed();

/// Reads {"experiment", "seed", "params", "output", "format"}; unknown keys
/// are rejected. A missing seed falls back to default_seed().
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& cfg);

/// "lo:hi:count"
std::vector<double> parse_grid(const std::string& text);

/// Scalar literal ("0+1i", 2, {"re":0,"im":1}) times 1_m, or a full m x m literal.
Matrix parse_lambda(const Json& j, Index m);

struct Artifact {
  /// Fully resolved configuration, defaults included.
  ExperimentConfig config;
  Json result;
  std::string csv;
  bool passed = true;
};

/// Validates every parameter, runs the experiment and returns its artifact.
/// Throws InvalidParameter, SolverFailure or NumericFailure.
Artifact execute(const ExperimentConfig& cfg);

/// The serialized artifact, embedding the resolved config and the version.
std::string render(const Artifact& artifact);

/// execute + render + write. Returns an ExitCode; messages go to `err`.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Loads a JSON config file and runs it.
int run_file(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace spectra::cli
