#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace dessinmetric::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kInputError = 2,
  kCyclicExclusion = 3,
  kGenusMismatch = 4,
};

/// Topology, passport, triangulation counts and automorphism group of a
/// dessin file, printed as JSON.
int cmd_info(const std::string& path, std::ostream& out, std::ostream& err);

struct MetricOptions {
  // Exactly one of group_tag / generators_path / dessin_path must be set;
  // generators_path may accompany dessin_path.
  std::string group_tag;
  std::string generators_path;
  std::string dessin_path;
  std::string construction = "conjugate";  // average | conjugate | hermitian | orbit
  int grid = 40;
  double step = 1e-3;
  std::string scheme = "richardson";  // richardson | central
  std::uint64_t seed = 0;
  std::string out_path;     // grid destination; empty means `out`
  std::string report_path;  // report destination; empty means `out` (or `err` when the grid uses `out`)
  std::string format = "csv";  // csv | json
  int workers = 1;
};

/// Builds the requested metric, writes the sample grid and a JSON run report.
int cmd_metric(const MetricOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string scope = "all";  // groups | metrics | sc | all
  /// Test hook: scales one entry of a standard generator by 1.001.
  bool perturb = false;
};

/// Runs the property checks of the chosen scope and prints a pass/fail table.
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

/// Schwarz–Christoffel demo: image polygon and boundary correspondence.
int cmd_sc(const std::string& out_path, int samples, std::ostream& out, std::ostream& err);

}  // namespace dessinmetric::cli
