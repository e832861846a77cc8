#pragma once

// Batch driver behind the `rcqm` executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rcqm/grid.hpp"
#include "rcqm/poincare.hpp"
#include "rcqm/state.hpp"

namespace rcqm::cli {

enum ExitCode : int { kOk = 0, kCliffordFailure = 1, kAlgebraFailure = 2, kEquivalenceFailure = 3, kConfigError = 4 };

inline constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment { VerifyAlgebra, VerifyClifford, Evolve, Equivalence, Conservation };
enum class InitialState { Gaussian, PlaneWave, Random };

struct DebugFlags {
  bool corrupt_gamma = false;
  bool flip_vminus = false;
  bool drop_spin_j12 = false;
};

struct RunConfig {
  std::optional<Experiment> experiment;
  GridSpec grid;
  InitialState initial = InitialState::Gaussian;
  PacketSpec packet;
  std::array<int, 3> plane_wave_offsets{1, 0, 0};
  int plane_wave_alpha = 1;
  std::uint64_t seed = 0;
  Picture picture = Picture::RCQM;
  std::optional<double> horizon;
  std::optional<int> checkpoints;
  std::vector<double> times;
  std::vector<double> algebra_times{0.0, 1.0};
  std::vector<GeneratorRealization> realizations{GeneratorRealization::RcqmX, GeneratorRealization::RcqmK,
                                                 GeneratorRealization::FW, GeneratorRealization::DiracInduced};
  std::vector<Convention> conventions{Convention::Hermitian};
  std::optional<double> tolerance;
  std::optional<std::string> output_dir;
  int snapshot_stride = 0;
  DebugFlags debug;
};

/// Strict parse: schema_version must match and unknown keys are errors.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// d = 1, n = 101, L = 80 smoke configuration derived from `base`.
RunConfig quick_config(RunConfig base);

/// The RCQM initial state described by the config.
State initial_state(const RunConfig& config);

int cmd_verify_clifford(std::ostream& report, std::ostream& log, bool corrupt_gamma = false);
int cmd_verify_algebra(const RunConfig& config, bool quick, std::ostream& csv, std::ostream& log);
int cmd_equivalence(const RunConfig& config, std::ostream& report, std::ostream& log);
int cmd_evolve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Full command line entry point.
int run(int argc, char** argv);

}  // namespace rcqm::cli
