#pragma once

// File-producing commands behind the `uncert` CLI. Each command writes its
// outputs plus a run manifest and returns that manifest. Outputs are a pure
// function of the parameters (seed included), so re-running a manifest
// reproduces every file byte for byte.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace uncert {

std::string tool_version();

/// Process exit codes of the CLI.
enum class ExitCode : int {
    Ok = 0,
    Usage = 64,
    Domain = 65,
    Invariant = 70,
    Io = 74,
};

/// An output failed a post-write consistency check.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct RunManifest {
    std::string command;
    nlohmann::json parameters;
    std::uint64_t rng_seed = 0;
    std::string tool_version;
    /// File names relative to the manifest's directory.
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json &j);
};

struct RegionOptions {
    double overlap = 0.0;
    std::size_t samples = 2001;
    std::filesystem::path out = "region.csv";
};

enum class SweepMode { InPlane, OutOfPlane, QMix };

SweepMode sweep_mode_from_string(const std::string &s);
std::string to_string(SweepMode mode);

struct SweepOptions {
    double overlap = 0.0;
    SweepMode mode = SweepMode::InPlane;
    /// Degrees for the angle sweeps, a plain fraction for q-mix.
    double step = 10.0;
    double phi1_deg = 90.0;
    /// in-plane: unused; out-of-plane: fixed polar angle (default: angle of b);
    /// q-mix: axis r1 (default: optimal mixing angle).
    std::optional<double> theta1_deg;
    /// q-mix only: axis r2 (default: optimal mixing angle).
    std::optional<double> theta2_deg;
    std::filesystem::path out = "sweep.csv";
};

struct SimulateOptions {
    double overlap = 0.0;
    double q = 0.494;
    double theta1_deg = 0.0;
    double theta2_deg = 90.0;
    double phi1_deg = 90.0;
    double rate = 40.0;
    double slot = 60.0;
    double visibility = 0.98;
    std::string contrast = "both-analyzers";
    std::uint64_t seed = 1;
    std::size_t resamples = 1000;
    std::filesystem::path out = "counts.csv";
};

struct FigureOptions {
    std::string figure_id;
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 1;
    std::size_t resamples = 1000;
};

const std::vector<std::string> &figure_ids();

/// region CSV (s, t_lower_E, t_lower_R, on_mixing_segment) and a JSON sidecar.
RunManifest cmd_region(const RegionOptions &opts);
/// sweep CSV (parameter, value, n_a, n_b) and a JSON sidecar.
RunManifest cmd_sweep(const SweepOptions &opts);
/// counts CSV and an analysis JSON sidecar.
RunManifest cmd_simulate(const SimulateOptions &opts);
/// All data behind one figure, a gnuplot script and manifest.json in out_dir.
RunManifest cmd_figure(const FigureOptions &opts);

/// Re-executes the command recorded in a manifest, writing into out_dir.
RunManifest replay_manifest(const RunManifest &manifest, const std::filesystem::path &out_dir);

/// UNCERT_SEED when set (must parse as an unsigned 64-bit integer), otherwise the given seed.
std::uint64_t resolve_seed(std::uint64_t cli_seed);

}  // namespace uncert
