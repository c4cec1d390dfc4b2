// uncert: command-line front end for region, sweep, simulate, figure and replay.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uncert/commands.hpp"
#include "uncert/io.hpp"
#include "uncert/polarimeter.hpp"

namespace {

using uncert::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

void report(const uncert::RunManifest &manifest) {
    std::cout << manifest.command << ":";
    for (const auto &out : manifest.outputs) {
        std::cout << ' ' << out;
    }
    std::cout << '\n';
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise-noise uncertainty regions for qubit measurements"};
    app.set_version_flag("--version", uncert::tool_version());
    app.require_subcommand(1);

    uncert::RegionOptions region;
    auto *region_cmd = app.add_subcommand("region", "Lower boundaries of E(A,B) and R(A,B)");
    region_cmd->add_option("--overlap", region.overlap, "|a.b| in [0, 1]")->required();
    region_cmd->add_option("--samples", region.samples, "Number of s samples")->capture_default_str();
    region_cmd->add_option("--out", region.out, "Output CSV")->capture_default_str();

    uncert::SweepOptions sweep;
    std::string sweep_mode = "in-plane";
    double sweep_theta1 = 0.0;
    double sweep_theta2 = 0.0;
    auto *sweep_cmd = app.add_subcommand("sweep", "Noise of a family of measurements");
    sweep_cmd->add_option("--overlap", sweep.overlap, "|a.b| in [0, 1]")->required();
    sweep_cmd->add_option("--mode", sweep_mode, "in-plane, out-of-plane or q-mix")->capture_default_str();
    auto *sweep_step = sweep_cmd->add_option("--step", sweep.step, "Angle step in degrees (default 10), or q step "
                                                                   "for q-mix (default 0.1)");
    sweep_cmd->add_option("--phi1-deg", sweep.phi1_deg, "Azimuth of the in-plane sweep")->capture_default_str();
    auto *sweep_t1 = sweep_cmd->add_option("--theta1-deg", sweep_theta1, "Polar angle (out-of-plane) or r1 (q-mix)");
    auto *sweep_t2 = sweep_cmd->add_option("--theta2-deg", sweep_theta2, "r2 angle for q-mix");
    sweep_cmd->add_option("--out", sweep.out, "Output CSV")->capture_default_str();

    uncert::SimulateOptions sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Poisson counts for one mixed projective POVM");
    sim_cmd->add_option("--overlap", sim.overlap, "|a.b| in [0, 1]")->capture_default_str();
    sim_cmd->add_option("--q", sim.q, "Weight of the r1 measurement")->capture_default_str();
    sim_cmd->add_option("--theta1-deg", sim.theta1_deg, "Polar angle of r1 from a")->capture_default_str();
    sim_cmd->add_option("--theta2-deg", sim.theta2_deg, "Polar angle of r2 from a (in plane)")
        ->capture_default_str();
    sim_cmd->add_option("--phi1-deg", sim.phi1_deg, "Azimuth of r1 (90 = in plane)")->capture_default_str();
    sim_cmd->add_option("--rate", sim.rate, "Neutron count rate [1/s]")->capture_default_str();
    sim_cmd->add_option("--slot", sim.slot, "Time slot per cell group [s]")->capture_default_str();
    sim_cmd->add_option("--visibility", sim.visibility, "Contrast V in [0, 1]")->capture_default_str();
    sim_cmd->add_option("--contrast", sim.contrast, "both-analyzers or second-analyzer-only")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    sim_cmd->add_option("--resamples", sim.resamples, "Bootstrap resamples")->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Output counts CSV")->capture_default_str();

    uncert::FigureOptions fig;
    auto *fig_cmd = app.add_subcommand("figure", "All data behind one figure");
    fig_cmd->add_option("id", fig.figure_id, "2a, 2b, 2c, 3a, 3b, 4 or 5")->required();
    fig_cmd->add_option("--out-dir", fig.out_dir, "Output directory")->capture_default_str();
    fig_cmd->add_option("--seed", fig.seed, "Base RNG seed")->capture_default_str();
    fig_cmd->add_option("--resamples", fig.resamples, "Bootstrap resamples")->capture_default_str();

    std::string manifest_path;
    std::string replay_dir = ".";
    auto *replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay_cmd->add_option("manifest", manifest_path, "Manifest JSON")->required();
    replay_cmd->add_option("--out-dir", replay_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::Usage);
    }

    try {
        if (*region_cmd) {
            report(uncert::cmd_region(region));
        } else if (*sweep_cmd) {
            sweep.mode = uncert::sweep_mode_from_string(sweep_mode);
            if (!*sweep_step && sweep.mode == uncert::SweepMode::QMix) {
                sweep.step = 0.1;
            }
            if (*sweep_t1) {
                sweep.theta1_deg = sweep_theta1;
            }
            if (*sweep_t2) {
                sweep.theta2_deg = sweep_theta2;
            }
            report(uncert::cmd_sweep(sweep));
        } else if (*sim_cmd) {
            sim.seed = uncert::resolve_seed(sim.seed);
            report(uncert::cmd_simulate(sim));
        } else if (*fig_cmd) {
            fig.seed = uncert::resolve_seed(fig.seed);
            report(uncert::cmd_figure(fig));
        } else if (*replay_cmd) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(uncert::read_text_file(manifest_path));
            } catch (const nlohmann::json::exception &e) {
                throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
            }
            report(uncert::replay_manifest(uncert::RunManifest::from_json(j), replay_dir));
        }
    } catch (const uncert::InvariantError &e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return code(ExitCode::Invariant);
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return code(ExitCode::Usage);
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "usage error: manifest: " << e.what() << '\n';
        return code(ExitCode::Usage);
    } catch (const std::domain_error &e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return code(ExitCode::Domain);
    } catch (const uncert::EstimationError &e) {
        std::cerr << "estimation error: " << e.what() << '\n';
        return code(ExitCode::Domain);
    } catch (const uncert::IoError &e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return code(ExitCode::Io);
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return code(ExitCode::Invariant);
    }
    return code(ExitCode::Ok);
}
