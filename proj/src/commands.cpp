#include "uncert/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "uncert/entropy.hpp"
#include "uncert/io.hpp"
#include "uncert/polarimeter.hpp"
#include "uncert/region.hpp"

#ifndef UNCERT_VERSION
#define UNCERT_VERSION "0.0.0"
#endif

namespace uncert {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double deg2rad(double deg) { return deg / kDegPerRad; }
double rad2deg(double rad) { return rad * kDegPerRad; }

void require_overlap(double overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw std::domain_error("overlap must lie in [0, 1]");
    }
}

std::string num(double v) { return format_number(v); }

// Collects output files of one run and writes them relative to a directory.
class OutputSet {
  public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    void add(const std::string &name, const std::string &contents) {
        write_text_file(dir_ / name, contents);
        names_.push_back(name);
    }
    void add_csv(const std::string &name, const CsvTable &table) { add(name, table.to_string()); }
    void add_json(const std::string &name, const json &j) { add(name, j.dump(2) + "\n"); }

    const fs::path &dir() const { return dir_; }
    const std::vector<std::string> &names() const { return names_; }

  private:
    fs::path dir_;
    std::vector<std::string> names_;
};

// Re-reads every output and checks it parses; CSVs must keep a constant column count.
void verify_outputs(const OutputSet &outputs) {
    for (const auto &name : outputs.names()) {
        const fs::path path = outputs.dir() / name;
        const std::string text = read_text_file(path);
        const auto ext = path.extension();
        try {
            if (ext == ".csv") {
                CsvTable::parse(text);
            } else if (ext == ".json" && !json::accept(text)) {
                throw IoError("not valid JSON");
            }
        } catch (const std::exception &e) {
            throw InvariantError("output " + name + " failed to re-parse: " + e.what());
        }
    }
}

RunManifest finish(const std::string &command, const json &parameters, std::uint64_t seed, OutputSet &outputs,
                   const std::string &manifest_name) {
    verify_outputs(outputs);
    RunManifest manifest{command, parameters, seed, tool_version(), outputs.names()};
    write_text_file(outputs.dir() / manifest_name, manifest.to_json().dump(2) + "\n");
    return manifest;
}

fs::path output_dir_of(const fs::path &out) {
    const fs::path parent = out.parent_path();
    return parent.empty() ? fs::path(".") : parent;
}

std::string sibling_name(const fs::path &out, const std::string &suffix) { return out.stem().string() + suffix; }

CsvTable region_table(const NoiseRegion &region, std::size_t samples) {
    CsvTable table({"s", "t_lower_E", "t_lower_R", "on_mixing_segment"});
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = i + 1 == samples ? 1.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
        const double te = region.lower_t_e(s);
        const double tr = region.lower_t_r(s);
        if (tr > te + 1e-12) {
            throw InvariantError("region: hull boundary above the E boundary at s = " + num(s));
        }
        table.add_row({num(s), num(te), num(tr), region.on_mixing_segment(s) ? "1" : "0"});
    }
    return table;
}

json region_summary(const ObservablePair &pair, const NoiseRegion &region) {
    json j{{"c", pair.c()},
           {"convex", region.is_convex()},
           {"convexity_threshold", convexity_threshold()},
           {"maassen_uffink_bound", maassen_uffink_bound(pair)}};
    if (region.segment()) {
        const MixingSegment &seg = *region.segment();
        if (std::abs(seg.first.t - lower_boundary_t(pair, seg.first.s)) > 1e-6 ||
            std::abs(seg.second.t - lower_boundary_t(pair, seg.second.s)) > 1e-6) {
            throw InvariantError("region: mixing endpoints are not on the boundary");
        }
        if (std::abs(seg.first.s - seg.second.t) > 1e-6 || std::abs(seg.first.t - seg.second.s) > 1e-6) {
            throw InvariantError("region: mixing endpoints are not mirror images");
        }
        j["mixing_segment"] = to_json(seg);
    } else {
        j["mixing_segment"] = nullptr;
    }
    return j;
}

// Angle sweeps are labelled start + k * step in degrees so the CSV shows 30, not 29.999999999999996.
struct AngleLabels {
    double start_deg = 0.0;
    double step_deg = 0.0;
    double at(std::size_t k) const { return start_deg + static_cast<double>(k) * step_deg; }
};

constexpr AngleLabels kTenDegreesFrom0{0.0, 10.0};
constexpr AngleLabels kTenDegreesFrom90{90.0, 10.0};


CsvTable sweep_table(const std::string &parameter, const std::vector<SweepSample> &samples,
                     std::optional<AngleLabels> angle, bool swap_coordinates = false) {
    CsvTable table({"parameter", "value", "n_a", "n_b"});
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto &smp = samples[k];
        const double na = swap_coordinates ? smp.point.n_b : smp.point.n_a;
        const double nb = swap_coordinates ? smp.point.n_a : smp.point.n_b;
        const double value = angle ? std::min(angle->at(k), 180.0) : smp.parameter;
        table.add_row({parameter, num(value), num(na), num(nb)});
    }
    return table;
}

void check_q_sweep_affine(const std::vector<SweepSample> &samples) {
    const NoisePoint &p0 = samples.front().point;
    const NoisePoint &p1 = samples.back().point;
    for (const auto &smp : samples) {
        const double q = smp.parameter;
        if (std::abs(smp.point.n_a - (q * p1.n_a + (1.0 - q) * p0.n_a)) > 1e-10 ||
            std::abs(smp.point.n_b - (q * p1.n_b + (1.0 - q) * p0.n_b)) > 1e-10) {
            throw InvariantError("q sweep: noise is not affine in q");
        }
    }
}

struct MixingAxes {
    double theta1 = 0.0;
    double theta2 = 0.0;
    BlochVector r1;
    BlochVector r2;
};

MixingAxes optimal_mixing_axes(const ObservablePair &pair) {
    const auto seg = mixing_segment(pair);
    if (!seg) {
        throw std::domain_error("the lower boundary is convex at overlap " + num(pair.c()) +
                                "; there is no mixing segment (pass explicit angles)");
    }
    return {seg->theta_first, seg->theta_second, BlochVector::unit(pair.mixing_axis(seg->theta_first)),
            BlochVector::unit(pair.mixing_axis(seg->theta_second))};
}

struct SimulatedPoint {
    CountsRecord record;
    double q_hat = 0.0;
    NoisePoint noise;
    NoisePoint analytic;
};

SimulatedPoint simulate_point(const MixedProjectivePovm &povm, const ObservablePair &pair,
                              const BeamlineConfig &config, std::size_t resamples) {
    SimulatedPoint out;
    out.record = simulate_counts(povm, pair, config);
    out.q_hat = estimate_q(out.record);
    out.noise = noise_from_counts(out.record, resamples);
    out.analytic = degraded_noise(povm, pair, config);
    return out;
}

BeamlineConfig default_config(std::uint64_t seed) {
    BeamlineConfig config;
    config.rng_seed = seed;
    return config;
}

struct Preset {
    std::string id;
    double overlap;
    std::string note;
};

const std::vector<Preset> &region_presets() {
    static const std::vector<Preset> presets{
        {"2a", 0.0, "a.b ~ 0"},
        {"2b", 0.07, "a.b ~ 0.07 (nominal; the experimental b is not known exactly)"},
        {"2c", std::cos(deg2rad(79.0)), "a.b = cos 79 deg ~ 0.19 (nominal; the experimental b is not known exactly)"},
        {"3a", 0.35, "a.b ~ 0.35"},
        {"3b", 0.5, "a.b ~ 0.5"},
    };
    return presets;
}

std::string region_plot_script(const std::string &id, bool with_qmix) {
    std::ostringstream gp;
    gp << "# gnuplot script for figure " << id << "\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel 'N(M,A) [bits]'\nset ylabel 'N(M,B) [bits]'\n"
       << "set xrange [0:1]\nset yrange [0:1]\nset size square\n"
       << "set terminal pngcairo size 800,800\nset output 'figure_" << id << ".png'\n"
       << "plot 'region.csv' using 1:2 with lines lw 2 lc rgb 'purple' title 'E(A,B) lower boundary', \\\n"
       << "     'region.csv' using 1:3 with lines lw 2 dt 2 lc rgb 'orange' title 'R(A,B) lower boundary', \\\n"
       << "     'sweep_in_plane.csv' using 3:4 with linespoints lc rgb 'blue' title 'in-plane projective', \\\n"
       << "     'sweep_out_of_plane_a.csv' using 3:4 with points lc rgb 'purple' title 'r1 = a out of plane', \\\n"
       << "     'sweep_out_of_plane_b.csv' using 3:4 with points lc rgb 'purple' title 'r1 = b out of plane', \\\n";
    if (with_qmix) {
        gp << "     'sweep_q_mix.csv' using 3:4 with linespoints lc rgb 'red' title 'mixed POVM', \\\n";
    }
    gp << "     'simulated.csv' using 5:6:7:8 with xyerrorbars lc rgb 'black' title 'simulated'\n";
    return gp.str();
}

std::string counts_plot_script(const std::string &id, std::size_t runs) {
    std::ostringstream gp;
    gp << "# gnuplot script for figure " << id << ": counts for the + eigenstates\n"
       << "set datafile separator ','\n"
       << "set style data histograms\nset style fill solid 0.8\n"
       << "set terminal pngcairo size 1200,800\nset output 'figure_" << id << ".png'\n"
       << "set multiplot layout 2," << runs << "\n";
    for (const char *axis : {"a", "b"}) {
        for (std::size_t k = 0; k < runs; ++k) {
            gp << "set title 'I_{" << axis << ",m} run " << k << "'\n"
               << "plot 'counts_run" << k << ".csv' using (strcol(1) eq '" << axis
               << "' && strcol(2) eq '+' ? $4 : 1/0):xtic(3) notitle\n";
        }
    }
    gp << "unset multiplot\n";
    return gp.str();
}

CsvTable simulated_table() {
    return CsvTable({"series", "parameter", "value", "q_hat", "n_a", "n_b", "sigma_a", "sigma_b", "analytic_n_a",
                     "analytic_n_b"});
}

void add_simulated_row(CsvTable &table, const std::string &series, const std::string &parameter, double value,
                       const SimulatedPoint &p) {
    table.add_row({series, parameter, num(value), num(p.q_hat), num(p.noise.n_a), num(p.noise.n_b),
                   num(*p.noise.sigma_a), num(*p.noise.sigma_b), num(p.analytic.n_a), num(p.analytic.n_b)});
}

RunManifest region_figure(const Preset &preset, const FigureOptions &opts, const json &params) {
    OutputSet outputs(opts.out_dir);
    const ObservablePair pair = ObservablePair::from_overlap(preset.overlap);
    const NoiseRegion region(pair);
    const double step = deg2rad(10.0);

    outputs.add_csv("region.csv", region_table(region, kDefaultBoundarySamples));
    json summary = region_summary(pair, region);
    summary["overlap"] = preset.overlap;
    summary["note"] = preset.note;
    outputs.add_json("region.json", summary);

    const auto in_plane = projective_sweep(pair, step, 0.5 * std::numbers::pi);
    outputs.add_csv("sweep_in_plane.csv", sweep_table("theta1", in_plane, kTenDegreesFrom0));
    outputs.add_csv("sweep_out_of_plane_b.csv",
                    sweep_table("phi1", azimuthal_sweep(pair, pair.opening_angle(), step), kTenDegreesFrom90));
    outputs.add_csv("sweep_out_of_plane_a.csv",
                    sweep_table("phi1", azimuthal_sweep(pair.swapped(), pair.opening_angle(), step), kTenDegreesFrom90,
                                true));

    CsvTable simulated = simulated_table();
    std::uint64_t run = 0;
    for (const auto &smp : in_plane) {
        const BlochVector r = BlochVector::unit(pair.sweep_axis(smp.parameter, 0.5 * std::numbers::pi));
        const auto p = simulate_point({1.0, r, r}, pair, default_config(opts.seed + run++), opts.resamples);
        add_simulated_row(simulated, "in-plane", "theta1", kTenDegreesFrom0.at(run - 1), p);
    }

    const bool with_qmix = region.segment().has_value();
    if (with_qmix) {
        const MixingAxes axes = optimal_mixing_axes(pair);
        const auto qmix = povm_q_sweep(axes.r1, axes.r2, pair, 0.1);
        check_q_sweep_affine(qmix);
        outputs.add_csv("sweep_q_mix.csv", sweep_table("q", qmix, std::nullopt));
        for (const auto &smp : qmix) {
            const auto p =
                simulate_point({smp.parameter, axes.r1, axes.r2}, pair, default_config(opts.seed + run++), opts.resamples);
            add_simulated_row(simulated, "q-mix", "q", smp.parameter, p);
        }
    }
    outputs.add_csv("simulated.csv", simulated);
    outputs.add("plot.gp", region_plot_script(preset.id, with_qmix));
    return finish("figure", params, opts.seed, outputs, "manifest.json");
}

RunManifest counts_figure(const std::string &id, const FigureOptions &opts, const json &params) {
    OutputSet outputs(opts.out_dir);
    constexpr std::size_t kRuns = 6;
    CsvTable summary({"run", "theta1_deg", "theta2_deg", "target_q", "q_hat", "n_a", "n_b", "sigma_a", "sigma_b"});

    ObservablePair pair = ObservablePair::from_overlap(0.5);
    MixingAxes axes;
    if (id == "5") {
        pair = ObservablePair::from_overlap(std::cos(deg2rad(79.0)));
        axes = optimal_mixing_axes(pair);
    }
    for (std::size_t k = 0; k < kRuns; ++k) {
        MixedProjectivePovm povm;
        double theta1 = 0.0;
        double theta2 = 0.0;
        if (id == "4") {
            // q ~ 1, r1 stepped by pi/6 from a, r2 = e_z.
            theta1 = deg2rad(30.0 * static_cast<double>(k));
            povm = {1.0, BlochVector::unit(pair.sweep_axis(theta1, 0.5 * std::numbers::pi)), BlochVector::ez()};
        } else {
            // q from 1 down to 0 in steps of 0.2 along the optimal mixing axes.
            theta1 = axes.theta1;
            theta2 = axes.theta2;
            povm = {static_cast<double>(kRuns - 1 - k) / static_cast<double>(kRuns - 1), axes.r1, axes.r2};
        }
        const auto p = simulate_point(povm, pair, default_config(opts.seed + k), opts.resamples);
        outputs.add_csv("counts_run" + std::to_string(k) + ".csv", counts_to_csv(p.record));
        const double theta1_deg = id == "4" ? 30.0 * static_cast<double>(k) : rad2deg(theta1);
        summary.add_row({std::to_string(k), num(theta1_deg), num(rad2deg(theta2)), num(povm.q), num(p.q_hat),
                         num(p.noise.n_a), num(p.noise.n_b), num(*p.noise.sigma_a), num(*p.noise.sigma_b)});
    }
    outputs.add_csv("summary.csv", summary);
    outputs.add("plot.gp", counts_plot_script(id, kRuns));
    return finish("figure", params, opts.seed, outputs, "manifest.json");
}

}  // namespace

std::string tool_version() { return UNCERT_VERSION; }

json RunManifest::to_json() const {
    return {{"command", command},
            {"parameters", parameters},
            {"rng_seed", rng_seed},
            {"tool_version", tool_version},
            {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const json &j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    m.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

SweepMode sweep_mode_from_string(const std::string &s) {
    if (s == "in-plane") {
        return SweepMode::InPlane;
    }
    if (s == "out-of-plane") {
        return SweepMode::OutOfPlane;
    }
    if (s == "q-mix") {
        return SweepMode::QMix;
    }
    throw std::invalid_argument("unknown sweep mode '" + s + "' (expected in-plane, out-of-plane or q-mix)");
}

std::string to_string(SweepMode mode) {
    switch (mode) {
    case SweepMode::InPlane:
        return "in-plane";
    case SweepMode::OutOfPlane:
        return "out-of-plane";
    case SweepMode::QMix:
        return "q-mix";
    }
    return "in-plane";
}

const std::vector<std::string> &figure_ids() {
    static const std::vector<std::string> ids{"2a", "2b", "2c", "3a", "3b", "4", "5"};
    return ids;
}

RunManifest cmd_region(const RegionOptions &opts) {
    require_overlap(opts.overlap);
    if (opts.samples < 2) {
        throw std::domain_error("region: at least 2 samples are required");
    }
    const ObservablePair pair = ObservablePair::from_overlap(opts.overlap);
    const NoiseRegion region(pair);
    const json params{{"overlap", opts.overlap}, {"samples", opts.samples}, {"out", opts.out.filename().string()}};

    OutputSet outputs(output_dir_of(opts.out));
    outputs.add_csv(opts.out.filename().string(), region_table(region, opts.samples));
    json summary = region_summary(pair, region);
    summary["parameters"] = params;
    outputs.add_json(sibling_name(opts.out, ".json"), summary);
    return finish("region", params, 0, outputs, sibling_name(opts.out, ".manifest.json"));
}

RunManifest cmd_sweep(const SweepOptions &opts) {
    require_overlap(opts.overlap);
    if (!(opts.step > 0.0)) {
        throw std::domain_error("sweep: step must be positive");
    }
    const ObservablePair pair = ObservablePair::from_overlap(opts.overlap);
    json params{{"overlap", opts.overlap},
                {"mode", to_string(opts.mode)},
                {"step", opts.step},
                {"phi1_deg", opts.phi1_deg},
                {"theta1_deg", opts.theta1_deg ? json(*opts.theta1_deg) : json(nullptr)},
                {"theta2_deg", opts.theta2_deg ? json(*opts.theta2_deg) : json(nullptr)},
                {"out", opts.out.filename().string()}};
    json sidecar{{"parameters", params}, {"c", pair.c()}};

    CsvTable table({"parameter", "value", "n_a", "n_b"});
    switch (opts.mode) {
    case SweepMode::InPlane:
        table = sweep_table("theta1", projective_sweep(pair, deg2rad(opts.step), deg2rad(opts.phi1_deg)),
                            AngleLabels{0.0, opts.step});
        break;
    case SweepMode::OutOfPlane: {
        const double theta = opts.theta1_deg ? deg2rad(*opts.theta1_deg) : pair.opening_angle();
        sidecar["theta1_deg"] = rad2deg(theta);
        table = sweep_table("phi1", azimuthal_sweep(pair, theta, deg2rad(opts.step)), AngleLabels{90.0, opts.step});
        break;
    }
    case SweepMode::QMix: {
        if (opts.step > 1.0) {
            throw std::domain_error("sweep: q step must lie in (0, 1]");
        }
        MixingAxes axes;
        if (opts.theta1_deg && opts.theta2_deg) {
            axes.theta1 = deg2rad(*opts.theta1_deg);
            axes.theta2 = deg2rad(*opts.theta2_deg);
            axes.r1 = BlochVector::unit(pair.mixing_axis(axes.theta1));
            axes.r2 = BlochVector::unit(pair.mixing_axis(axes.theta2));
        } else {
            axes = optimal_mixing_axes(pair);
        }
        const auto samples = povm_q_sweep(axes.r1, axes.r2, pair, opts.step);
        check_q_sweep_affine(samples);
        sidecar["theta1_deg"] = rad2deg(axes.theta1);
        sidecar["theta2_deg"] = rad2deg(axes.theta2);
        sidecar["r1"] = to_json(axes.r1);
        sidecar["r2"] = to_json(axes.r2);
        table = sweep_table("q", samples, std::nullopt);
        break;
    }
    }

    OutputSet outputs(output_dir_of(opts.out));
    outputs.add_csv(opts.out.filename().string(), table);
    outputs.add_json(sibling_name(opts.out, ".json"), sidecar);
    return finish("sweep", params, 0, outputs, sibling_name(opts.out, ".manifest.json"));
}

RunManifest cmd_simulate(const SimulateOptions &opts) {
    require_overlap(opts.overlap);
    if (opts.resamples < 100) {
        throw std::domain_error("simulate: at least 100 bootstrap resamples are required");
    }
    const ObservablePair pair = ObservablePair::from_overlap(opts.overlap);
    BeamlineConfig config;
    config.count_rate = opts.rate;
    config.slot_duration = opts.slot;
    config.visibility = opts.visibility;
    config.rng_seed = opts.seed;
    config.contrast = contrast_model_from_string(opts.contrast);
    config.validate();

    const MixedProjectivePovm povm{
        opts.q, BlochVector::unit(pair.sweep_axis(deg2rad(opts.theta1_deg), deg2rad(opts.phi1_deg))),
        BlochVector::unit(pair.sweep_axis(deg2rad(opts.theta2_deg), 0.5 * std::numbers::pi))};
    povm.validate();

    const json params{{"overlap", opts.overlap},       {"q", opts.q},
                      {"theta1_deg", opts.theta1_deg}, {"theta2_deg", opts.theta2_deg},
                      {"phi1_deg", opts.phi1_deg},     {"rate", opts.rate},
                      {"slot", opts.slot},             {"visibility", opts.visibility},
                      {"contrast", opts.contrast},     {"seed", opts.seed},
                      {"resamples", opts.resamples},   {"out", opts.out.filename().string()}};

    const SimulatedPoint p = simulate_point(povm, pair, config, opts.resamples);
    const auto [joint_a, joint_b] = estimate_joint(p.record);
    const ViolationCheck violation = projective_violation(p.noise);

    json analysis{{"parameters", params},
                  {"povm", to_json(expand_mixed_povm(povm))},
                  {"record", to_json(p.record)},
                  {"joint_a", to_json(joint_a)},
                  {"joint_b", to_json(joint_b)},
                  {"q_hat", p.q_hat},
                  {"noise", to_json(p.noise)},
                  {"analytic_noise", to_json(p.analytic)},
                  {"ideal_noise", to_json(noise_point(expand_mixed_povm(povm), pair.observable_a(),
                                                      pair.observable_b()))},
                  {"projective_bound",
                   {{"lhs", violation.lhs},
                    {"sigma", violation.sigma},
                    {"significance", violation.significance},
                    {"violated", violation.lhs > 1.0}}}};

    OutputSet outputs(output_dir_of(opts.out));
    outputs.add_csv(opts.out.filename().string(), counts_to_csv(p.record));
    outputs.add_json(sibling_name(opts.out, ".json"), analysis);
    return finish("simulate", params, opts.seed, outputs, sibling_name(opts.out, ".manifest.json"));
}

RunManifest cmd_figure(const FigureOptions &opts) {
    const auto &ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), opts.figure_id) == ids.end()) {
        std::string valid;
        for (const auto &id : ids) {
            valid += (valid.empty() ? "" : ", ") + id;
        }
        throw std::invalid_argument("unknown figure id '" + opts.figure_id + "' (valid: " + valid + ")");
    }
    if (opts.resamples < 100) {
        throw std::domain_error("figure: at least 100 bootstrap resamples are required");
    }
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + opts.out_dir.string() + ": " + ec.message());
    }
    const json params{{"figure", opts.figure_id}, {"seed", opts.seed}, {"resamples", opts.resamples}};
    for (const auto &preset : region_presets()) {
        if (preset.id == opts.figure_id) {
            return region_figure(preset, opts, params);
        }
    }
    return counts_figure(opts.figure_id, opts, params);
}

RunManifest replay_manifest(const RunManifest &manifest, const fs::path &out_dir) {
    const json &p = manifest.parameters;
    auto out_path = [&](const char *key) { return out_dir / p.at(key).get<std::string>(); };
    if (manifest.command == "region") {
        return cmd_region({p.at("overlap").get<double>(), p.at("samples").get<std::size_t>(), out_path("out")});
    }
    if (manifest.command == "sweep") {
        SweepOptions o;
        o.overlap = p.at("overlap").get<double>();
        o.mode = sweep_mode_from_string(p.at("mode").get<std::string>());
        o.step = p.at("step").get<double>();
        o.phi1_deg = p.at("phi1_deg").get<double>();
        if (!p.at("theta1_deg").is_null()) {
            o.theta1_deg = p.at("theta1_deg").get<double>();
        }
        if (!p.at("theta2_deg").is_null()) {
            o.theta2_deg = p.at("theta2_deg").get<double>();
        }
        o.out = out_path("out");
        return cmd_sweep(o);
    }
    if (manifest.command == "simulate") {
        SimulateOptions o;
        o.overlap = p.at("overlap").get<double>();
        o.q = p.at("q").get<double>();
        o.theta1_deg = p.at("theta1_deg").get<double>();
        o.theta2_deg = p.at("theta2_deg").get<double>();
        o.phi1_deg = p.at("phi1_deg").get<double>();
        o.rate = p.at("rate").get<double>();
        o.slot = p.at("slot").get<double>();
        o.visibility = p.at("visibility").get<double>();
        o.contrast = p.at("contrast").get<std::string>();
        o.seed = p.at("seed").get<std::uint64_t>();
        o.resamples = p.at("resamples").get<std::size_t>();
        o.out = out_path("out");
        return cmd_simulate(o);
    }
    if (manifest.command == "figure") {
        return cmd_figure({p.at("figure").get<std::string>(), out_dir, p.at("seed").get<std::uint64_t>(),
                           p.at("resamples").get<std::size_t>()});
    }
    throw std::invalid_argument("manifest names unknown command '" + manifest.command + "'");
}

std::uint64_t resolve_seed(std::uint64_t cli_seed) {
    const char *env = std::getenv("UNCERT_SEED");
    if (env == nullptr || *env == '\0') {
        return cli_seed;
    }
    std::uint64_t seed = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::domain_error("UNCERT_SEED must be an unsigned 64-bit integer");
    }
    return seed;
}

}  // namespace uncert
