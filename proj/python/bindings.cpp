// Python bindings: module uncert._core.

#include <array>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "uncert/commands.hpp"
#include "uncert/entropy.hpp"
#include "uncert/io.hpp"
#include "uncert/polarimeter.hpp"
#include "uncert/qubit.hpp"
#include "uncert/region.hpp"

namespace py = pybind11;
using namespace uncert;

namespace {

py::dict manifest_dict(const RunManifest &m) {
    return py::module_::import("json").attr("loads")(m.to_json().dump());
}

std::vector<std::vector<double>> joint_rows(const JointDistribution &j) {
    std::vector<std::vector<double>> rows;
    for (std::size_t x = 0; x < 2; ++x) {
        const auto r = j.row(x);
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Noise-noise uncertainty regions for qubit measurements";
    m.attr("__version__") = tool_version();

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<EstimationError>(m, "EstimationError", PyExc_ArithmeticError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<BlochVector>(m, "BlochVector")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def(py::init([](const std::array<double, 3> &v) { return BlochVector{v[0], v[1], v[2]}; }))
        .def_readwrite("x", &BlochVector::x)
        .def_readwrite("y", &BlochVector::y)
        .def_readwrite("z", &BlochVector::z)
        .def("dot", &BlochVector::dot)
        .def("norm", &BlochVector::norm)
        .def_static("unit", py::overload_cast<double, double, double>(&BlochVector::unit))
        .def("__iter__", [](const BlochVector &v) { return py::iter(py::make_tuple(v.x, v.y, v.z)); })
        .def("__repr__", [](const BlochVector &v) {
            return "BlochVector(" + format_number(v.x) + ", " + format_number(v.y) + ", " + format_number(v.z) + ")";
        });
    py::implicitly_convertible<py::tuple, BlochVector>();

    py::class_<QubitEffect>(m, "QubitEffect")
        .def(py::init<double, const BlochVector &>(), py::arg("gamma"), py::arg("v"))
        .def_static("projector", &QubitEffect::projector, py::arg("axis"), py::arg("sign"))
        .def_property_readonly("gamma", &QubitEffect::gamma)
        .def_property_readonly("v", &QubitEffect::v);

    py::class_<Povm>(m, "Povm")
        .def(py::init<std::vector<QubitEffect>>(), py::arg("effects"))
        .def_static("projective", &Povm::projective, py::arg("axis"))
        .def("__len__", &Povm::size)
        .def("__getitem__", [](const Povm &p, std::size_t i) {
            if (i >= p.size()) {
                throw py::index_error();
            }
            return p[i];
        });

    py::class_<MixedProjectivePovm>(m, "MixedProjectivePovm")
        .def(py::init([](double q, const BlochVector &r1, const BlochVector &r2) {
                 MixedProjectivePovm p{q, r1, r2};
                 p.validate();
                 return p;
             }),
             py::arg("q"), py::arg("r1"), py::arg("r2"))
        .def_readonly("q", &MixedProjectivePovm::q)
        .def_readonly("r1", &MixedProjectivePovm::r1)
        .def_readonly("r2", &MixedProjectivePovm::r2)
        .def("expand", &expand_mixed_povm);

    py::class_<PauliObservable>(m, "PauliObservable")
        .def(py::init<const BlochVector &>(), py::arg("axis"))
        .def_property_readonly("axis", &PauliObservable::axis);

    m.def("joint_distribution", [](const Povm &p, const PauliObservable &o) {
        return joint_rows(joint_distribution(p, o));
    });
    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("inverse_binary_entropy", &inverse_binary_entropy, py::arg("y"));
    m.def("noise", &noise, py::arg("povm"), py::arg("observable"));

    py::class_<NoisePoint>(m, "NoisePoint")
        .def_readonly("n_a", &NoisePoint::n_a)
        .def_readonly("n_b", &NoisePoint::n_b)
        .def_readonly("sigma_a", &NoisePoint::sigma_a)
        .def_readonly("sigma_b", &NoisePoint::sigma_b)
        .def("__repr__", [](const NoisePoint &p) {
            return "NoisePoint(" + format_number(p.n_a) + ", " + format_number(p.n_b) + ")";
        });
    m.def("noise_point", &noise_point, py::arg("povm"), py::arg("obs_a"), py::arg("obs_b"));

    py::class_<RegionPoint>(m, "RegionPoint")
        .def_readonly("s", &RegionPoint::s)
        .def_readonly("t", &RegionPoint::t);

    py::class_<ObservablePair>(m, "ObservablePair")
        .def(py::init<const BlochVector &, const BlochVector &>(), py::arg("a"), py::arg("b"))
        .def_static("from_overlap", &ObservablePair::from_overlap, py::arg("overlap"))
        .def_property_readonly("a", &ObservablePair::a)
        .def_property_readonly("b", &ObservablePair::b)
        .def_property_readonly("c", &ObservablePair::c)
        .def("observable_a", &ObservablePair::observable_a)
        .def("observable_b", &ObservablePair::observable_b)
        .def("opening_angle", &ObservablePair::opening_angle)
        .def("sweep_axis", &ObservablePair::sweep_axis, py::arg("theta"), py::arg("phi"))
        .def("mixing_axis", &ObservablePair::mixing_axis, py::arg("theta"));

    py::class_<MixingSegment>(m, "MixingSegment")
        .def_readonly("first", &MixingSegment::first)
        .def_readonly("second", &MixingSegment::second)
        .def_readonly("theta_first", &MixingSegment::theta_first)
        .def_readonly("theta_second", &MixingSegment::theta_second)
        .def_readonly("refined", &MixingSegment::refined);

    m.def("e_region_contains", &e_region_contains, py::arg("pair"), py::arg("s"), py::arg("t"));
    m.def("r_region_contains", &r_region_contains, py::arg("pair"), py::arg("s"), py::arg("t"));
    m.def("lower_boundary_t", &lower_boundary_t, py::arg("pair"), py::arg("s"));
    m.def("mixing_segment", &mixing_segment, py::arg("pair"));
    m.def("convexity_threshold", &convexity_threshold);
    m.def("maassen_uffink_bound", &maassen_uffink_bound, py::arg("pair"));
    m.def("projective_bound_lhs", &projective_bound_lhs, py::arg("s"), py::arg("t"));

    auto sweep_list = [](const std::vector<SweepSample> &samples) {
        py::list out;
        for (const auto &smp : samples) {
            out.append(py::make_tuple(smp.parameter, smp.point.n_a, smp.point.n_b));
        }
        return out;
    };
    m.def("projective_sweep", [sweep_list](const ObservablePair &p, double step, double phi) {
        return sweep_list(projective_sweep(p, step, phi));
    }, py::arg("pair"), py::arg("theta_step"), py::arg("phi"));
    m.def("povm_q_sweep", [sweep_list](const BlochVector &r1, const BlochVector &r2, const ObservablePair &p,
                                       double step) { return sweep_list(povm_q_sweep(r1, r2, p, step)); },
          py::arg("r1"), py::arg("r2"), py::arg("pair"), py::arg("q_step"));

    py::enum_<ContrastModel>(m, "ContrastModel")
        .value("BOTH_ANALYZERS", ContrastModel::BothAnalyzers)
        .value("SECOND_ANALYZER_ONLY", ContrastModel::SecondAnalyzerOnly);

    py::class_<BeamlineConfig>(m, "BeamlineConfig")
        .def(py::init([](double rate, double slot, double visibility, std::uint64_t seed, ContrastModel contrast) {
                 BeamlineConfig c{rate, slot, visibility, seed, contrast};
                 c.validate();
                 return c;
             }),
             py::arg("count_rate") = 40.0, py::arg("slot_duration") = 60.0, py::arg("visibility") = 0.98,
             py::arg("rng_seed") = 0, py::arg("contrast") = ContrastModel::BothAnalyzers)
        .def_readonly("count_rate", &BeamlineConfig::count_rate)
        .def_readonly("slot_duration", &BeamlineConfig::slot_duration)
        .def_readonly("visibility", &BeamlineConfig::visibility)
        .def_readonly("rng_seed", &BeamlineConfig::rng_seed);

    py::class_<CountsRecord>(m, "CountsRecord")
        .def_readonly("counts_a", &CountsRecord::counts_a)
        .def_readonly("counts_b", &CountsRecord::counts_b)
        .def_readonly("target_q", &CountsRecord::target_q);

    m.def("simulate_counts", &simulate_counts, py::arg("povm"), py::arg("pair"), py::arg("config"));
    m.def("degraded_noise", &degraded_noise, py::arg("povm"), py::arg("pair"), py::arg("config"));
    m.def("estimate_q", &estimate_q, py::arg("counts"));
    m.def("noise_from_counts", &noise_from_counts, py::arg("counts"),
          py::arg("bootstrap_resamples") = kDefaultBootstrapResamples);
    m.def("projective_violation", [](const NoisePoint &p) {
        const ViolationCheck v = projective_violation(p);
        return py::dict(py::arg("lhs") = v.lhs, py::arg("sigma") = v.sigma, py::arg("significance") = v.significance);
    });

    m.def("figure_ids", &figure_ids);
    m.def("run_region", [](double overlap, std::size_t samples, const std::filesystem::path &out) {
        return manifest_dict(cmd_region({overlap, samples, out}));
    }, py::arg("overlap"), py::arg("samples") = kDefaultBoundarySamples, py::arg("out"));
    m.def("run_figure", [](const std::string &id, const std::filesystem::path &out_dir, std::uint64_t seed,
                           std::size_t resamples) { return manifest_dict(cmd_figure({id, out_dir, seed, resamples})); },
          py::arg("figure_id"), py::arg("out_dir"), py::arg("seed") = 1, py::arg("resamples") = 1000);
}
