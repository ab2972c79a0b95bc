#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "colme/algorithms.hpp"
#include "colme/confidence.hpp"
#include "colme/distributions.hpp"
#include "colme/harness.hpp"
#include "colme/moments.hpp"
#include "colme/scenario.hpp"
#include "colme/separation.hpp"

namespace py = pybind11;
using namespace colme;

namespace {

ClassSpec make_class_spec(double mean, double sigma, const std::string& family,
                          const std::string& label) {
    ClassSpec spec;
    spec.mean = mean;
    spec.sigma = sigma;
    family_from_string(family, spec.family, spec.uniform_k);
    spec.label = label;
    validate_class_spec(spec);
    return spec;
}

std::vector<double> sample_stream(const ClassSpec& spec, std::uint64_t seed, std::size_t n) {
    Rng rng(Rng::mix(seed));
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(spec, rng));
    return out;
}

py::object opt_time(const std::optional<std::int64_t>& t) {
    if (!t) return py::none();
    return py::int_(*t);
}

py::dict run_scenario_py(const std::string& config_json, int workers,
                         const std::string& out_dir) {
    const ScenarioConfig cfg = scenario_from_json(config_json);
    cfg.validate();
    const MetricsSeries series = run_scenario(cfg, workers);
    if (!out_dir.empty()) write_outputs(series, cfg, out_dir);
    py::dict d;
    d["mse_local"] = series.mse_local;
    d["mse_collab"] = series.mse_collab;
    d["mse_oracle"] = series.mse_oracle;
    d["wrong_link_fraction"] = series.wrong_links;
    py::list events;
    for (const auto& ev : series.prune_events) {
        events.append(py::make_tuple(ev.realization, ev.t, ev.a, ev.b, fold_to_string(ev.fold)));
    }
    d["prune_events"] = events;
    d["runtime_seconds"] = series.runtime_seconds;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "collaborative online mean estimation on dynamic graphs";

    py::register_exception<config_error>(m, "ConfigError");

    py::class_<ClassSpec>(m, "ClassSpec")
        .def(py::init(&make_class_spec), py::arg("mean"), py::arg("sigma"),
             py::arg("family") = "gaussian", py::arg("label") = "")
        .def_readonly("mean", &ClassSpec::mean)
        .def_readonly("sigma", &ClassSpec::sigma)
        .def_readonly("label", &ClassSpec::label)
        .def_property_readonly("family", [](const ClassSpec& s) {
            return family_to_string(s.family, s.uniform_k);
        });

    m.def("theoretical_moments", [](const ClassSpec& spec) {
        const Moments mm = theoretical_moments(spec);
        return py::make_tuple(mm.mean, mm.sigma, mm.kappa, mm.kappa_d);
    });
    m.def("sample_stream", &sample_stream, py::arg("spec"), py::arg("seed"), py::arg("n"));

    py::class_<MomentAccumulator>(m, "MomentAccumulator")
        .def(py::init<>())
        .def(py::init<bool>(), py::arg("every_other"))
        .def("push", &MomentAccumulator::push)
        .def("local_mean", &MomentAccumulator::local_mean)
        .def("sigma", &MomentAccumulator::sigma)
        .def("kurtosis", &MomentAccumulator::kurtosis, py::arg("sigma_hat"))
        .def_property_readonly("count", &MomentAccumulator::count)
        .def_property_readonly("diff_count", &MomentAccumulator::diff_count)
        .def("to_json", &accumulator_to_json)
        .def_static("from_json", &accumulator_from_json);

    m.def("sigma_standard_error", &sigma_standard_error);
    m.def("kurtosis_variance_fisher", &kurtosis_variance_fisher);
    m.def("kurtosis_variance_approx", &kurtosis_variance_approx);

    m.def("normal_quantile", &normal_quantile);
    m.def("gaussian_bound", &gaussian_bound);
    m.def("laplace_bound", &laplace_bound);
    m.def("fourth_moment_bound", &fourth_moment_bound);
    m.def("kurtosis_bound", &kurtosis_bound);
    m.def("kernel_weight", &kernel_weight);

    m.def(
        "separation_time",
        [](const std::string& fold, double delta_stat, double sigma_a, double sigma_b,
           double delta, double z_delta) {
            SeparationQuery q{fold_from_string(fold), delta_stat, sigma_a, sigma_b, delta,
                              z_delta};
            return opt_time(separation_time(q));
        },
        py::arg("fold"), py::arg("delta_stat"), py::arg("sigma_a") = 0.0,
        py::arg("sigma_b") = 0.0, py::arg("delta") = 0.01, py::arg("z_delta") = 3.89);

    m.def(
        "separation_table",
        [](const std::vector<ClassSpec>& classes, double delta, double z_delta) {
            const auto table = separation_table(classes, delta, z_delta);
            py::list rows;
            for (std::size_t i = 0; i < classes.size(); ++i) {
                for (std::size_t j = i + 1; j < classes.size(); ++j) {
                    const auto& e = table[i][j];
                    py::dict d;
                    d["a"] = i;
                    d["b"] = j;
                    d["t_mean"] = opt_time(e.t_mean);
                    d["t_sigma"] = opt_time(e.t_sigma);
                    d["t_kurtosis"] = opt_time(e.t_kurtosis);
                    d["fastest"] = e.fastest ? py::cast(fold_to_string(*e.fastest)) : py::none();
                    rows.append(d);
                }
            }
            return rows;
        },
        py::arg("classes"), py::arg("delta") = 0.01, py::arg("z_delta") = 3.89);

    m.def("generate_random_regular", [](int n, int r, std::uint64_t seed) {
        const DynamicGraph g = generate_random_regular(n, r, seed);
        return g.edges();
    });
    m.def("metropolis_dense", [](int n, const std::vector<std::pair<int, int>>& edges) {
        const DynamicGraph g(n, edges);
        return metropolis_weights(g).dense();
    });

    m.def("preset_names", &preset_names);
    m.def("preset_config", [](const std::string& name) { return scenario_to_json(preset(name)); });
    m.def("run_scenario", &run_scenario_py, py::arg("config_json"), py::arg("workers") = 0,
          py::arg("out_dir") = "");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
