#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fedmech/cli.hpp"
#include "fedmech/config.hpp"
#include "fedmech/equilibrium.hpp"
#include "fedmech/errors.hpp"
#include "fedmech/scenario.hpp"

namespace py = pybind11;
using namespace fedmech;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Incentive-aware federated learning mechanism engine";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<SolverError>(m, "SolverError");
    py::register_exception<AssumptionError>(m, "AssumptionError");
    py::register_exception<RewardExceedsCostError>(m, "RewardExceedsCostError");
    py::register_exception<FeasibilityError>(m, "FeasibilityError");

    py::enum_<AccuracyForm>(m, "AccuracyForm")
        .value("GeneralizationBound", AccuracyForm::GeneralizationBound)
        .value("Simplified", AccuracyForm::Simplified);

    py::class_<AccuracyModel>(m, "AccuracyModel")
        .def(py::init<double, double, AccuracyForm>(), py::arg("a_opt"), py::arg("k"),
             py::arg("form"))
        .def_property_readonly("a_opt", &AccuracyModel::a_opt)
        .def_property_readonly("k", &AccuracyModel::k)
        .def_property_readonly("form", &AccuracyModel::form)
        .def("eval_raw", &AccuracyModel::eval_raw, py::arg("m"))
        .def("eval", &AccuracyModel::eval, py::arg("m"))
        .def("deriv", &AccuracyModel::deriv, py::arg("m"))
        .def("zero_crossing", &AccuracyModel::zero_crossing);

    py::class_<ServerAccuracyModel>(m, "ServerAccuracyModel")
        .def(py::init<double, AccuracyForm>(), py::arg("base_k"), py::arg("form"))
        .def_property_readonly("base_k", &ServerAccuracyModel::base_k)
        .def_property_readonly("form", &ServerAccuracyModel::form)
        .def("mixture", &ServerAccuracyModel::mixture, py::arg("devices"),
             py::arg("contributions"));

    py::enum_<PayoffFamily>(m, "PayoffFamily")
        .value("Linear", PayoffFamily::Linear)
        .value("Power", PayoffFamily::Power);

    py::class_<Payoff>(m, "Payoff")
        .def(py::init<PayoffFamily, double>(), py::arg("family"), py::arg("scale"))
        .def_static("linear", &Payoff::linear, py::arg("w"))
        .def_static("power", &Payoff::power, py::arg("z"))
        .def_property_readonly("family", &Payoff::family)
        .def_property_readonly("scale", &Payoff::scale)
        .def("value", &Payoff::value, py::arg("a"))
        .def("d1", &Payoff::d1, py::arg("a"))
        .def("d2", &Payoff::d2, py::arg("a"));

    m.def("validate_composition", &validate_composition, py::arg("payoff"),
          py::arg("accuracy"));

    py::class_<Device>(m, "Device")
        .def(py::init<std::string, double, Payoff, AccuracyModel>(), py::arg("id"),
             py::arg("cost"), py::arg("payoff"), py::arg("accuracy"))
        .def_readonly("id", &Device::id)
        .def_readonly("cost", &Device::cost)
        .def_readonly("payoff", &Device::payoff)
        .def_readonly("accuracy", &Device::accuracy);

    py::class_<LocalOptimum>(m, "LocalOptimum")
        .def_readonly("m_opt", &LocalOptimum::m_opt)
        .def_readonly("utility", &LocalOptimum::utility);

    m.def("local_utility", &local_utility, py::arg("device"), py::arg("m"));
    m.def("local_optimum", &local_optimum, py::arg("device"));

    py::class_<ShapingConfig>(m, "ShapingConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &ShapingConfig::epsilon)
        .def_readwrite("tol", &ShapingConfig::tol);

    py::class_<ShapedOptimum>(m, "ShapedOptimum")
        .def_readonly("m_star", &ShapedOptimum::m_star)
        .def_readonly("gamma_at_star", &ShapedOptimum::gamma_at_star);

    m.def("gamma", &fedmech::gamma, py::arg("device"), py::arg("m_opt"), py::arg("r"),
          py::arg("config"), py::arg("m"));
    m.def("shaped_optimum", &shaped_optimum, py::arg("device"), py::arg("m_opt"),
          py::arg("others_total"), py::arg("server_model"), py::arg("r"), py::arg("config"));

    py::class_<MechanismConfig>(m, "MechanismConfig")
        .def(py::init<double, Payoff, ShapingConfig>(), py::arg("profit_margin"),
             py::arg("server_payoff"), py::arg("shaping") = ShapingConfig{})
        .def_readonly("profit_margin", &MechanismConfig::profit_margin)
        .def_readonly("server_payoff", &MechanismConfig::server_payoff)
        .def_readonly("shaping", &MechanismConfig::shaping);

    py::class_<RewardBundle>(m, "RewardBundle")
        .def_readonly("accuracy_reward", &RewardBundle::accuracy_reward)
        .def_readonly("monetary_reward", &RewardBundle::monetary_reward)
        .def_readonly("utility", &RewardBundle::utility);

    m.def("reward_rate", &reward_rate, py::arg("config"), py::arg("server_acc_at_total"),
          py::arg("total_m"));
    m.def("server_utility", &server_utility, py::arg("config"),
          py::arg("server_acc_at_total"));
    m.def("settle", &settle, py::arg("device"), py::arg("m_i"), py::arg("m_opt"),
          py::arg("m_star"), py::arg("others_total"), py::arg("r"), py::arg("config"),
          py::arg("server_model"));
    m.def("audit_ir", &audit_ir, py::arg("device"), py::arg("bundle"), py::arg("m_i"));

    py::class_<SolveOptions>(m, "SolveOptions")
        .def(py::init<>())
        .def_readwrite("max_sweeps", &SolveOptions::max_sweeps)
        .def_readwrite("tol", &SolveOptions::tol)
        .def_readwrite("damping", &SolveOptions::damping)
        .def_readwrite("paper_mode", &SolveOptions::paper_mode)
        .def_readwrite("zero_reward", &SolveOptions::zero_reward);

    py::class_<EquilibriumOutcome>(m, "EquilibriumOutcome")
        .def_readonly("contributions", &EquilibriumOutcome::contributions)
        .def_readonly("local_optima", &EquilibriumOutcome::local_optima)
        .def_readonly("shaped_optima", &EquilibriumOutcome::shaped_optima)
        .def_readonly("reward_rate", &EquilibriumOutcome::reward_rate)
        .def_readonly("bundles", &EquilibriumOutcome::bundles)
        .def_readonly("server_utility", &EquilibriumOutcome::server_utility)
        .def_readonly("iterations", &EquilibriumOutcome::iterations)
        .def_readonly("converged", &EquilibriumOutcome::converged);

    m.def("best_response", &best_response, py::arg("device"), py::arg("others_total"),
          py::arg("r"), py::arg("config"), py::arg("server_model"), py::arg("local"));
    m.def("solve", &solve, py::arg("devices"), py::arg("config"),
          py::arg("options") = SolveOptions{});

    py::enum_<CostMode>(m, "CostMode")
        .value("Uniform", CostMode::Uniform)
        .value("GaussianNonUniform", CostMode::GaussianNonUniform);
    py::enum_<PayoffMode>(m, "PayoffMode")
        .value("LinearBaseline", PayoffMode::LinearBaseline)
        .value("PowerUniform", PayoffMode::PowerUniform)
        .value("PowerNonUniform", PayoffMode::PowerNonUniform);
    py::enum_<Heterogeneity>(m, "Heterogeneity")
        .value("Homogeneous", Heterogeneity::Homogeneous)
        .value("AOptSpread", Heterogeneity::AOptSpread);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def(py::init<>())
        .def_readwrite("id", &ScenarioSpec::id)
        .def_readwrite("n_devices", &ScenarioSpec::n_devices)
        .def_readwrite("base_cost", &ScenarioSpec::base_cost)
        .def_readwrite("cost_mode", &ScenarioSpec::cost_mode)
        .def_readwrite("cost_stddev_frac", &ScenarioSpec::cost_stddev_frac)
        .def_readwrite("payoff_mode", &ScenarioSpec::payoff_mode)
        .def_readwrite("linear_w", &ScenarioSpec::linear_w)
        .def_readwrite("z_lo", &ScenarioSpec::z_lo)
        .def_readwrite("z_hi", &ScenarioSpec::z_hi)
        .def_readwrite("a_opt_base", &ScenarioSpec::a_opt_base)
        .def_readwrite("k", &ScenarioSpec::k)
        .def_readwrite("accuracy_form", &ScenarioSpec::accuracy_form)
        .def_readwrite("heterogeneity", &ScenarioSpec::heterogeneity)
        .def_readwrite("a_opt_delta", &ScenarioSpec::a_opt_delta)
        .def_readwrite("profit_margin", &ScenarioSpec::profit_margin)
        .def_readwrite("seed", &ScenarioSpec::seed);

    py::class_<Totals>(m, "Totals")
        .def_readonly("total_contribution", &Totals::total_contribution)
        .def_readonly("mean_device_utility", &Totals::mean_device_utility)
        .def_readonly("server_utility", &Totals::server_utility);

    py::class_<ScenarioResult>(m, "ScenarioResult")
        .def_readonly("outcome", &ScenarioResult::outcome)
        .def_readonly("baseline_local", &ScenarioResult::baseline_local)
        .def_readonly("net_utilities", &ScenarioResult::net_utilities)
        .def_readonly("totals", &ScenarioResult::totals);

    m.def("build", &build, py::arg("spec"));
    m.def("cifar10_spec", &cifar10_spec);
    m.def("mnist_spec", &mnist_spec);
    m.def("run_realfm", &run_realfm, py::arg("spec"), py::arg("options") = SolveOptions{});
    m.def("run_linear_baseline", &run_linear_baseline, py::arg("spec"),
          py::arg("options") = SolveOptions{});
    m.def("run_local_baseline", &run_local_baseline, py::arg("spec"));

    m.def("parse_scenarios", &parse_scenarios, py::arg("path"));
    m.def("parse_scenarios_text", &parse_scenarios_text, py::arg("text"), py::arg("origin"));
    m.def("parse_manifest", &parse_manifest, py::arg("path"));
    m.def("parse_manifest_text", &parse_manifest_text, py::arg("text"), py::arg("origin"));

    py::class_<RunManifest>(m, "RunManifest")
        .def(py::init<>())
        .def_readwrite("scenario_files", &RunManifest::scenario_files)
        .def_readwrite("out_dir", &RunManifest::out_dir)
        .def_readwrite("repetitions", &RunManifest::repetitions)
        .def_readwrite("seeds", &RunManifest::seeds)
        .def_readwrite("mechanisms", &RunManifest::mechanisms)
        .def_readwrite("jobs", &RunManifest::jobs);

    m.def("run_batch", &run_batch, py::arg("manifest"), py::arg("base_dir") = ".");
    m.def("check_batch", &check_batch, py::arg("manifest"), py::arg("base_dir") = ".");

    m.attr("__version__") = kToolVersion;
}
