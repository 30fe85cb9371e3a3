#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fedmech/device.hpp"
#include "fedmech/equilibrium.hpp"
#include "fedmech/mechanism.hpp"

namespace fedmech {

enum class CostMode { Uniform, GaussianNonUniform };
enum class PayoffMode { LinearBaseline, PowerUniform, PowerNonUniform };
enum class Heterogeneity { Homogeneous, AOptSpread };

struct ScenarioSpec {
    std::string id = "scenario";
    int n_devices = 1;
    double base_cost = 1e-3;            // c_e, the marginal-cost mean
    CostMode cost_mode = CostMode::Uniform;
    double cost_stddev_frac = 0.1;      // Gaussian stddev as a fraction of c_e
    PayoffMode payoff_mode = PayoffMode::PowerUniform;
    double linear_w = 1.0;
    double z_lo = 0.9;
    double z_hi = 1.1;
    double a_opt_base = 0.95;
    double k = 1.0;
    AccuracyForm accuracy_form = AccuracyForm::GeneralizationBound;
    Heterogeneity heterogeneity = Heterogeneity::Homogeneous;
    double a_opt_delta = 0.0;           // per-device a_opt = base - U(0, delta)
    double profit_margin = 1.0;
    std::uint64_t seed = 0;
};

struct Totals {
    double total_contribution = 0.0;
    double mean_device_utility = 0.0;
    double server_utility = 0.0;
};

struct ScenarioResult {
    EquilibriumOutcome outcome;
    std::vector<LocalOptimum> baseline_local;
    // Net utility per device as reported for cross-mechanism comparison
    // (always evaluated with the device's true payoff).
    std::vector<double> net_utilities;
    Totals totals;
};

// Deterministic given the seed. Runs the Assumption-2 sampling validation on
// every constructed device.
std::pair<std::vector<Device>, MechanismConfig> build(const ScenarioSpec& spec);

// Paper-derived experiment presets.
ScenarioSpec cifar10_spec();
ScenarioSpec mnist_spec();

ScenarioResult run_realfm(const ScenarioSpec& spec, const SolveOptions& opts = {});

// Every device payoff replaced by Linear(1) and monetary rewards disabled;
// reported utilities still use each device's true payoff.
ScenarioResult run_linear_baseline(const ScenarioSpec& spec, const SolveOptions& opts = {});

// Each device trains alone at its local optimum; server utility inferred from
// the mean standalone accuracy.
ScenarioResult run_local_baseline(const ScenarioSpec& spec);

}  // namespace fedmech
