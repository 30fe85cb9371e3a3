#include "fedmech/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "fedmech/errors.hpp"

namespace fedmech {

namespace {

double sample_cost(const ScenarioSpec& spec, std::mt19937_64& rng) {
    if (spec.cost_mode == CostMode::Uniform) return spec.base_cost;
    std::normal_distribution<double> dist(spec.base_cost,
                                          spec.cost_stddev_frac * spec.base_cost);
    for (int tries = 0; tries < 1000; ++tries) {
        double c = dist(rng);
        if (c > 0.0) return c;
    }
    throw ConfigError("scenario '" + spec.id + "': could not sample a positive cost");
}

Payoff sample_payoff(const ScenarioSpec& spec, std::mt19937_64& rng) {
    switch (spec.payoff_mode) {
        case PayoffMode::LinearBaseline:
            return Payoff::linear(spec.linear_w);
        case PayoffMode::PowerUniform:
            return Payoff::power(1.0);
        case PayoffMode::PowerNonUniform: {
            std::uniform_real_distribution<double> dist(spec.z_lo, spec.z_hi);
            return Payoff::power(dist(rng));
        }
    }
    throw ConfigError("scenario '" + spec.id + "': unknown payoff mode");
}

double sample_a_opt(const ScenarioSpec& spec, std::mt19937_64& rng) {
    if (spec.heterogeneity == Heterogeneity::Homogeneous) return spec.a_opt_base;
    std::uniform_real_distribution<double> dist(0.0, spec.a_opt_delta);
    double a = spec.a_opt_base - dist(rng);
    if (!(a > 0.0 && a < 1.0)) {
        throw ConfigError("scenario '" + spec.id + "': sampled a_opt " + std::to_string(a) +
                          " outside (0, 1); reduce a_opt_delta");
    }
    return a;
}

Totals compute_totals(const EquilibriumOutcome& outcome,
                      const std::vector<double>& net_utilities) {
    Totals t;
    for (double m : outcome.contributions) t.total_contribution += m;
    for (double u : net_utilities) t.mean_device_utility += u;
    if (!net_utilities.empty()) t.mean_device_utility /= static_cast<double>(net_utilities.size());
    t.server_utility = outcome.server_utility;
    return t;
}

}  // namespace

std::pair<std::vector<Device>, MechanismConfig> build(const ScenarioSpec& spec) {
    if (spec.n_devices < 1) {
        throw ConfigError("scenario '" + spec.id + "': n_devices must be >= 1");
    }
    std::mt19937_64 rng(spec.seed);
    std::vector<Device> devices;
    devices.reserve(static_cast<std::size_t>(spec.n_devices));
    for (int i = 0; i < spec.n_devices; ++i) {
        double cost = sample_cost(spec, rng);
        Payoff payoff = sample_payoff(spec, rng);
        double a_opt = sample_a_opt(spec, rng);
        Device d("dev" + std::to_string(i), cost, payoff,
                 AccuracyModel(a_opt, spec.k, spec.accuracy_form));
        validate_composition(d.payoff, d.accuracy);
        devices.push_back(std::move(d));
    }
    MechanismConfig cfg(spec.profit_margin, Payoff::power(1.0));
    return {std::move(devices), std::move(cfg)};
}

ScenarioSpec cifar10_spec() {
    ScenarioSpec s;
    s.id = "cifar10";
    s.n_devices = 16;
    s.base_cost = 2.5e-4;
    s.a_opt_base = 0.95;
    s.k = 10.0;
    s.accuracy_form = AccuracyForm::GeneralizationBound;
    return s;
}

ScenarioSpec mnist_spec() {
    ScenarioSpec s;
    s.id = "mnist";
    s.n_devices = 16;
    s.base_cost = 4e-5;
    s.a_opt_base = 0.9975;
    s.k = 0.25;
    s.accuracy_form = AccuracyForm::Simplified;
    return s;
}

ScenarioResult run_realfm(const ScenarioSpec& spec, const SolveOptions& opts) {
    auto [devices, cfg] = build(spec);
    ScenarioResult res;
    res.outcome = solve(devices, cfg, opts);
    res.baseline_local.reserve(devices.size());
    for (const auto& d : devices) res.baseline_local.push_back(local_optimum(d));
    res.net_utilities.resize(devices.size());
    for (std::size_t i = 0; i < devices.size(); ++i) {
        res.net_utilities[i] =
            res.outcome.bundles[i].utility - devices[i].cost * res.outcome.contributions[i];
    }
    res.totals = compute_totals(res.outcome, res.net_utilities);
    return res;
}

ScenarioResult run_linear_baseline(const ScenarioSpec& spec, const SolveOptions& opts) {
    auto [devices, cfg] = build(spec);
    std::vector<Device> linearized;
    linearized.reserve(devices.size());
    for (const auto& d : devices) {
        linearized.emplace_back(d.id, d.cost, Payoff::linear(1.0), d.accuracy);
    }
    SolveOptions lin_opts = opts;
    lin_opts.zero_reward = true;
    ScenarioResult res;
    res.outcome = solve(linearized, cfg, lin_opts);
    res.baseline_local.reserve(linearized.size());
    for (const auto& d : linearized) res.baseline_local.push_back(local_optimum(d));
    // Reported utility: the true payoff applied to the accuracy the linear
    // mechanism hands back.
    res.net_utilities.resize(devices.size());
    for (std::size_t i = 0; i < devices.size(); ++i) {
        double gross = devices[i].payoff.value(res.outcome.bundles[i].accuracy_reward) +
                       res.outcome.bundles[i].monetary_reward;
        res.net_utilities[i] = gross - devices[i].cost * res.outcome.contributions[i];
    }
    res.totals = compute_totals(res.outcome, res.net_utilities);
    return res;
}

ScenarioResult run_local_baseline(const ScenarioSpec& spec) {
    auto [devices, cfg] = build(spec);
    const std::size_t n = devices.size();
    ScenarioResult res;
    res.baseline_local.reserve(n);
    res.outcome.contributions.resize(n);
    res.outcome.local_optima.resize(n);
    res.outcome.shaped_optima.resize(n);
    res.outcome.bundles.resize(n);
    res.net_utilities.resize(n);
    double mean_acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        LocalOptimum lo = local_optimum(devices[i]);
        res.baseline_local.push_back(lo);
        double acc = devices[i].accuracy.eval(lo.m_opt);
        res.outcome.contributions[i] = lo.m_opt;
        res.outcome.local_optima[i] = lo.m_opt;
        res.outcome.shaped_optima[i] = lo.m_opt;
        res.outcome.bundles[i] = {acc, 0.0, devices[i].payoff.value(acc)};
        res.net_utilities[i] = lo.utility;
        mean_acc += acc;
    }
    mean_acc /= static_cast<double>(n);
    res.outcome.reward_rate = 0.0;
    res.outcome.server_utility = server_utility(cfg, mean_acc);
    res.outcome.iterations = 0;
    res.outcome.converged = true;
    res.totals = compute_totals(res.outcome, res.net_utilities);
    return res;
}

}  // namespace fedmech
