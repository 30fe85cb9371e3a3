#include "fedmech/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fedmech/errors.hpp"
#include "fedmech/rootfind.hpp"

namespace fedmech {

namespace {

double rel_change(double next, double prev) {
    return std::fabs(next - prev) / std::max(1.0, std::fabs(prev));
}

AccuracyModel build_mixture(const std::vector<Device>& devices,
                            const std::vector<double>& contributions) {
    ServerAccuracyModel server(devices.front().accuracy.k(), devices.front().accuracy.form());
    double total = 0.0;
    for (double m : contributions) total += m;
    if (total > 0.0) {
        std::vector<AccuracyModel> models;
        models.reserve(devices.size());
        for (const auto& d : devices) models.push_back(d.accuracy);
        return server.mixture(models, contributions);
    }
    // Nobody contributes yet; fall back to the unweighted mean so entry
    // decisions still see a well-defined server curve.
    std::vector<AccuracyModel> models;
    std::vector<double> ones(devices.size(), 1.0);
    for (const auto& d : devices) models.push_back(d.accuracy);
    return server.mixture(models, ones);
}

}  // namespace

double best_response(const Device& d, double others_total, double r,
                     const MechanismConfig& cfg, const AccuracyModel& server_model,
                     const LocalOptimum& local) {
    ShapedOptimum shaped =
        shaped_optimum(d, local.m_opt, others_total, server_model, r, cfg.shaping);

    auto net = [&](double m) {
        return settle(d, m, local.m_opt, shaped.m_star, others_total, r, cfg, server_model)
                   .utility -
               d.cost * m;
    };

    double best_m = shaped.m_star;
    double best_u = net(best_m);

    // The theory says the maximum sits at m_star; verify against a coarse grid
    // plus golden-section refinement around the best grid point.
    double hi = std::max(2.0 * shaped.m_star, shaped.m_star + 1.0);
    const int kGrid = 64;
    double step = hi / kGrid;
    double grid_m = 0.0;
    double grid_u = net(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        double m = step * i;
        double u = net(m);
        if (u > grid_u) {
            grid_u = u;
            grid_m = m;
        }
    }
    double refined = golden_max(net, std::max(0.0, grid_m - step), grid_m + step);
    double refined_u = net(refined);
    if (refined_u > best_u + 1e-9 * std::max(1.0, std::fabs(best_u))) {
        best_m = refined;
        best_u = refined_u;
    }
    if (best_u <= 0.0) return 0.0;
    return best_m;
}

EquilibriumOutcome solve(const std::vector<Device>& devices, const MechanismConfig& cfg,
                         const SolveOptions& opts) {
    if (devices.empty()) {
        throw std::invalid_argument("solve: need at least one device");
    }
    const std::size_t n = devices.size();

    std::vector<LocalOptimum> locals(n);
    for (std::size_t i = 0; i < n; ++i) locals[i] = local_optimum(devices[i]);

    EquilibriumOutcome out;
    out.contributions.resize(n);
    out.local_optima.resize(n);
    out.shaped_optima.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.contributions[i] = locals[i].m_opt;
        out.local_optima[i] = locals[i].m_opt;
    }

    auto rate_for = [&](const AccuracyModel& mix, double total) {
        if (opts.zero_reward || cfg.profit_margin >= 1.0 || total <= 0.0) return 0.0;
        return reward_rate(cfg, mix.eval(total), total);
    };

    std::vector<double>& m = out.contributions;
    double r = 0.0;
    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        out.iterations = sweep;
        double total = 0.0;
        for (double v : m) total += v;
        AccuracyModel mix = build_mixture(devices, m);
        double r_new = opts.paper_mode ? 0.0 : rate_for(mix, total);
        double change = rel_change(r_new, r);
        r = r_new;
        for (std::size_t i = 0; i < n; ++i) {
            double others = std::max(0.0, total - m[i]);
            double br = best_response(devices[i], others, r, cfg, mix, locals[i]);
            double next = opts.damping * br + (1.0 - opts.damping) * m[i];
            change = std::max(change, rel_change(next, m[i]));
            total += next - m[i];
            m[i] = next;
        }
        if (change <= opts.tol) {
            out.converged = true;
            break;
        }
    }

    // Settlement against the converged contributions.
    double total = 0.0;
    for (double v : m) total += v;
    AccuracyModel mix = build_mixture(devices, m);
    out.reward_rate = rate_for(mix, total);
    out.bundles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double others = std::max(0.0, total - m[i]);
        ShapedOptimum shaped = shaped_optimum(devices[i], locals[i].m_opt, others, mix,
                                              out.reward_rate, cfg.shaping);
        out.shaped_optima[i] = shaped.m_star;
        out.bundles[i] = settle(devices[i], m[i], locals[i].m_opt, shaped.m_star, others,
                                out.reward_rate, cfg, mix);
    }
    out.server_utility = server_utility(cfg, total > 0.0 ? mix.eval(total) : 0.0);
    return out;
}

}  // namespace fedmech
