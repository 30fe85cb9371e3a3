#pragma once

#include <vector>

#include "fedmech/device.hpp"
#include "fedmech/mechanism.hpp"

namespace fedmech {

struct SolveOptions {
    int max_sweeps = 100;
    double tol = 1e-6;      // relative, on contributions and reward rate
    double damping = 1.0;   // in (0, 1]; 1 = undamped Gauss-Seidel
    // Best-response with r frozen at 0; the reward rate is computed once at
    // settlement, matching the post-hoc reward ordering.
    bool paper_mode = false;
    // Suppress monetary rewards entirely (linear-baseline runs).
    bool zero_reward = false;
};

struct EquilibriumOutcome {
    std::vector<double> contributions;
    std::vector<double> local_optima;
    std::vector<double> shaped_optima;
    double reward_rate = 0.0;
    std::vector<RewardBundle> bundles;
    double server_utility = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Utility-maximizing contribution of one device against frozen opponents,
// mixture, and reward rate. Under the mechanism's construction this is m_star
// (or 0 for a device whose best attainable net utility is nonpositive); a
// coarse grid plus golden-section refinement double-checks that claim.
double best_response(const Device& d, double others_total, double r,
                     const MechanismConfig& cfg, const AccuracyModel& server_model,
                     const LocalOptimum& local);

// Sequential best-response sweeps with the server mixture and reward rate
// refreshed between sweeps. Non-convergence is reported via the converged
// flag, never an exception.
EquilibriumOutcome solve(const std::vector<Device>& devices, const MechanismConfig& cfg,
                         const SolveOptions& opts = {});

}  // namespace fedmech
