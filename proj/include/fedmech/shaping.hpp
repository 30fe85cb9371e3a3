#pragma once

#include "fedmech/accuracy.hpp"
#include "fedmech/device.hpp"

namespace fedmech {

struct ShapingConfig {
    // Margin keeping the shaping inequality numerically strict. Zero means
    // "auto": 1e-9 * max(1, cost).
    double epsilon = 0.0;
    // Relative tolerance used when auditing the m_star crossing residual.
    double tol = 1e-8;

    double epsilon_for(double cost) const {
        if (epsilon > 0.0) return epsilon;
        return 1e-9 * (cost > 1.0 ? cost : 1.0);
    }
};

struct ShapedOptimum {
    double m_star = 0.0;        // crossing of shaped accuracy with server accuracy
    double gamma_at_star = 0.0;
};

// Accuracy boost granted for contributing m >= m_opt. Zero at m = m_opt.
// Throws RewardExceedsCostError when c - r + eps <= 0.
double gamma(const Device& d, double m_opt, double r, const ShapingConfig& cfg, double m);

// Finds m_star >= m_opt where a_C(m + others_total) = a(m_opt) + gamma(m).
// Requires Assumption 3: a_C(m_opt + others_total) >= a(m_opt).
ShapedOptimum shaped_optimum(const Device& d, double m_opt, double others_total,
                             const AccuracyModel& server_model, double r,
                             const ShapingConfig& cfg);

}  // namespace fedmech
