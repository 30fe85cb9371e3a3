#include "fedmech/shaping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fedmech/errors.hpp"
#include "fedmech/rootfind.hpp"

namespace fedmech {

namespace {
constexpr double kMaxData = 1e12;
}

double gamma(const Device& d, double m_opt, double r, const ShapingConfig& cfg, double m) {
    if (m < m_opt) {
        throw std::domain_error("gamma: m must be >= m_opt");
    }
    if (m == m_opt) return 0.0;
    double eps = cfg.epsilon_for(d.cost);
    double cmr = d.cost - r + eps;
    if (cmr <= 0.0) {
        throw RewardExceedsCostError("gamma: reward rate r = " + std::to_string(r) +
                                     " meets or exceeds marginal cost " +
                                     std::to_string(d.cost));
    }
    double a_bar = d.accuracy.eval(m_opt);
    double p1 = d.payoff.d1(a_bar);
    double p2 = d.payoff.d2(a_bar);
    if (p2 == 0.0) {
        return cmr * (m - m_opt) / p1;
    }
    return (-p1 + std::sqrt(p1 * p1 + 2.0 * p2 * cmr * (m - m_opt))) / p2;
}

ShapedOptimum shaped_optimum(const Device& d, double m_opt, double others_total,
                             const AccuracyModel& server_model, double r,
                             const ShapingConfig& cfg) {
    double a_bar = d.accuracy.eval(m_opt);
    double server_at_current = server_model.eval(m_opt + others_total);
    if (server_at_current < a_bar - 1e-12) {
        throw AssumptionError("shaped_optimum: server accuracy " +
                              std::to_string(server_at_current) +
                              " below device standalone accuracy " + std::to_string(a_bar));
    }

    // Positive while the shaped curve sits below the server curve; gamma grows
    // without bound while a_C is capped, so a crossing exists.
    auto gap = [&](double m) {
        return server_model.eval(m + others_total) - (a_bar + gamma(d, m_opt, r, cfg, m));
    };

    if (gap(m_opt) <= 0.0) {
        return {m_opt, 0.0};
    }
    double lo = m_opt;
    double hi = m_opt + 1.0;
    while (gap(hi) > 0.0) {
        lo = hi;
        hi = m_opt + 2.0 * (hi - m_opt);
        if (hi > kMaxData) {
            throw SolverError("shaped_optimum: no crossing below data cap");
        }
    }
    // Iterate to adjacent doubles; the crossing feeds branch boundaries where
    // sloppy roots would show up as utility discontinuities.
    double m_star = bisect(gap, lo, hi, 0.0);
    return {m_star, gamma(d, m_opt, r, cfg, m_star)};
}

}  // namespace fedmech
