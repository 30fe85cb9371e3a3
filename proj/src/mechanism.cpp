#include "fedmech/mechanism.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "fedmech/errors.hpp"

namespace fedmech {

namespace {
constexpr double kFeasibilityTol = 1e-9;
}

MechanismConfig::MechanismConfig(double profit_margin_, Payoff server_payoff_,
                                 ShapingConfig shaping_)
    : profit_margin(profit_margin_),
      server_payoff(std::move(server_payoff_)),
      shaping(shaping_) {
    if (!(profit_margin > 0.0 && profit_margin <= 1.0)) {
        throw std::invalid_argument("MechanismConfig: profit_margin must lie in (0, 1]");
    }
}

double reward_rate(const MechanismConfig& cfg, double server_acc_at_total, double total_m) {
    if (!(total_m > 0.0)) {
        throw std::invalid_argument("reward_rate: total data must be positive");
    }
    return (1.0 - cfg.profit_margin) * cfg.server_payoff.value(server_acc_at_total) / total_m;
}

double server_utility(const MechanismConfig& cfg, double server_acc_at_total) {
    return cfg.profit_margin * cfg.server_payoff.value(server_acc_at_total);
}

RewardBundle settle(const Device& d, double m_i, double m_opt, double m_star,
                    double others_total, double r, const MechanismConfig& cfg,
                    const AccuracyModel& server_model) {
    if (m_i < 0.0) throw std::domain_error("settle: m_i must be nonnegative");
    double total = m_i + others_total;
    double server_acc = total > 0.0 ? server_model.eval(total) : 0.0;

    RewardBundle out;
    if (m_i <= m_opt) {
        out.accuracy_reward = d.accuracy.eval(m_i);
        out.monetary_reward = 0.0;
        out.utility = d.payoff.value(out.accuracy_reward);
    } else if (m_i <= m_star) {
        out.accuracy_reward =
            d.accuracy.eval(m_opt) + gamma(d, m_opt, r, cfg.shaping, m_i);
        out.monetary_reward = r * (m_i - m_opt);
        out.utility = d.payoff.value(out.accuracy_reward) + out.monetary_reward;
    } else {
        out.accuracy_reward = server_acc;
        out.monetary_reward = r * (m_i - m_opt);
        out.utility = d.payoff.value(out.accuracy_reward) + out.monetary_reward;
    }
    if (out.accuracy_reward > server_acc + kFeasibilityTol) {
        throw FeasibilityError("settle: accuracy reward " + std::to_string(out.accuracy_reward) +
                               " exceeds server accuracy " + std::to_string(server_acc));
    }
    return out;
}

bool audit_ir(const Device& d, const RewardBundle& bundle, double m_i) {
    return bundle.utility >= d.payoff.value(d.accuracy.eval(m_i)) - 1e-12;
}

}  // namespace fedmech
