#pragma once

#include "fedmech/accuracy.hpp"
#include "fedmech/device.hpp"
#include "fedmech/payoff.hpp"
#include "fedmech/shaping.hpp"

namespace fedmech {

struct MechanismConfig {
    double profit_margin;  // p_m in (0, 1]
    Payoff server_payoff;
    ShapingConfig shaping;

    MechanismConfig(double profit_margin_, Payoff server_payoff_, ShapingConfig shaping_ = {});
};

// Per-device settlement: returned model accuracy, monetary reward, and the
// gross (pre-cost) utility those rewards provide.
struct RewardBundle {
    double accuracy_reward = 0.0;
    double monetary_reward = 0.0;
    double utility = 0.0;
};

// Marginal monetary reward r = (1 - p_m) phi_C(a_C(total)) / total.
double reward_rate(const MechanismConfig& cfg, double server_acc_at_total, double total_m);

// u_C = p_m phi_C(a_C(total)).
double server_utility(const MechanismConfig& cfg, double server_acc_at_total);

// The three-branch reward map: standalone accuracy below m_opt, shaped
// accuracy plus monetary reward up to m_star, global accuracy beyond.
RewardBundle settle(const Device& d, double m_i, double m_opt, double m_star,
                    double others_total, double r, const MechanismConfig& cfg,
                    const AccuracyModel& server_model);

// Individual rationality: gross mechanism utility at least the standalone
// payoff phi(a(m_i)) (cost cancels on both sides).
bool audit_ir(const Device& d, const RewardBundle& bundle, double m_i);

}  // namespace fedmech
