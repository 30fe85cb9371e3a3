#pragma once

#include <string>

#include "fedmech/accuracy.hpp"
#include "fedmech/payoff.hpp"

namespace fedmech {

// One participant: marginal cost per data point, payoff, own accuracy curve.
struct Device {
    std::string id;
    double cost;
    Payoff payoff;
    AccuracyModel accuracy;

    Device(std::string id_, double cost_, Payoff payoff_, AccuracyModel accuracy_);
};

struct LocalOptimum {
    double m_opt = 0.0;  // standalone utility-maximizing data amount
    double utility = 0.0;
};

// Standalone utility phi(a(m)) - c m.
double local_utility(const Device& d, double m);

// Solves phi'(a_hat(m)) a_hat'(m) = c on the positive branch; returns {0, 0}
// when the best attainable standalone utility is nonpositive.
LocalOptimum local_optimum(const Device& d);

}  // namespace fedmech
