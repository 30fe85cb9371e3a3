#include "fedmech/device.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "fedmech/errors.hpp"
#include "fedmech/rootfind.hpp"

namespace fedmech {

namespace {
constexpr double kMaxData = 1e12;  // engineering cap on the search bracket
}

Device::Device(std::string id_, double cost_, Payoff payoff_, AccuracyModel accuracy_)
    : id(std::move(id_)), cost(cost_), payoff(std::move(payoff_)), accuracy(std::move(accuracy_)) {
    if (!(cost > 0.0)) {
        throw std::invalid_argument("Device: cost must be positive");
    }
}

double local_utility(const Device& d, double m) {
    if (m < 0.0) throw std::domain_error("local_utility: m must be nonnegative");
    return d.payoff.value(d.accuracy.eval(m)) - d.cost * m;
}

LocalOptimum local_optimum(const Device& d) {
    if (d.accuracy.a_opt() <= 0.0) return {};
    double m0 = d.accuracy.zero_crossing();

    // Marginal benefit of one more data point; non-increasing past m0.
    auto marginal = [&](double m) {
        return d.payoff.d1(d.accuracy.eval(m)) * d.accuracy.deriv(m);
    };

    double lo = m0 * (1.0 + 1e-9);
    if (marginal(lo) <= d.cost) return {};  // cost dominates from the start
    if (marginal(kMaxData) >= d.cost) {
        throw SolverError("local_optimum: first-order condition not bracketed below cap");
    }
    double m_opt = bisect([&](double m) { return marginal(m) - d.cost; }, lo, kMaxData, 1e-10);
    double utility = local_utility(d, m_opt);
    if (utility <= 0.0) return {};
    return {m_opt, utility};
}

}  // namespace fedmech
