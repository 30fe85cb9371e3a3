#include "fedmech/payoff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fedmech/errors.hpp"

namespace fedmech {

namespace {

void check_domain(double a) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw std::domain_error("Payoff: accuracy must lie in [0, 1), got " +
                                std::to_string(a));
    }
}

}  // namespace

Payoff::Payoff(PayoffFamily family, double scale) : scale_(scale), family_(family) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("Payoff: scale must be positive, got " +
                                    std::to_string(scale));
    }
}

double Payoff::value(double a) const {
    check_domain(a);
    if (family_ == PayoffFamily::Linear) return scale_ * a;
    double d = 1.0 - a;
    return scale_ * (1.0 / (d * d) - 1.0);
}

double Payoff::d1(double a) const {
    check_domain(a);
    if (family_ == PayoffFamily::Linear) return scale_;
    double d = 1.0 - a;
    return 2.0 * scale_ / (d * d * d);
}

double Payoff::d2(double a) const {
    check_domain(a);
    if (family_ == PayoffFamily::Linear) return 0.0;
    double d = 1.0 - a;
    return 6.0 * scale_ / (d * d * d * d);
}

void validate_composition(const Payoff& payoff, const AccuracyModel& accuracy) {
    if (accuracy.a_opt() <= 0.0) return;  // curve never positive; nothing to check
    double m0 = accuracy.zero_crossing();
    double lo = m0 * 1.02;
    double hi = 1e10;
    const int points = 200;
    double ratio = std::pow(hi / lo, 1.0 / (points - 1));
    auto f = [&](double m) { return payoff.value(accuracy.eval(m)); };
    double m = lo;
    double prev = f(m);
    for (int i = 0; i < points; ++i, m *= ratio) {
        double h = m * 1e-4;
        double d2 = (f(m + h) - 2.0 * f(m) + f(m - h)) / (h * h);
        if (d2 > 1e-9) {
            throw ConfigError("payoff composition is not concave near m = " +
                              std::to_string(m));
        }
        double cur = f(m);
        if (i > 0 && cur <= prev) {
            throw ConfigError("payoff composition is not strictly increasing near m = " +
                              std::to_string(m));
        }
        prev = cur;
    }
}

}  // namespace fedmech
