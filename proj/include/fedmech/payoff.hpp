#pragma once

#include "fedmech/accuracy.hpp"

namespace fedmech {

enum class PayoffFamily {
    Linear,  // phi(a) = w * a
    Power,   // phi(a) = z * (1/(1-a)^2 - 1)
};

// Accuracy-payoff function phi with analytic first and second derivatives.
// Convex and strictly increasing on [0, 1) with phi(0) = 0.
class Payoff {
  public:
    Payoff(PayoffFamily family, double scale);

    static Payoff linear(double w) { return Payoff(PayoffFamily::Linear, w); }
    static Payoff power(double z) { return Payoff(PayoffFamily::Power, z); }

    PayoffFamily family() const { return family_; }
    double scale() const { return scale_; }

    double value(double a) const;
    double d1(double a) const;
    double d2(double a) const;

  private:
    double scale_;
    PayoffFamily family_;
};

// Sampling check that phi(a_hat(m)) is concave and strictly increasing in m on
// the positive branch. Throws ConfigError on violation.
void validate_composition(const Payoff& payoff, const AccuracyModel& accuracy);

}  // namespace fedmech
