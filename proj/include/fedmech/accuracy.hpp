#pragma once

#include <cstddef>
#include <vector>

namespace fedmech {

enum class AccuracyForm {
    GeneralizationBound,  // a_opt - (sqrt(2k(2 + log(m/k))) + 4) / sqrt(m)
    Simplified,           // a_opt - 2 sqrt(k/m)
};

// Analytic accuracy-vs-data curve. Immutable after construction.
class AccuracyModel {
  public:
    AccuracyModel(double a_opt, double k, AccuracyForm form);

    double a_opt() const { return a_opt_; }
    double k() const { return k_; }
    AccuracyForm form() const { return form_; }

    // Unclamped curve; may be negative. Requires m > 0.
    double eval_raw(double m) const;

    // Clamped accuracy max(eval_raw, 0); defined as exactly 0 at m = 0.
    double eval(double m) const;

    // Analytic derivative of the unclamped curve. Requires m > 0.
    double deriv(double m) const;

    // The m where the unclamped curve crosses zero (negative below, positive
    // above). Requires a_opt > 0.
    double zero_crossing() const;

  private:
    double a_opt_;
    double k_;
    AccuracyForm form_;
};

// Builds the server's mixture accuracy: a_opt is the contribution-weighted
// mean of the device a_opt values, k and form come from the server.
class ServerAccuracyModel {
  public:
    ServerAccuracyModel(double base_k, AccuracyForm form);

    double base_k() const { return base_k_; }
    AccuracyForm form() const { return form_; }

    AccuracyModel mixture(const std::vector<AccuracyModel>& devices,
                          const std::vector<double>& contributions) const;

  private:
    double base_k_;
    AccuracyForm form_;
};

}  // namespace fedmech
