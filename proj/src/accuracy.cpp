#include "fedmech/accuracy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fedmech/errors.hpp"
#include "fedmech/rootfind.hpp"

namespace fedmech {

AccuracyModel::AccuracyModel(double a_opt, double k, AccuracyForm form)
    : a_opt_(a_opt), k_(k), form_(form) {
    if (!(a_opt >= 0.0 && a_opt < 1.0)) {
        throw std::invalid_argument("AccuracyModel: a_opt must lie in [0, 1), got " +
                                    std::to_string(a_opt));
    }
    if (!(k > 0.0)) {
        throw std::invalid_argument("AccuracyModel: k must be positive, got " +
                                    std::to_string(k));
    }
}

double AccuracyModel::eval_raw(double m) const {
    if (!(m > 0.0)) {
        throw std::domain_error("AccuracyModel::eval_raw: m must be positive");
    }
    if (form_ == AccuracyForm::Simplified) {
        return a_opt_ - 2.0 * std::sqrt(k_ / m);
    }
    // Below m = k e^-2 the log term goes negative; the bound degenerates to
    // a_opt - 4/sqrt(m), which keeps the curve continuous and deeply negative.
    double t = 2.0 + std::log(m / k_);
    if (t < 0.0) t = 0.0;
    return a_opt_ - (std::sqrt(2.0 * k_ * t) + 4.0) / std::sqrt(m);
}

double AccuracyModel::eval(double m) const {
    if (m < 0.0) {
        throw std::domain_error("AccuracyModel::eval: m must be nonnegative");
    }
    if (m == 0.0) return 0.0;
    double raw = eval_raw(m);
    return raw > 0.0 ? raw : 0.0;
}

double AccuracyModel::deriv(double m) const {
    if (!(m > 0.0)) {
        throw std::domain_error("AccuracyModel::deriv: m must be positive");
    }
    if (form_ == AccuracyForm::Simplified) {
        return std::sqrt(k_) / (m * std::sqrt(m));
    }
    double t = 2.0 + std::log(m / k_);
    if (t <= 0.0) {
        return 2.0 / (m * std::sqrt(m));  // d/dm of a_opt - 4/sqrt(m)
    }
    double s = std::sqrt(2.0 * k_ * t);
    return (0.5 * (s + 4.0) - k_ / s) / (m * std::sqrt(m));
}

double AccuracyModel::zero_crossing() const {
    if (!(a_opt_ > 0.0)) {
        throw SolverError("AccuracyModel::zero_crossing: a_opt = 0, curve never positive");
    }
    double lo = 1e-12;
    double hi = 1e12 * k_;
    if (eval_raw(lo) >= 0.0 || eval_raw(hi) <= 0.0) {
        throw SolverError("AccuracyModel::zero_crossing: no root on search bracket");
    }
    return bisect([this](double m) { return eval_raw(m); }, lo, hi, 1e-10);
}

ServerAccuracyModel::ServerAccuracyModel(double base_k, AccuracyForm form)
    : base_k_(base_k), form_(form) {
    if (!(base_k > 0.0)) {
        throw std::invalid_argument("ServerAccuracyModel: base_k must be positive");
    }
}

AccuracyModel ServerAccuracyModel::mixture(const std::vector<AccuracyModel>& devices,
                                           const std::vector<double>& contributions) const {
    if (devices.size() != contributions.size()) {
        throw std::invalid_argument("ServerAccuracyModel::mixture: size mismatch");
    }
    double total = 0.0;
    for (double m : contributions) {
        if (m < 0.0) throw std::invalid_argument("ServerAccuracyModel::mixture: negative contribution");
        total += m;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("ServerAccuracyModel::mixture: all contributions are zero");
    }
    double a_bar = 0.0;
    for (std::size_t i = 0; i < devices.size(); ++i) {
        a_bar += (contributions[i] / total) * devices[i].a_opt();
    }
    return AccuracyModel(a_bar, base_k_, form_);
}

}  // namespace fedmech
