#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fedmech/errors.hpp"

namespace fedmech {

// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite (or zero) signs.
// Stops when the interval shrinks below rel_tol * |mid| (or an absolute floor
// for roots near zero). rel_tol <= 0 iterates down to adjacent doubles.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw SolverError("bisect: no sign change on [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
    for (int it = 0; it < max_iter; ++it) {
        double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;  // adjacent doubles
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (rel_tol > 0.0 && (hi - lo) <= rel_tol * std::max(1.0, std::fabs(mid))) break;
    }
    return lo + 0.5 * (hi - lo);
}

// Golden-section maximization of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double rel_tol = 1e-10, int max_iter = 200) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > rel_tol * std::max(1.0, std::fabs(a) + std::fabs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace fedmech
