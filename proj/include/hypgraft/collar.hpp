#ifndef HYPGRAFT_COLLAR_HPP
#define HYPGRAFT_COLLAR_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

#include "hypgraft/common.hpp"
#include "hypgraft/quadrature.hpp"

namespace hypgraft {

// Squared norm of the monomial differential z^alpha (dz/z)^2 against the
// fiber metric over the collar {|t|/c < |z| < c}:
//   (2/pi) int (log|t| sin(pi log r / log|t|))^2 r^{2 alpha} dlog r.
struct CollarIntegralSpec {
    complexd t;
    double c_star;
    int alpha;

    void validate() const {
        double at = std::abs(t);
        if (!(at > 0.0) || !finite(t))
            throw std::invalid_argument("CollarIntegralSpec: t must be nonzero and finite");
        if (!(c_star > 0.0 && c_star < 1.0))
            throw std::invalid_argument("CollarIntegralSpec: c_star must lie in (0,1)");
        if (!(at < c_star * c_star))
            throw std::invalid_argument("CollarIntegralSpec: need |t| < c_star^2");
    }
};

struct CollarIntegral {
    double value = 0.0;                       // quadrature
    std::optional<double> closed_form;        // exact antiderivative, alpha = 0 only
};

inline CollarIntegral collar_norm_integral(const CollarIntegralSpec& spec, double tol = 1e-11) {
    spec.validate();
    double ell = std::log(std::abs(spec.t));
    double lc = std::log(spec.c_star);
    double lo = ell - lc, hi = lc;

    CollarIntegral out;
    out.value = (2.0 / pi) * quad::adaptive(
                                 [&](double xi) {
                                     double s = ell * std::sin(pi * xi / ell);
                                     return s * s * std::exp(2.0 * spec.alpha * xi);
                                 },
                                 lo, hi, tol);
    if (spec.alpha == 0) {
        double eps = lc / ell;  // log c_* / log|t|, in (0, 1/2)
        out.closed_form =
            (2.0 / pi) * (-ell * ell * ell) * (0.5 - eps + std::sin(two_pi * eps) / two_pi);
    }
    return out;
}

}  // namespace hypgraft

#endif
