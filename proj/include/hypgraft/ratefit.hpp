#ifndef HYPGRAFT_RATEFIT_HPP
#define HYPGRAFT_RATEFIT_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypgraft/common.hpp"

namespace hypgraft {

// Least-squares fit of log(residual) against log(x).  Every asymptotic
// order claim in this library is checked as a slope of such a fit.
struct RateFit {
    std::vector<std::pair<double, double>> samples;  // (x, residual)
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline RateFit fit_rate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("fit_rate: need at least 2 samples");
    std::size_t n = samples.size();
    double sx = 0, sy = 0;
    for (const auto& [x, r] : samples) {
        if (!(x > 0.0) || !(r > 0.0))
            throw std::invalid_argument("fit_rate: samples must be positive");
        sx += std::log(x);
        sy += std::log(r);
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, r] : samples) {
        double dx = std::log(x) - mx;
        double dy = std::log(r) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_rate: degenerate abscissae");
    RateFit fit;
    fit.samples = samples;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace hypgraft

#endif
