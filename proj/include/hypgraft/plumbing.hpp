#ifndef HYPGRAFT_PLUMBING_HPP
#define HYPGRAFT_PLUMBING_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hypgraft/common.hpp"
#include "hypgraft/cutoff.hpp"

namespace hypgraft {

// Plumbing data for one node: parameter t, chart overlap constant c_* and
// the interpolation profile.  The gluing identifies the annuli
// {|t|/c_* < |z| < c_*} and {|t|/c_* < |w| < c_*} by zw = t.
struct PlumbingConfig {
    complexd t;
    double c_star;
    CutoffProfile cutoff;

    PlumbingConfig(complexd t_, double c_star_ = std::exp(-1.0),
                   CutoffProfile cutoff_ = CutoffProfile(-1.0))
        : t(t_), c_star(c_star_), cutoff(cutoff_) {
        double at = std::abs(t);
        if (!(at > 0.0) || !finite(t))
            throw std::invalid_argument("PlumbingConfig: t must be nonzero and finite");
        if (!(c_star > 0.0 && c_star < 1.0))
            throw std::invalid_argument("PlumbingConfig: c_star must lie in (0,1)");
        if (!(at < std::pow(c_star, 4)))
            throw std::invalid_argument("PlumbingConfig: |t| < c_star^4 required");
        if (!(at <= std::exp(2.0 * cutoff.a0()) * c_star * c_star))
            throw std::invalid_argument("PlumbingConfig: |t| <= e^{2 a0} c_star^2 required");
    }

    double abs_t() const { return std::abs(t); }
    double log_abs_t() const { return std::log(std::abs(t)); }
    double log_c() const { return std::log(c_star); }

    // epsilon = pi / (-log|t|), the small parameter of every expansion.
    double eps() const { return pi / (-log_abs_t()); }

    // Collar in log-radius: log(|t|/c_*) < u < log(c_*).
    double collar_lo() const { return log_abs_t() - log_c(); }
    double collar_hi() const { return log_c(); }

    // Primary band {e^{a0} c_* <= |z| <= c_*}, where eta(u - log c_*) varies.
    double primary_band_lo() const { return log_c() + cutoff.a0(); }
    double primary_band_hi() const { return log_c(); }

    // Secondary band {|t|/c_* <= |z| <= e^{-a0} |t|/c_*}: the image of the
    // w-side primary band under u -> log|t| - u.
    double secondary_band_lo() const { return collar_lo(); }
    double secondary_band_hi() const { return collar_lo() - cutoff.a0(); }

    // Interpolation weight on the z side, eta(log(|z|/c_*)).
    double eta_z(double u) const { return cutoff.eta(u - log_c()); }
    // Same on the w side, in terms of the z-chart radius (log|w| = log|t| - u).
    double eta_w(double u) const { return cutoff.eta(log_abs_t() - u - log_c()); }

    // Band-weighted profile d/du (u^4 d/du eta(u - log c_*)), u = log|z|.
    // This is the coefficient entering the grafted-curvature expansion; the
    // single-variable lambda_profile is its c_* = 1 specialization.
    double band_lambda(double u) const {
        double a = u - log_c();
        double u2 = u * u;
        return 4.0 * u2 * u * cutoff.eta_prime(a) + u2 * u2 * cutoff.eta_second(a);
    }

    // Same profile expressed in the w chart radius.
    double band_lambda_w(double u) const {
        double uw = log_abs_t() - u;
        double a = uw - log_c();
        double u2 = uw * uw;
        return 4.0 * u2 * uw * cutoff.eta_prime(a) + u2 * u2 * cutoff.eta_second(a);
    }
};

}  // namespace hypgraft

#endif
