#ifndef HYPGRAFT_METRICS_HPP
#define HYPGRAFT_METRICS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hypgraft/common.hpp"
#include "hypgraft/plumbing.hpp"

namespace hypgraft {

// (Theta csc Theta)^2, the ratio between the fiber metric and the cusp
// metric at collar angle Theta in (0, pi).
inline double theta_series_ratio(double theta) {
    if (!(theta > 0.0 && theta < pi))
        throw std::domain_error("theta_series_ratio: Theta must lie in (0, pi)");
    double s = std::sin(theta);
    return sq(theta / s);
}

// Truncation of the same ratio to fourth order.
inline double theta_series_truncated(double theta) {
    double t2 = theta * theta;
    return 1.0 + t2 / 3.0 + t2 * t2 / 15.0;
}

// Density of the complete hyperbolic metric of the punctured disc,
// ds^2 = (|dz| / (|z| log|z|))^2.
inline double zero_fiber_density(const complexd& z) {
    double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("zero_fiber_density: need 0 < |z| < 1");
    return 1.0 / sq(r * std::log(r));
}

// Density of the plumbing fiber metric on {|t| < |z| < 1}.
inline double fiber_density(const complexd& z, const complexd& t) {
    double r = std::abs(z), at = std::abs(t);
    if (!(at > 0.0 && at < 1.0))
        throw std::domain_error("fiber_density: need 0 < |t| < 1");
    if (!(r > at && r < 1.0))
        throw std::domain_error("fiber_density: need |t| < |z| < 1");
    double lt = std::log(at);
    double theta = pi * std::log(r) / lt;
    return sq(pi / (r * lt)) * sq(1.0 / std::sin(theta));
}

// Geodesic length of the collar core curve of the fiber metric.
inline double core_geodesic_length(const complexd& t) {
    double at = std::abs(t);
    if (!(at > 0.0 && at < 1.0))
        throw std::domain_error("core_geodesic_length: need 0 < |t| < 1");
    return 2.0 * pi * pi / (-std::log(at));
}

// ----------------------------------------------------------------------
// Radial profiles in u = log|z|.  Densities are taken with respect to
// du^2 + dtheta^2 (i.e. lambda |z|^2 for lambda against |dz|^2); all the
// model metrics are rotation invariant so one variable suffices.
// ----------------------------------------------------------------------

namespace radial {

// log density of the fiber metric; ell = log|t| < 0, u in (ell, 0).
inline double log_fiber(double u, double ell) {
    double eps = pi / (-ell);
    double theta = pi * u / ell;
    return 2.0 * std::log(eps / std::sin(theta));
}

inline double log_fiber_d2(double u, double ell) {
    double eps = pi / (-ell);
    double theta = pi * u / ell;
    return 2.0 * sq(eps / std::sin(theta));
}

// log density of the z-side cusp metric, u < 0.
inline double log_zero_z(double u) { return -2.0 * std::log(-u); }
inline double log_zero_z_d1(double u) { return -2.0 / u; }
inline double log_zero_z_d2(double u) { return 2.0 / (u * u); }

// log density of the w-side cusp metric in the z chart, u > ell.
inline double log_zero_w(double u, double ell) { return -2.0 * std::log(u - ell); }
inline double log_zero_w_d1(double u, double ell) { return -2.0 / (u - ell); }
inline double log_zero_w_d2(double u, double ell) { return 2.0 / sq(u - ell); }

// delta = log(fiber) - log(cusp) = 2 log(Theta csc Theta) on the z side.
inline double graft_delta_z(double u, double ell) {
    double theta = pi * u / ell;
    return 2.0 * std::log(theta / std::sin(theta));
}

inline double graft_delta_z_d1(double u, double ell) {
    double eps = pi / (-ell);
    double theta = pi * u / ell;
    return 2.0 * eps / std::tan(theta) + 2.0 / u;
}

inline double graft_delta_z_d2(double u, double ell) {
    double eps = pi / (-ell);
    double theta = pi * u / ell;
    return 2.0 * sq(eps / std::sin(theta)) - 2.0 / (u * u);
}

}  // namespace radial

// ----------------------------------------------------------------------
// Grafted metric on the model degenerating annulus: the plumbing of two
// punctured discs, whose true hyperbolic metric is the fiber metric
// exactly.  The graft interpolates the disc metrics against the fiber
// metric across the two collar bands.  Everything is rotation invariant
// and closed-form differentiable, which the expansion checks rely on.
// ----------------------------------------------------------------------

class GraftedAnnulusMetric {
  public:
    explicit GraftedAnnulusMetric(const PlumbingConfig& config) : cfg_(config) {}

    const PlumbingConfig& config() const { return cfg_; }

    // log density against du^2 + dtheta^2, valid on (log|t|, 0).
    double log_radial_density(double u) const {
        double ell = cfg_.log_abs_t();
        check_domain(u, ell);
        if (u >= cfg_.primary_band_lo()) {
            double eta = cfg_.eta_z(u);
            if (eta == 0.0) return radial::log_zero_z(u);
            return radial::log_zero_z(u) + eta * radial::graft_delta_z(u, ell);
        }
        if (u <= cfg_.secondary_band_hi()) {
            double eta = cfg_.eta_w(u);
            double uw = ell - u;
            if (eta == 0.0) return radial::log_zero_z(uw);
            return radial::log_zero_z(uw) + eta * radial::graft_delta_z(uw, ell);
        }
        return radial::log_fiber(u, ell);
    }

    // Exact second u-derivative of the log density.
    double log_radial_density_d2(double u) const {
        double ell = cfg_.log_abs_t();
        check_domain(u, ell);
        if (u >= cfg_.primary_band_lo()) {
            double a = u - cfg_.log_c();
            double eta = cfg_.cutoff.eta(a);
            double d2 = radial::log_zero_z_d2(u);
            if (eta == 0.0 && cfg_.cutoff.eta_prime(a) == 0.0) return d2;
            return d2 + cfg_.cutoff.eta_second(a) * radial::graft_delta_z(u, ell) +
                   2.0 * cfg_.cutoff.eta_prime(a) * radial::graft_delta_z_d1(u, ell) +
                   eta * radial::graft_delta_z_d2(u, ell);
        }
        if (u <= cfg_.secondary_band_hi()) {
            // Mirror of the primary band through u -> log|t| - u; the sign
            // of the first-derivative cross term is even under the flip.
            double uw = ell - u;
            double a = uw - cfg_.log_c();
            double eta = cfg_.cutoff.eta(a);
            double d2 = radial::log_zero_z_d2(uw);
            if (eta == 0.0 && cfg_.cutoff.eta_prime(a) == 0.0) return d2;
            return d2 + cfg_.cutoff.eta_second(a) * radial::graft_delta_z(uw, ell) +
                   2.0 * cfg_.cutoff.eta_prime(a) * radial::graft_delta_z_d1(uw, ell) +
                   eta * radial::graft_delta_z_d2(uw, ell);
        }
        return radial::log_fiber_d2(u, ell);
    }

    double radial_density(double u) const { return std::exp(log_radial_density(u)); }

    // Gaussian curvature from the closed-form derivatives.
    double curvature_exact(double u) const {
        return -log_radial_density_d2(u) / (2.0 * radial_density(u));
    }

    // Ratio of the true hyperbolic (fiber) density to the grafted density.
    double fiber_to_graft_ratio(double u) const {
        double ell = cfg_.log_abs_t();
        return std::exp(radial::log_fiber(u, ell) - log_radial_density(u));
    }

    // Density against |dz|^2 at a chart point.
    double density(const complexd& z) const {
        double u = std::log(std::abs(z));
        return std::exp(log_radial_density(u) - 2.0 * u);
    }

  private:
    static void check_domain(double u, double ell) {
        if (!(u > ell && u < 0.0))
            throw std::domain_error("GraftedAnnulusMetric: point outside the annulus chart");
    }

    PlumbingConfig cfg_;
};

// One-sided grafting of an arbitrary base chart metric against the fiber
// metric, log lambda_g = (1 - eta) log lambda_base + eta log lambda_t with
// eta = eta(log(|z|/c_*)).  BaseLogDensity maps z to log lambda_base(z).
template <typename BaseLogDensity>
double graft_log_density(BaseLogDensity&& base_log_density, const PlumbingConfig& config,
                         const complexd& z) {
    double r = std::abs(z);
    if (!(r > config.abs_t() / config.c_star && r < 1.0))
        throw std::domain_error("graft_log_density: point outside the chart annulus");
    double u = std::log(r);
    double eta = config.eta_z(u);
    if (eta == 0.0) return base_log_density(z);
    double logt = std::log(fiber_density(z, config.t));
    if (eta == 1.0) return logt;
    return (1.0 - eta) * base_log_density(z) + eta * logt;
}

template <typename BaseLogDensity>
double graft_density(BaseLogDensity&& base_log_density, const PlumbingConfig& config,
                     const complexd& z) {
    return std::exp(graft_log_density(base_log_density, config, z));
}

}  // namespace hypgraft

#endif
