#ifndef HYPGRAFT_BELTRAMI_HPP
#define HYPGRAFT_BELTRAMI_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hypgraft/common.hpp"
#include "hypgraft/cutoff.hpp"
#include "hypgraft/quadrature.hpp"

namespace hypgraft {

// Radial profile of the annulus variation: rho(0) = 0, rho(1) = 1 with
// rho' compactly supported in an interior interval.
class VariationProfile {
  public:
    explicit VariationProfile(double lo = 0.2, double hi = 0.8) : lo_(lo), hi_(hi) {
        if (!(0.0 < lo && lo < hi && hi < 1.0))
            throw std::invalid_argument("VariationProfile: need 0 < lo < hi < 1");
    }

    double operator()(double x) const { return detail::smoothstep7((x - lo_) / (hi_ - lo_)); }
    double derivative(double x) const {
        return detail::smoothstep7_d1((x - lo_) / (hi_ - lo_)) / (hi_ - lo_);
    }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }

  private:
    double lo_, hi_;
};

// Pairing of the boundary-variation Beltrami differential with the
// monomial quadratic differential z^alpha (dz/z)^2 over {|t| < |z| < 1}.
// The radial vector field is beta(r) = (t log|t|)^{-1} rho(log r / log|t|),
// normalized so t log|t| beta(|t|) = 1; the nonzero answer -pi/t appears
// only for alpha = 0, where the integral telescopes to the boundary value.
inline complexd beltrami_pairing(const complexd& t, const VariationProfile& profile, int alpha,
                                 double tol = 1e-11) {
    double at = std::abs(t);
    if (!(at > 0.0 && at < 1.0) || !finite(t))
        throw std::invalid_argument("beltrami_pairing: need 0 < |t| < 1");
    double ell = std::log(at);
    complexd coeff = 1.0 / (t * ell);

    // d/dxi of (beta xi) = coeff (rho(mu) + mu rho'(mu)) at mu = xi / ell.
    auto radial = [&](double xi) {
        double mu = xi / ell;
        return std::exp(static_cast<double>(alpha) * xi) * (profile(mu) + mu * profile.derivative(mu));
    };

    // Angular factor integrates to 2 pi only for alpha = 0; a trapezoid
    // over 4|alpha| + 8 samples is exact for these trigonometric modes.
    std::size_t n_theta = 4 * static_cast<std::size_t>(std::abs(alpha)) + 8;
    complexd angular(0.0, 0.0);
    for (std::size_t k = 0; k < n_theta; ++k) {
        double th = two_pi * static_cast<double>(k) / static_cast<double>(n_theta);
        angular += complexd(std::cos(alpha * th), std::sin(alpha * th));
    }
    angular *= two_pi / static_cast<double>(n_theta);

    double radial_part = quad::adaptive(radial, ell, 0.0, tol);
    return 0.5 * coeff * radial_part * angular;
}

}  // namespace hypgraft

#endif
