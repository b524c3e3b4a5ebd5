#ifndef HYPGRAFT_CUTOFF_HPP
#define HYPGRAFT_CUTOFF_HPP

#include <cmath>
#include <stdexcept>

#include "hypgraft/common.hpp"

namespace hypgraft {

namespace detail {

// Septic smoothstep on [0,1]: s(0)=0, s(1)=1, first three derivatives
// vanish at both ends, s(1/2)=1/2.
inline double smoothstep7(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return ((( -20.0 * x + 70.0) * x - 84.0) * x + 35.0) * x * x * x * x;
}

inline double smoothstep7_d1(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return (((-140.0 * x + 420.0) * x - 420.0) * x + 140.0) * x * x * x;
}

inline double smoothstep7_d2(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return (((-840.0 * x + 2100.0) * x - 1680.0) * x + 420.0) * x * x;
}

}  // namespace detail

// Interpolation profile eta: identically 1 for a <= a0 < 0, identically 0
// for a >= 0, C^3 across the joins.  Shared by the metric grafting and the
// series truncations.
class CutoffProfile {
  public:
    explicit CutoffProfile(double a0 = -1.0) : a0_(a0) {
        if (!(a0 < 0.0) || !std::isfinite(a0))
            throw std::invalid_argument("CutoffProfile: a0 must be negative");
    }

    double a0() const { return a0_; }

    double eta(double a) const {
        return 1.0 - detail::smoothstep7((a - a0_) / (-a0_));
    }

    double eta_prime(double a) const {
        return detail::smoothstep7_d1((a - a0_) / (-a0_)) / a0_;
    }

    double eta_second(double a) const {
        return -detail::smoothstep7_d2((a - a0_) / (-a0_)) / (a0_ * a0_);
    }

    double chi(double a) const { return 1.0 - eta(a); }
    double chi_prime(double a) const { return -eta_prime(a); }
    double chi_second(double a) const { return -eta_second(a); }

  private:
    double a0_;
};

// d/da (a^4 eta'(a)); vanishes identically outside (a0, 0).
inline double lambda_profile(const CutoffProfile& cutoff, double a) {
    if (a <= cutoff.a0() || a >= 0.0) return 0.0;
    double a2 = a * a;
    return 4.0 * a2 * a * cutoff.eta_prime(a) + a2 * a2 * cutoff.eta_second(a);
}

}  // namespace hypgraft

#endif
