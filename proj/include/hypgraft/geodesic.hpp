#ifndef HYPGRAFT_GEODESIC_HPP
#define HYPGRAFT_GEODESIC_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

#include "hypgraft/eisenstein.hpp"
#include "hypgraft/moebius.hpp"
#include "hypgraft/quadrature.hpp"

namespace hypgraft {

// A unit-speed piece of a geodesic: either the vertical line x = x0 with
// zeta(s) = x0 + i e^s, or the axis of a hyperbolic element parameterized
// by conjugating the element to the dilation omega -> e^{2L} omega.
class GeodesicSegment {
  public:
    static GeodesicSegment vertical(double x0, double s0, double s1) {
        if (!(s1 > s0)) throw std::invalid_argument("GeodesicSegment: empty parameter interval");
        GeodesicSegment seg;
        seg.vertical_ = true;
        seg.x0_ = x0;
        seg.s0_ = s0;
        seg.s1_ = s1;
        return seg;
    }

    static GeodesicSegment axis_of(const MoebiusMap& m, double periods = 1.0) {
        double tr = std::abs(m.trace());
        if (!(tr > 2.0 + 1e-12))
            throw std::invalid_argument("GeodesicSegment: element is not hyperbolic");
        if (!(periods > 0.0)) throw std::invalid_argument("GeodesicSegment: need positive periods");
        double length = 2.0 * std::acosh(tr / 2.0);
        GeodesicSegment seg;
        seg.s0_ = -0.5 * length * periods;
        seg.s1_ = 0.5 * length * periods;
        if (std::abs(m.c()) < 1e-14) {
            // Fixed points are infinity and b/(d-a): a vertical axis.
            double gap = m.d() - m.a();
            if (std::abs(gap) < 1e-14)
                throw std::invalid_argument("GeodesicSegment: element has no axis");
            seg.vertical_ = true;
            seg.x0_ = m.b() / gap;
            return seg;
        }
        double disc = std::sqrt(tr * tr - 4.0);
        double p1 = (m.a() - m.d() + disc) / (2.0 * m.c());
        double p2 = (m.a() - m.d() - disc) / (2.0 * m.c());
        double lo = std::min(p1, p2), hi = std::max(p1, p2);
        seg.vertical_ = false;
        // Maps the axis onto the positive imaginary axis (lo -> 0, hi -> inf).
        seg.from_axis_ = MoebiusMap(-1.0, lo, 1.0, -hi).inverse();
        return seg;
    }

    double s0() const { return s0_; }
    double s1() const { return s1_; }
    double length() const { return s1_ - s0_; }

    complexd point(double s) const {
        complexd w(0.0, std::exp(s));
        return vertical_ ? complexd(x0_, w.imag()) : from_axis_(w);
    }

    // d zeta / d s; the parameterization is unit speed, |velocity| = Im point.
    complexd velocity(double s) const {
        complexd w(0.0, std::exp(s));
        if (vertical_) return w;
        complexd den = from_axis_.c() * w + from_axis_.d();
        return w / (den * den);
    }

    GeodesicSegment subinterval(double s0, double s1) const {
        if (!(s1 > s0)) throw std::invalid_argument("GeodesicSegment: empty parameter interval");
        GeodesicSegment seg = *this;
        seg.s0_ = s0;
        seg.s1_ = s1;
        return seg;
    }

  private:
    GeodesicSegment() = default;
    bool vertical_ = false;
    double x0_ = 0.0;
    double s0_ = 0.0, s1_ = 1.0;
    MoebiusMap from_axis_;
};

enum class GeodesicIntegrand { E_ds, Phi_over_ds };

// Line integrals along a segment: the arc-length integral of E, or the
// quadratic differential Phi contracted against the inverse metric and
// restricted to the curve, integrated in arc length.
inline complexd geodesic_line_integral(const EisensteinEvaluator& ev, const GeodesicSegment& seg,
                                       GeodesicIntegrand kind, double tol = 1e-7) {
    if (kind == GeodesicIntegrand::E_ds) {
        double value = quad::adaptive([&](double s) { return ev.eval_E2(seg.point(s)); }, seg.s0(),
                                      seg.s1(), tol);
        return complexd(value, 0.0);
    }
    return quad::adaptive(
        [&](double s) {
            complexd zeta = seg.point(s);
            complexd v = seg.velocity(s);
            return ev.eval_Phi4(zeta) * v * v * (zeta.imag() / std::abs(v));
        },
        seg.s0(), seg.s1(), tol);
}

struct GeodesicIdentityReport {
    double integral_E = 0.0;
    complexd integral_Phi;
    double mismatch = 0.0;   // |int E ds - 3 Re int Phi (ds)^{-1}|
    double imag_part = 0.0;  // |Im int Phi (ds)^{-1}|
};

inline GeodesicIdentityReport geodesic_identity_check(const EisensteinEvaluator& ev,
                                                      const GeodesicSegment& seg,
                                                      double tol = 1e-5) {
    GeodesicIdentityReport rep;
    rep.integral_E = geodesic_line_integral(ev, seg, GeodesicIntegrand::E_ds, tol).real();
    rep.integral_Phi = geodesic_line_integral(ev, seg, GeodesicIntegrand::Phi_over_ds, tol);
    rep.mismatch = std::abs(rep.integral_E - 3.0 * rep.integral_Phi.real());
    rep.imag_part = std::abs(rep.integral_Phi.imag());
    return rep;
}

// Pairing of two Beltrami-type coefficients against the series over a
// rectangle in the cusp chart, with the hyperbolic area element dx dy / y^2.
inline complexd tz_pairing(const EisensteinEvaluator& ev,
                           const std::function<complexd(const complexd&)>& mu,
                           const std::function<complexd(const complexd&)>& nu, double x0, double x1,
                           double y0, double y1, double tol = 1e-8) {
    if (!(y0 > 0.0)) throw std::domain_error("tz_pairing: domain must lie in the half-plane");
    return quad::adaptive_2d(
        [&](double x, double y) {
            complexd zeta(x, y);
            return mu(zeta) * std::conj(nu(zeta)) * ev.eval_E2(zeta) / (y * y);
        },
        x0, x1, y0, y1, tol);
}

// Coefficient of the quadratic length correction along a geodesic segment
// disjoint from the collars: (1/6) int (E_1 + E_2) ds.  A null evaluator is
// a series extended by zero over the segment's component.  When chart
// bounds are supplied, the segment must stay below them (outside the
// collar region of the cusp chart).
inline double length_correction_coefficient(const EisensteinEvaluator* e1,
                                            const EisensteinEvaluator* e2,
                                            const GeodesicSegment& seg,
                                            std::optional<double> max_height = std::nullopt,
                                            double tol = 1e-8) {
    if (max_height) {
        for (double s : {seg.s0(), 0.5 * (seg.s0() + seg.s1()), seg.s1()})
            if (seg.point(s).imag() > *max_height)
                throw std::domain_error("length_correction_coefficient: segment enters the collar region");
    }
    auto term = [&](const EisensteinEvaluator* ev) {
        if (!ev) return 0.0;
        return quad::adaptive([&](double s) { return ev->eval_E2(seg.point(s)); }, seg.s0(),
                              seg.s1(), tol);
    };
    return (term(e1) + term(e2)) / 6.0;
}

}  // namespace hypgraft

#endif
