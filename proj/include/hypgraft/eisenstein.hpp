#ifndef HYPGRAFT_EISENSTEIN_HPP
#define HYPGRAFT_EISENSTEIN_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hypgraft/common.hpp"
#include "hypgraft/moebius.hpp"

namespace hypgraft {

namespace detail {

// sum over n of ((x + n)^2 + y^2)^{-2}, written against em = e^{-2 pi y}
// so nothing overflows for any height.
inline double translate_sum_quartic(double cos2pix, double y, double em) {
    double den = 1.0 + em * em - 2.0 * em * cos2pix;
    double s1 = (pi / y) * (1.0 - em * em) / den;
    return s1 / (2.0 * y * y) -
           (2.0 * pi * pi / (y * y)) * em * (2.0 * em - cos2pix * (1.0 + em * em)) / (den * den);
}

// sum over n of (w + n)^{-4} = (pi^4/3) (2 cos^2(pi w) + 1) / sin^4(pi w).
inline complexd translate_sum_weight4(const complexd& sin_piw, const complexd& cos_piw) {
    complexd s2 = sin_piw * sin_piw;
    return (pi * pi * pi * pi / 3.0) * (2.0 * cos_piw * cos_piw + 1.0) / (s2 * s2);
}

}  // namespace detail

// Numerical evaluator for the weight-zero series E(zeta;2) (the coset sum
// of (Im A zeta)^2) and the weight-four holomorphic series Phi (the coset
// sum of (d zeta)^2), in the chart where the defining cusp sits at
// infinity with unit translations.
//
// Stored rows are the translation classes (c, d mod c); the translates
// (c, d + cn) are summed in closed form, so truncation happens only in c
// and the values are exactly periodic in Re zeta.  The tail of the c-sum
// is controlled by an explicit majorant: dropping coprimality, for
// c > C >= 2 and Im zeta = y,
//
//   sum_{c > C} sum_{d odd} y^2 ((c x + d)^2 + (c y)^2)^{-2}
//     <= sum_{c > C, even} [ (pi/4) (c y)^{-3} c ... ] <= pi/(64 y M^2) + 1/(48 y^2 M^3)
//
// with M = floor(C/2); the declared tail_constant is this bound times C^2
// at the bottom of the evaluation region.
class EisensteinEvaluator {
  public:
    EisensteinEvaluator(const FuchsianGroupSpec& spec, const CuspRecord& cusp, long long cutoff,
                        double y_min = 0.5, double tolerance = 1e-4)
        : spec_(spec), cusp_(cusp), rows_(enumerate_bottom_rows(spec, cusp, cutoff)),
          y_min_(y_min), tolerance_(tolerance) {
        if (!(y_min > 0.0)) throw std::invalid_argument("EisensteinEvaluator: y_min must be positive");
        build_row_data();
        check_tail_empirically();
    }

    const FuchsianGroupSpec& group() const { return spec_; }
    const CuspRecord& defining_cusp() const { return cusp_; }
    const BottomRowSet& rows() const { return rows_; }
    long long cutoff() const { return rows_.cutoff; }
    double tolerance() const { return tolerance_; }

    // Explicit majorant for the truncated c > C part of the sum at height y.
    double tail_bound(double y) const { return tail_bound_at(rows_.cutoff, y); }

    // Declared constant with tail error <= tail_constant / C^2 on y >= y_min.
    double tail_constant() const {
        return tail_bound(y_min_) * static_cast<double>(rows_.cutoff) * static_cast<double>(rows_.cutoff);
    }

    // Remainder over the nonzero-c rows; E = delta_inf y^2 + e_hat.
    double eval_e_hat(const complexd& zeta) const {
        check_point(zeta);
        double x = zeta.real(), y = zeta.imag();
        if (tail_bound(y) > tolerance_)
            throw std::runtime_error("EisensteinEvaluator: tail bound exceeds tolerance, needs larger cutoff");
        double em = std::exp(-two_pi * y);
        double c2x = std::cos(two_pi * x), s2x = std::sin(two_pi * x);
        double acc = 0.0;
        for (const Row& r : row_data_) {
            double cosrow = c2x * r.cos2pi - s2x * r.sin2pi;
            acc += r.inv_c4 * detail::translate_sum_quartic(cosrow, y, em);
        }
        return acc * y * y;
    }

    double eval_E2(const complexd& zeta) const { return sq(zeta.imag()) + eval_e_hat(zeta); }

    // Subtracts the (Im zeta)^2 mode only inside the defining cusp region.
    double eval_E_star(const complexd& zeta) const {
        check_point(zeta);
        return zeta.imag() > 1.0 ? eval_e_hat(zeta) : eval_E2(zeta);
    }

    complexd eval_Phi4(const complexd& zeta) const {
        check_point(zeta);
        double y = zeta.imag();
        if (phi_tail_bound(y) > tolerance_)
            throw std::runtime_error("EisensteinEvaluator: weight-4 tail exceeds tolerance");
        complexd acc(1.0, 0.0);  // the (0,1) class contributes (d zeta)^2 itself
        if (pi * y > 170.0) return acc;  // remaining classes below double underflow
        complexd sp = std::sin(pi * zeta), cp = std::cos(pi * zeta);
        for (const Row& r : row_data_) {
            complexd s = sp * r.cospi + cp * r.sinpi;
            complexd c = cp * r.cospi - sp * r.sinpi;
            acc += r.inv_c4 * detail::translate_sum_weight4(s, c);
        }
        return acc;
    }

    double phi_tail_bound(double y) const {
        if (spec_.kind == GroupKind::ParabolicCylinder) return 0.0;
        double M = std::floor(static_cast<double>(rows_.cutoff) / 2.0);
        if (M < 1.0) M = 1.0;
        double sh = std::sinh(pi * y), ch = std::cosh(pi * y);
        double k4 = (pi * pi * pi * pi / 3.0) * (2.0 * ch * ch + 1.0) / (sh * sh * sh * sh);
        // sum_{c even > C} phi(c) c^{-4} <= (1/2) sum_{c even > C} c^{-3} <= 1/(32 M^2)
        return k4 / (32.0 * M * M);
    }

  private:
    struct Row {
        double inv_c4;
        double cos2pi, sin2pi;  // phase of 2 pi d / c
        double cospi, sinpi;    // phase of pi d / c
    };

    static void check_point(const complexd& zeta) {
        if (!finite(zeta) || !(zeta.imag() > 0.0))
            throw std::domain_error("EisensteinEvaluator: point must lie in the upper half-plane");
    }

    static double tail_bound_at_rows(long long cutoff, double y, bool any_rows) {
        if (!any_rows) return 0.0;
        double M = std::floor(static_cast<double>(cutoff) / 2.0);
        if (M < 1.0) M = 1.0;
        return pi / (64.0 * y * M * M) + 1.0 / (48.0 * y * y * M * M * M);
    }

    double tail_bound_at(long long cutoff, double y) const {
        return tail_bound_at_rows(cutoff, y, spec_.kind != GroupKind::ParabolicCylinder);
    }

    void build_row_data() {
        row_data_.clear();
        for (auto [c, d] : rows_.rows) {
            if (c == 0) continue;
            Row r;
            double cd = static_cast<double>(c);
            r.inv_c4 = 1.0 / (cd * cd * cd * cd);
            double frac = static_cast<double>(d) / cd;
            r.cos2pi = std::cos(two_pi * frac);
            r.sin2pi = std::sin(two_pi * frac);
            r.cospi = std::cos(pi * frac);
            r.sinpi = std::sin(pi * frac);
            row_data_.push_back(r);
        }
    }

    // Construction-time check: doubling the cutoff moves three probe values
    // by no more than the declared bound.
    void check_tail_empirically() const {
        if (spec_.kind == GroupKind::ParabolicCylinder) return;
        BottomRowSet wide = enumerate_bottom_rows(spec_, cusp_, 2 * rows_.cutoff);
        const complexd probes[3] = {complexd(0.0, std::max(1.0, y_min_)),
                                    complexd(1.0 / 3.0, 2.0 * std::max(1.0, y_min_)),
                                    complexd(0.71, 4.0 * std::max(1.0, y_min_))};
        for (const complexd& p : probes) {
            double here = raw_e_hat(rows_, p);
            double there = raw_e_hat(wide, p);
            if (std::abs(here - there) > tail_bound_at(rows_.cutoff, p.imag()) + 1e-15)
                throw std::logic_error("EisensteinEvaluator: empirical tail exceeds declared bound");
        }
    }

    static double raw_e_hat(const BottomRowSet& rows, const complexd& zeta) {
        double x = zeta.real(), y = zeta.imag();
        double em = std::exp(-two_pi * y);
        double acc = 0.0;
        for (auto [c, d] : rows.rows) {
            if (c == 0) continue;
            double cd = static_cast<double>(c);
            double cosrow = std::cos(two_pi * (x + static_cast<double>(d) / cd));
            acc += detail::translate_sum_quartic(cosrow, y, em) / (cd * cd * cd * cd);
        }
        return acc * y * y;
    }

    FuchsianGroupSpec spec_;
    CuspRecord cusp_;
    BottomRowSet rows_;
    double y_min_;
    double tolerance_;
    std::vector<Row> row_data_;
};

}  // namespace hypgraft

#endif
