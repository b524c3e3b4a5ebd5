#ifndef HYPGRAFT_EMELD_HPP
#define HYPGRAFT_EMELD_HPP

#include <cmath>
#include <vector>

#include "hypgraft/eisenstein.hpp"
#include "hypgraft/ratefit.hpp"
#include "hypgraft/truncation.hpp"

namespace hypgraft {

// Decomposition of (D_t - 2)E^# on the defining-cusp chart into
//   A = ((sin Theta / Theta)^2 - 1) 2 E^#,
//   B = -(sin Theta / Theta)^2 (4 y^3 d_y eta_1 + y^4 d_yy eta_1),
//   C = -(sin Theta / Theta)^2 (2 y^2 d_y e_hat d_y eta_2 + y^2 e_hat d_yy eta_2),
// with Theta = pi u / log|t|, u = -2 pi y.  A is collar-wide, B lives on the
// primary band where it cancels the band profile to second order, and C
// lives on the secondary band.
namespace emeld {

inline double sinc_ratio_sq(double theta) {
    double s = std::sin(theta) / theta;
    return s * s;
}

inline double theta_of(const PlumbingConfig& cfg, double u) { return pi * u / cfg.log_abs_t(); }

inline double field_A(const EisensteinEvaluator& ev, const PlumbingConfig& cfg,
                      const complexd& zeta) {
    double u = -two_pi * zeta.imag();
    TruncationContext ctx{cfg, TruncationRole::DefiningCusp};
    return (sinc_ratio_sq(theta_of(cfg, u)) - 1.0) * 2.0 * truncate_sharp(ev, ctx, zeta);
}

inline double field_B(const PlumbingConfig& cfg, double u) {
    return -sinc_ratio_sq(theta_of(cfg, u)) * cfg.band_lambda(u) / (4.0 * pi * pi);
}

inline double field_C(const EisensteinEvaluator& ev, const PlumbingConfig& cfg,
                      const complexd& zeta, double fd_step = 1e-4) {
    double y = zeta.imag();
    double u = -two_pi * y;
    double a2 = detail::chi_secondary_arg(cfg, u);
    double ep = cfg.cutoff.eta_prime(a2);
    double epp = cfg.cutoff.eta_second(a2);
    if (ep == 0.0 && epp == 0.0) return 0.0;
    double ehat = ev.eval_e_hat(zeta);
    double ehat_y = (ev.eval_e_hat(zeta + complexd(0, fd_step)) -
                     ev.eval_e_hat(zeta - complexd(0, fd_step))) /
                    (2.0 * fd_step);
    // d_y eta_2 = -2 pi eta'(a2), d_yy eta_2 = 4 pi^2 eta''(a2).
    double term = 2.0 * y * y * ehat_y * (-two_pi * ep) + y * y * ehat * (4.0 * pi * pi * epp);
    return -sinc_ratio_sq(theta_of(cfg, u)) * term;
}

struct LadderPoint {
    double inv_neg_log_t = 0.0;  // the fit abscissa (-log|t|)^{-1}
    double sup_a = 0.0;
    double sup_b_residual = 0.0;  // |B + Lambda / (4 pi^2)|
    double sup_c = 0.0;
};

struct Result {
    std::vector<LadderPoint> points;
    RateFit fit_a;
    RateFit fit_b;
    RateFit fit_c;
};

struct GridSpec {
    std::size_t shallow_u = 768;   // 2-D scan where the x-dependence matters
    std::size_t shallow_x = 24;
    std::size_t deep_u = 1536;     // radial scan below y = 2
    std::size_t band_u = 2048;
};

inline Result residual_ladder(const EisensteinEvaluator& ev,
                              const std::vector<PlumbingConfig>& ladder,
                              const GridSpec& grids = GridSpec{}) {
    if (ladder.size() < 3)
        throw std::invalid_argument("emeld::residual_ladder: need at least 3 ladder points");
    Result out;
    std::vector<std::pair<double, double>> sa, sb, sc;
    for (const PlumbingConfig& cfg : ladder) {
        LadderPoint p;
        p.inv_neg_log_t = 1.0 / (-cfg.log_abs_t());

        // sup |A| over the collar: full 2-D scan on the shallow strip where
        // the remainder still varies with x, radial scan below.
        double shallow_lo = std::max(cfg.collar_lo(), -2.0 * two_pi);
        for (std::size_t i = 0; i <= grids.shallow_u; ++i) {
            double u = shallow_lo +
                       (cfg.collar_hi() - shallow_lo) * static_cast<double>(i) / grids.shallow_u;
            double y = -u / two_pi;
            for (std::size_t j = 0; j < grids.shallow_x; ++j) {
                double x = static_cast<double>(j) / grids.shallow_x;
                p.sup_a = std::max(p.sup_a, std::abs(field_A(ev, cfg, complexd(x, y))));
            }
        }
        if (cfg.collar_lo() < shallow_lo) {
            for (std::size_t i = 1; i <= grids.deep_u; ++i) {
                double u = cfg.collar_lo() +
                           (shallow_lo - cfg.collar_lo()) * static_cast<double>(i) / grids.deep_u;
                double y = -u / two_pi;
                p.sup_a = std::max(p.sup_a, std::abs(field_A(ev, cfg, complexd(0.37, y))));
            }
        }

        // sup |B + Lambda/(4 pi^2)| over the primary band.
        for (std::size_t i = 0; i <= grids.band_u; ++i) {
            double u = cfg.primary_band_lo() +
                       (cfg.primary_band_hi() - cfg.primary_band_lo()) * static_cast<double>(i) /
                           grids.band_u;
            double res = std::abs(field_B(cfg, u) + cfg.band_lambda(u) / (4.0 * pi * pi));
            p.sup_b_residual = std::max(p.sup_b_residual, res);
        }

        // sup |C| over the secondary band.
        for (std::size_t i = 0; i <= grids.band_u; ++i) {
            double u = cfg.secondary_band_lo() +
                       (cfg.secondary_band_hi() - cfg.secondary_band_lo()) *
                           static_cast<double>(i) / grids.band_u;
            double y = -u / two_pi;
            p.sup_c = std::max(p.sup_c, std::abs(field_C(ev, cfg, complexd(0.37, y))));
        }

        out.points.push_back(p);
        sa.emplace_back(p.inv_neg_log_t, p.sup_a);
        sb.emplace_back(p.inv_neg_log_t, p.sup_b_residual);
        if (p.sup_c > 0.0) sc.emplace_back(p.inv_neg_log_t, p.sup_c);
    }
    out.fit_a = fit_rate(sa);
    out.fit_b = fit_rate(sb);
    if (sc.size() == out.points.size()) out.fit_c = fit_rate(sc);
    return out;
}

}  // namespace emeld
}  // namespace hypgraft

#endif
