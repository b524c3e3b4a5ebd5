#ifndef HYPGRAFT_EXPANSION_HPP
#define HYPGRAFT_EXPANSION_HPP

#include <cmath>
#include <vector>

#include "hypgraft/elliptic.hpp"
#include "hypgraft/metrics.hpp"
#include "hypgraft/ratefit.hpp"
#include "hypgraft/truncation.hpp"

namespace hypgraft {

// ----------------------------------------------------------------------
// Degeneration expansion on the model annulus.  The plumbing of two
// punctured discs has the fiber metric as its actual hyperbolic metric,
// so the two-term expansion
//   lambda_hyp = lambda_graft (1 + (4 pi^4 / 3) (log|t|)^{-2} (Ed_1 + Ed_2) + ...)
// can be checked against closed forms alone; the remainder order is the
// content being measured.
// ----------------------------------------------------------------------

struct ExpansionPoint {
    double inv_neg_log_t = 0.0;
    double residual = 0.0;
    double residual_refined = 0.0;  // same sup on a doubled grid
};

struct ExpansionReport {
    std::vector<ExpansionPoint> points;
    RateFit fit;
};

namespace detail {

inline double annulus_residual_sup(const PlumbingConfig& cfg, std::size_t n_u) {
    GraftedAnnulusMetric graft(cfg);
    AnnulusMeldings melds{cfg};
    double ell = cfg.log_abs_t();
    double coef = (4.0 * pi * pi * pi * pi / 3.0) / (ell * ell);
    double lo = ell + 0.05, hi = -0.05;
    double sup = 0.0;
    for (std::size_t i = 0; i <= n_u; ++i) {
        double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_u);
        double resid = graft.fiber_to_graft_ratio(u) - 1.0 - coef * melds.sum_at(u);
        sup = std::max(sup, std::abs(resid));
    }
    return sup;
}

}  // namespace detail

inline ExpansionReport annulus_expansion_check(const std::vector<PlumbingConfig>& ladder,
                                               std::size_t n_u = 4096) {
    if (ladder.size() < 3)
        throw std::invalid_argument("annulus_expansion_check: need at least 3 ladder points");
    ExpansionReport report;
    std::vector<std::pair<double, double>> samples;
    for (const PlumbingConfig& cfg : ladder) {
        ExpansionPoint p;
        p.inv_neg_log_t = 1.0 / (-cfg.log_abs_t());
        p.residual = detail::annulus_residual_sup(cfg, n_u);
        p.residual_refined = detail::annulus_residual_sup(cfg, 2 * n_u);
        if (std::abs(p.residual_refined - p.residual) > 0.25 * std::max(p.residual, 1e-300))
            throw std::runtime_error("annulus_expansion_check: residual unstable under refinement");
        report.points.push_back(p);
        samples.emplace_back(p.inv_neg_log_t, p.residual);
    }
    report.fit = fit_rate(samples);
    return report;
}

// ----------------------------------------------------------------------
// Curvature correction solve on the model annulus: solve
//   (D_graft - 2) u = 1 + K_graft
// on a window around the primary band, with Dirichlet data taken from the
// known exact correction w = (lambda_t / lambda_graft - 1)/2, and check
// that 1 + 2u reconstructs the metric ratio to the expected quadratic
// order in the curvature defect.
// ----------------------------------------------------------------------

struct CorrectionSolvePoint {
    double inv_neg_log_t = 0.0;
    double residual = 0.0;        // sup |1 + 2u - lambda_t/lambda_graft|
    double sup_source = 0.0;      // sup |1 + K_graft|
    double sup_solution = 0.0;
    double sup_boundary = 0.0;
    bool max_principle_ok = false;
};

struct CorrectionSolveReport {
    std::vector<CorrectionSolvePoint> points;
    RateFit fit;
};

inline CorrectionSolvePoint correction_solve_point(const PlumbingConfig& cfg,
                                                   double window_lo = -6.0,
                                                   double window_hi = -0.25,
                                                   std::size_t n_u = 3073,
                                                   std::size_t n_theta = 8) {
    if (!(window_lo > cfg.log_abs_t() && window_hi < 0.0 && window_lo < window_hi))
        throw std::invalid_argument("correction_solve_point: window must sit inside the chart");
    GraftedAnnulusMetric graft(cfg);
    LogPolarGrid grid(window_lo, window_hi, n_u, n_theta);

    HelmholtzProblem prob;
    prob.metric = sample_radial_field(Chart::ZChart, grid, [&](double u) {
        return graft.log_radial_density(u) - 2.0 * u;
    });
    prob.source.resize(grid.size());
    for (std::size_t i = 0; i < grid.n_u; ++i) {
        double f = 1.0 + graft.curvature_exact(grid.u(i));
        for (std::size_t j = 0; j < grid.n_theta; ++j) prob.source[grid.index(i, j)] = f;
    }
    auto exact_w = [&](double u) { return 0.5 * (graft.fiber_to_graft_ratio(u) - 1.0); };
    prob.boundary_inner.assign(grid.n_theta, exact_w(grid.u(0)));
    prob.boundary_outer.assign(grid.n_theta, exact_w(grid.u(grid.n_u - 1)));

    std::vector<double> u = solve_helmholtz(prob);

    CorrectionSolvePoint p;
    p.inv_neg_log_t = 1.0 / (-cfg.log_abs_t());
    for (double v : prob.source) p.sup_source = std::max(p.sup_source, std::abs(v));
    p.sup_boundary = std::max(std::abs(prob.boundary_inner[0]), std::abs(prob.boundary_outer[0]));
    for (std::size_t i = 1; i + 1 < grid.n_u; ++i) {
        double ratio = graft.fiber_to_graft_ratio(grid.u(i));
        for (std::size_t j = 0; j < grid.n_theta; ++j) {
            double v = u[grid.index(i, j)];
            p.sup_solution = std::max(p.sup_solution, std::abs(v));
            p.residual = std::max(p.residual, std::abs(1.0 + 2.0 * v - ratio));
        }
    }
    p.max_principle_ok = p.sup_solution <= 0.5 * p.sup_source + p.sup_boundary + 1e-12;
    return p;
}

inline CorrectionSolveReport correction_solve_check(const std::vector<PlumbingConfig>& ladder) {
    if (ladder.size() < 3)
        throw std::invalid_argument("correction_solve_check: need at least 3 ladder points");
    CorrectionSolveReport report;
    std::vector<std::pair<double, double>> samples;
    for (const PlumbingConfig& cfg : ladder) {
        CorrectionSolvePoint p = correction_solve_point(cfg);
        report.points.push_back(p);
        samples.emplace_back(p.inv_neg_log_t, p.residual);
    }
    report.fit = fit_rate(samples);
    return report;
}

}  // namespace hypgraft

#endif
