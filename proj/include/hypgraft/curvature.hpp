#ifndef HYPGRAFT_CURVATURE_HPP
#define HYPGRAFT_CURVATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hypgraft/grid.hpp"
#include "hypgraft/metrics.hpp"
#include "hypgraft/ratefit.hpp"

namespace hypgraft {

// Gaussian curvature K = -(1/(2 lambda)) Delta log lambda by second-order
// central differences in (u, theta) with periodic theta wrap.  The two
// boundary u-rows are omitted; the result has (n_u - 2) * n_theta entries
// indexed against interior row i-1.
struct CurvatureField {
    LogPolarGrid grid;  // grid of the source field
    std::vector<double> k;

    double at(std::size_t interior_i, std::size_t j) const {
        return k[interior_i * grid.n_theta + j];
    }
    std::size_t interior_rows() const { return grid.n_u - 2; }
};

inline CurvatureField gaussian_curvature(const ConformalMetricField& field) {
    field.validate();
    const LogPolarGrid& g = field.grid;
    double hu2 = sq(g.h_u());
    double ht2 = sq(g.h_theta());
    CurvatureField out;
    out.grid = g;
    out.k.resize((g.n_u - 2) * g.n_theta);
    for (std::size_t i = 1; i + 1 < g.n_u; ++i) {
        for (std::size_t j = 0; j < g.n_theta; ++j) {
            std::size_t jm = (j + g.n_theta - 1) % g.n_theta;
            std::size_t jp = (j + 1) % g.n_theta;
            double lap = (field.at(i + 1, j) - 2.0 * field.at(i, j) + field.at(i - 1, j)) / hu2 +
                         (field.at(i, jp) - 2.0 * field.at(i, j) + field.at(i, jm)) / ht2;
            // Laplacian in chart coordinates carries e^{-2u}; the density
            // against |dz|^2 carries e^{+2u}; they meet in the frame density.
            double frame_density = std::exp(field.at(i, j) + 2.0 * g.u(i));
            out.k[(i - 1) * g.n_theta + j] = -lap / (2.0 * frame_density);
        }
    }
    return out;
}

inline double max_abs_deviation(const CurvatureField& k, double target) {
    double m = 0.0;
    for (double v : k.k) m = std::max(m, std::abs(v - target));
    return m;
}

// Ratio of curvature errors between a grid and its refinement; close to 4
// for a second-order scheme.
template <typename LogDensityU>
double curvature_richardson_ratio(Chart chart, const LogPolarGrid& grid, LogDensityU&& f,
                                  double target) {
    auto coarse = sample_radial_field(chart, grid, f);
    auto fine = sample_radial_field(chart, grid.refined(), f);
    double e_coarse = max_abs_deviation(gaussian_curvature(coarse), target);
    double e_fine = max_abs_deviation(gaussian_curvature(fine), target);
    if (e_fine == 0.0) throw std::runtime_error("richardson: fine-grid error vanished");
    return e_coarse / e_fine;
}

// ----------------------------------------------------------------------
// Grafted-curvature expansion check: on the collar bands
//   K_graft = -1 - (eps^2/6) Lambda + O(eps^4)
// with Lambda the band-weighted profile in u = log|z|.  The residual is
// measured in sup norm over both bands and fitted against eps.
// ----------------------------------------------------------------------

struct GraftRatePoint {
    double eps = 0.0;
    double residual = 0.0;          // sup over bands of |K + 1 + (eps^2/6) Lambda|
    double off_band_residual = 0.0; // sup of |K + 1| outside the bands
    double residual_no_lambda = 0.0;  // sup with the Lambda term omitted
};

struct GraftRateResult {
    std::vector<GraftRatePoint> points;
    RateFit fit;            // residual vs eps
    RateFit fit_no_lambda;  // control: slope drops to ~2
};

namespace detail {

// Sup of |K_fd + 1 + (eps^2/6) Lambda| over one band, on a radial grid with
// n_u samples (plus the off-band and no-Lambda variants).
inline void band_residuals(const GraftedAnnulusMetric& metric, double band_lo, double band_hi,
                           bool w_side, std::size_t n_u, std::size_t n_theta, double pad,
                           GraftRatePoint& acc) {
    const PlumbingConfig& cfg = metric.config();
    double eps2_6 = sq(cfg.eps()) / 6.0;
    LogPolarGrid grid(band_lo - pad, band_hi + pad, n_u, n_theta);
    auto field = sample_radial_field(Chart::ZChart, grid,
                                     [&](double u) { return metric.log_radial_density(u) - 2.0 * u; });
    CurvatureField k = gaussian_curvature(field);
    for (std::size_t i = 0; i < k.interior_rows(); ++i) {
        double u = grid.u(i + 1);
        double kv = k.at(i, 0);
        double lam = w_side ? cfg.band_lambda_w(u) : cfg.band_lambda(u);
        if (u >= band_lo && u <= band_hi) {
            acc.residual = std::max(acc.residual, std::abs(kv + 1.0 + eps2_6 * lam));
            acc.residual_no_lambda = std::max(acc.residual_no_lambda, std::abs(kv + 1.0));
        } else {
            acc.off_band_residual = std::max(acc.off_band_residual, std::abs(kv + 1.0));
        }
    }
}

}  // namespace detail

// Residual ladder over configs; requires at least 4 points spanning a
// factor >= 8 in -log|t|.  A Richardson check guards the grid resolution.
inline GraftRateResult graft_curvature_residual(const std::vector<PlumbingConfig>& ladder,
                                                std::size_t n_u = 4097, std::size_t n_theta = 8) {
    if (ladder.size() < 4)
        throw std::invalid_argument("graft_curvature_residual: need at least 4 ladder points");
    double lmin = 1e300, lmax = 0.0;
    for (const auto& cfg : ladder) {
        lmin = std::min(lmin, -cfg.log_abs_t());
        lmax = std::max(lmax, -cfg.log_abs_t());
    }
    if (lmax / lmin < 8.0)
        throw std::invalid_argument("graft_curvature_residual: ladder must span a factor >= 8");

    GraftRateResult out;
    std::vector<std::pair<double, double>> samples, samples_ctrl;
    for (const auto& cfg : ladder) {
        GraftedAnnulusMetric metric(cfg);
        GraftRatePoint p;
        p.eps = cfg.eps();
        double pad = -0.25 * cfg.cutoff.a0();
        detail::band_residuals(metric, cfg.primary_band_lo(), cfg.primary_band_hi(), false, n_u,
                               n_theta, pad, p);
        detail::band_residuals(metric, cfg.secondary_band_lo(), cfg.secondary_band_hi(), true, n_u,
                               n_theta, pad, p);
        // Resolution guard: the same residual on a refined radial grid must
        // agree, otherwise the sup is discretization noise.
        GraftRatePoint probe;
        probe.eps = p.eps;
        detail::band_residuals(metric, cfg.primary_band_lo(), cfg.primary_band_hi(), false,
                               2 * n_u - 1, n_theta, pad, probe);
        if (std::abs(probe.residual - p.residual) > 0.25 * p.residual)
            throw std::runtime_error("graft_curvature_residual: band grid under-resolved");
        out.points.push_back(p);
        samples.emplace_back(p.eps, p.residual);
        samples_ctrl.emplace_back(p.eps, p.residual_no_lambda);
    }
    out.fit = fit_rate(samples);
    out.fit_no_lambda = fit_rate(samples_ctrl);
    return out;
}

}  // namespace hypgraft

#endif
