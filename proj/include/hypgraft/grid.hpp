#ifndef HYPGRAFT_GRID_HPP
#define HYPGRAFT_GRID_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hypgraft/common.hpp"

namespace hypgraft {

// Uniform lattice in (u, theta), u = log r strictly increasing, theta
// periodic with period 2*pi.
struct LogPolarGrid {
    double u_min = 0.0;
    double u_max = 0.0;
    std::size_t n_u = 0;      // samples in u, incl. both boundary rows
    std::size_t n_theta = 0;  // samples in theta over one period

    LogPolarGrid() = default;
    LogPolarGrid(double u_min_, double u_max_, std::size_t n_u_, std::size_t n_theta_)
        : u_min(u_min_), u_max(u_max_), n_u(n_u_), n_theta(n_theta_) {
        if (!(u_min < u_max) || n_u < 3 || n_theta < 3)
            throw std::invalid_argument("LogPolarGrid: need u_min < u_max and >= 3 samples per direction");
    }

    double h_u() const { return (u_max - u_min) / static_cast<double>(n_u - 1); }
    double h_theta() const { return two_pi / static_cast<double>(n_theta); }
    double u(std::size_t i) const { return u_min + static_cast<double>(i) * h_u(); }
    double theta(std::size_t j) const { return static_cast<double>(j) * h_theta(); }
    std::size_t size() const { return n_u * n_theta; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_theta + j; }

    LogPolarGrid refined() const { return LogPolarGrid(u_min, u_max, 2 * n_u - 1, 2 * n_theta); }
};

enum class Chart { ZChart, WChart };

// Conformal metric ds^2 = lambda |dz|^2 sampled as log lambda on a grid.
struct ConformalMetricField {
    Chart chart = Chart::ZChart;
    LogPolarGrid grid;
    std::vector<double> log_density;  // row-major, u outer, theta inner

    double at(std::size_t i, std::size_t j) const { return log_density[grid.index(i, j)]; }
    double& at(std::size_t i, std::size_t j) { return log_density[grid.index(i, j)]; }

    // Density against du^2 + dtheta^2 (the log-polar frame).
    double radial_frame_density(std::size_t i, std::size_t j) const {
        return std::exp(at(i, j) + 2.0 * grid.u(i));
    }

    void validate() const {
        if (log_density.size() != grid.size())
            throw std::invalid_argument("ConformalMetricField: array does not conform to grid");
        for (double v : log_density)
            if (!std::isfinite(v))
                throw std::invalid_argument("ConformalMetricField: log density must be finite");
    }
};

// Sample log lambda(z) over a grid; the callable receives the chart point.
inline ConformalMetricField sample_field(Chart chart, const LogPolarGrid& grid,
                                         const std::function<double(const complexd&)>& log_density) {
    ConformalMetricField f;
    f.chart = chart;
    f.grid = grid;
    f.log_density.resize(grid.size());
    for (std::size_t i = 0; i < grid.n_u; ++i) {
        double r = std::exp(grid.u(i));
        for (std::size_t j = 0; j < grid.n_theta; ++j) {
            double th = grid.theta(j);
            f.log_density[grid.index(i, j)] = log_density(complexd(r * std::cos(th), r * std::sin(th)));
        }
    }
    f.validate();
    return f;
}

// Radial shortcut: log lambda depends on u only.
inline ConformalMetricField sample_radial_field(Chart chart, const LogPolarGrid& grid,
                                                const std::function<double(double)>& log_density_u) {
    ConformalMetricField f;
    f.chart = chart;
    f.grid = grid;
    f.log_density.resize(grid.size());
    for (std::size_t i = 0; i < grid.n_u; ++i) {
        double v = log_density_u(grid.u(i));
        for (std::size_t j = 0; j < grid.n_theta; ++j) f.log_density[grid.index(i, j)] = v;
    }
    f.validate();
    return f;
}

}  // namespace hypgraft

#endif
