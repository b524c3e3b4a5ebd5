#ifndef HYPGRAFT_ELLIPTIC_HPP
#define HYPGRAFT_ELLIPTIC_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hypgraft/grid.hpp"

namespace hypgraft {

// D u = lambda^{-1} Delta_chart u for ds^2 = lambda |dz|^2, discretized with
// the 5-point stencil in (u, theta), periodic theta.  Interior rows only;
// row i of the result corresponds to grid row i+1.
inline std::vector<double> apply_laplace_beltrami(const ConformalMetricField& metric,
                                                  const std::vector<double>& u) {
    metric.validate();
    const LogPolarGrid& g = metric.grid;
    if (u.size() != g.size())
        throw std::invalid_argument("apply_laplace_beltrami: shape mismatch");
    double hu2 = sq(g.h_u()), ht2 = sq(g.h_theta());
    std::vector<double> out((g.n_u - 2) * g.n_theta);
    for (std::size_t i = 1; i + 1 < g.n_u; ++i) {
        for (std::size_t j = 0; j < g.n_theta; ++j) {
            std::size_t jm = (j + g.n_theta - 1) % g.n_theta;
            std::size_t jp = (j + 1) % g.n_theta;
            double lap = (u[g.index(i + 1, j)] - 2.0 * u[g.index(i, j)] + u[g.index(i - 1, j)]) / hu2 +
                         (u[g.index(i, jp)] - 2.0 * u[g.index(i, j)] + u[g.index(i, jm)]) / ht2;
            out[(i - 1) * g.n_theta + j] = lap / metric.radial_frame_density(i, j);
        }
    }
    return out;
}

// Dirichlet problem (D - 2) u = f on the grid interior with prescribed
// values on the two boundary u-rows.
struct HelmholtzProblem {
    ConformalMetricField metric;
    std::vector<double> source;          // f over the full grid; interior is used
    std::vector<double> boundary_inner;  // u on grid row 0, one value per theta
    std::vector<double> boundary_outer;  // u on grid row n_u - 1

    void validate() const {
        metric.validate();
        const LogPolarGrid& g = metric.grid;
        if (source.size() != g.size() || boundary_inner.size() != g.n_theta ||
            boundary_outer.size() != g.n_theta)
            throw std::invalid_argument("HelmholtzProblem: arrays do not conform to the grid");
        for (double v : boundary_inner)
            if (!std::isfinite(v)) throw std::invalid_argument("HelmholtzProblem: boundary not finite");
        for (double v : boundary_outer)
            if (!std::isfinite(v)) throw std::invalid_argument("HelmholtzProblem: boundary not finite");
    }
};

namespace detail {

inline bool metric_is_radial(const ConformalMetricField& m, double tol = 1e-13) {
    for (std::size_t i = 0; i < m.grid.n_u; ++i) {
        double ref = m.at(i, 0);
        for (std::size_t j = 1; j < m.grid.n_theta; ++j)
            if (std::abs(m.at(i, j) - ref) > tol * (1.0 + std::abs(ref))) return false;
    }
    return true;
}

// Solve the 5-point system by the real DFT in theta: each angular mode
// decouples into a tridiagonal solve in u.  Exact for theta-independent
// coefficients (the model metrics are all rotation invariant).
inline std::vector<double> solve_radial_modes(const HelmholtzProblem& p) {
    const LogPolarGrid& g = p.metric.grid;
    const std::size_t nu = g.n_u, nt = g.n_theta, ni = nu - 2;
    double hu2 = sq(g.h_u()), ht2 = sq(g.h_theta());

    // Orthogonal real Fourier basis over the theta samples.
    Eigen::MatrixXd basis(nt, nt);
    for (std::size_t j = 0; j < nt; ++j) {
        std::size_t m = 0;
        basis(j, 0) = 1.0 / std::sqrt(static_cast<double>(nt));
        for (m = 1; 2 * m < nt; ++m) {
            double ang = two_pi * static_cast<double>(m * j) / static_cast<double>(nt);
            basis(j, 2 * m - 1) = std::sqrt(2.0 / nt) * std::cos(ang);
            basis(j, 2 * m) = std::sqrt(2.0 / nt) * std::sin(ang);
        }
        if (nt % 2 == 0) basis(j, nt - 1) = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(nt));
    }
    auto mode_of_column = [&](std::size_t col) -> std::size_t {
        if (col == 0) return 0;
        if (nt % 2 == 0 && col == nt - 1) return nt / 2;
        return (col + 1) / 2;
    };

    // Transform rhs rows (lambda-weighted source, boundary folded in).
    Eigen::MatrixXd rhs(ni, nt);
    std::vector<double> lam(nu);
    for (std::size_t i = 0; i < nu; ++i) lam[i] = p.metric.radial_frame_density(i, 0);
    for (std::size_t i = 1; i + 1 < nu; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            double r = lam[i] * p.source[g.index(i, j)];
            if (i == 1) r -= p.boundary_inner[j] / hu2;
            if (i == nu - 2) r -= p.boundary_outer[j] / hu2;
            rhs(i - 1, j) = r;
        }
    Eigen::MatrixXd rhat = rhs * basis;

    // Tridiagonal solve per mode: (d_uu - s_m - 2 lambda) u = rhs_m, with
    // s_m the discrete symbol of -d_thth.
    Eigen::MatrixXd uhat(ni, nt);
    std::vector<double> diag(ni), sub(ni), work(ni);
    for (std::size_t col = 0; col < nt; ++col) {
        std::size_t m = mode_of_column(col);
        double sym = (2.0 - 2.0 * std::cos(two_pi * static_cast<double>(m) / nt)) / ht2;
        for (std::size_t i = 0; i < ni; ++i)
            diag[i] = -2.0 / hu2 - sym - 2.0 * lam[i + 1];
        // Thomas algorithm, off-diagonals all 1/hu2.
        double off = 1.0 / hu2;
        sub[0] = diag[0];
        work[0] = rhat(0, col);
        for (std::size_t i = 1; i < ni; ++i) {
            double w = off / sub[i - 1];
            sub[i] = diag[i] - w * off;
            work[i] = rhat(i, col) - w * work[i - 1];
        }
        uhat(ni - 1, col) = work[ni - 1] / sub[ni - 1];
        for (std::size_t i = ni - 1; i-- > 0;)
            uhat(i, col) = (work[i] - off * uhat(i + 1, col)) / sub[i];
    }

    Eigen::MatrixXd interior = uhat * basis.transpose();
    std::vector<double> out(g.size());
    for (std::size_t j = 0; j < nt; ++j) {
        out[g.index(0, j)] = p.boundary_inner[j];
        out[g.index(nu - 1, j)] = p.boundary_outer[j];
    }
    for (std::size_t i = 1; i + 1 < nu; ++i)
        for (std::size_t j = 0; j < nt; ++j) out[g.index(i, j)] = interior(i - 1, j);
    return out;
}

// General coefficients: block-tridiagonal elimination over u-rows with
// dense theta blocks (the periodic wrap lives inside each block).
inline std::vector<double> solve_block_rows(const HelmholtzProblem& p) {
    const LogPolarGrid& g = p.metric.grid;
    const std::size_t nu = g.n_u, nt = g.n_theta, ni = nu - 2;
    double hu2 = sq(g.h_u()), ht2 = sq(g.h_theta());
    double off = 1.0 / hu2;

    std::vector<Eigen::MatrixXd> inv_s(ni);
    std::vector<Eigen::VectorXd> y(ni);
    Eigen::MatrixXd block(nt, nt);
    for (std::size_t i = 0; i < ni; ++i) {
        block.setZero();
        for (std::size_t j = 0; j < nt; ++j) {
            block(j, j) = -2.0 / hu2 - 2.0 / ht2 - 2.0 * p.metric.radial_frame_density(i + 1, j);
            block(j, (j + 1) % nt) += 1.0 / ht2;
            block(j, (j + nt - 1) % nt) += 1.0 / ht2;
        }
        Eigen::VectorXd r(nt);
        for (std::size_t j = 0; j < nt; ++j) {
            double v = p.metric.radial_frame_density(i + 1, j) * p.source[g.index(i + 1, j)];
            if (i == 0) v -= p.boundary_inner[j] / hu2;
            if (i == ni - 1) v -= p.boundary_outer[j] / hu2;
            r(j) = v;
        }
        if (i > 0) {
            block.noalias() -= (off * off) * inv_s[i - 1];
            r.noalias() -= off * (inv_s[i - 1] * y[i - 1]);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(block);
        inv_s[i] = lu.inverse();
        y[i] = r;
    }
    std::vector<Eigen::VectorXd> sol(ni);
    sol[ni - 1] = inv_s[ni - 1] * y[ni - 1];
    for (std::size_t i = ni - 1; i-- > 0;) {
        Eigen::VectorXd r = y[i] - off * sol[i + 1];
        sol[i] = inv_s[i] * r;
    }
    std::vector<double> out(g.size());
    for (std::size_t j = 0; j < nt; ++j) {
        out[g.index(0, j)] = p.boundary_inner[j];
        out[g.index(nu - 1, j)] = p.boundary_outer[j];
    }
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < nt; ++j) out[g.index(i + 1, j)] = sol[i](j);
    return out;
}

}  // namespace detail

// Direct solve of the discrete (D - 2) u = f; the -2 shift keeps the system
// strictly diagonally dominant.  Residual is verified against the assembled
// operator before returning.
inline std::vector<double> solve_helmholtz(const HelmholtzProblem& problem) {
    problem.validate();
    std::vector<double> u = detail::metric_is_radial(problem.metric)
                                ? detail::solve_radial_modes(problem)
                                : detail::solve_block_rows(problem);

    const LogPolarGrid& g = problem.metric.grid;
    std::vector<double> du = apply_laplace_beltrami(problem.metric, u);
    double resid = 0.0, scale = 1.0;
    for (std::size_t i = 1; i + 1 < g.n_u; ++i)
        for (std::size_t j = 0; j < g.n_theta; ++j) {
            double r = du[(i - 1) * g.n_theta + j] - 2.0 * u[g.index(i, j)] -
                       problem.source[g.index(i, j)];
            resid = std::max(resid, std::abs(r));
            scale = std::max(scale, std::abs(problem.source[g.index(i, j)]));
        }
    if (resid > 1e-10 * scale * (1.0 / sq(g.h_u())))
        throw std::runtime_error("solve_helmholtz: direct solve failed the residual check");
    return u;
}

}  // namespace hypgraft

#endif
