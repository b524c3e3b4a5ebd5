#ifndef HYPGRAFT_WPMETRIC_HPP
#define HYPGRAFT_WPMETRIC_HPP

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hypgraft/collar.hpp"
#include "hypgraft/common.hpp"
#include "hypgraft/ratefit.hpp"

namespace hypgraft {

// ----------------------------------------------------------------------
// Leading term of the metric on the plumbing direction.  The unscaled
// dual differential eta* has squared norm given by the collar integral,
// the remaining directions contribute an O(1) Hermitian block, and the
// metric on d/dt comes out of the conjugate inverse of the Gram matrix
// after the eta = -(t/pi) eta* rescaling:
//   g(d/dt, d/dt) = (pi^2/|t|^2) (Gram^{-1})_{tt}
//                 = pi^3 / (|t|^2 (-log|t|)^3) (1 + o(1)).
// ----------------------------------------------------------------------

struct WpLeadingPoint {
    double neg_log_t = 0.0;
    double sigma = 0.0;            // (log|t|)^{-2}
    double g_tt = 0.0;             // assembled metric value
    double normalized_ratio = 0.0; // g_tt |t|^2 (-log|t|)^3 / pi^3
    bool gram_positive = false;
};

struct WpLeadingResult {
    std::vector<WpLeadingPoint> points;
    RateFit deviation_fit;  // |ratio - 1| vs sigma
};

namespace detail {

// Fixed synthetic Hermitian data for the non-degenerating directions.
inline void synthetic_block(std::mt19937& rng, std::size_t m, std::size_t n,
                            Eigen::MatrixXcd& full_template) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t total = n + m;
    Eigen::MatrixXcd C(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) C(i, j) = complexd(u(rng), u(rng));
    full_template = Eigen::MatrixXcd::Zero(total, total);
    full_template.bottomRightCorner(m, m) =
        C * C.adjoint() + 2.0 * Eigen::MatrixXcd::Identity(m, m);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < total; ++j) {
            if (j == k) continue;
            complexd v(u(rng), u(rng));
            full_template(j, k) = v;
            full_template(k, j) = std::conj(v);
        }
}

}  // namespace detail

inline WpLeadingResult wp_leading_term(const std::vector<complexd>& t_ladder, double c_star,
                                       std::size_t m_extra = 3, unsigned seed = 12345) {
    if (t_ladder.size() < 3)
        throw std::invalid_argument("wp_leading_term: need at least 3 ladder points");
    std::mt19937 rng(seed);
    Eigen::MatrixXcd base;
    detail::synthetic_block(rng, m_extra, 1, base);

    WpLeadingResult out;
    std::vector<std::pair<double, double>> dev;
    for (const complexd& t : t_ladder) {
        double ell = -std::log(std::abs(t));
        CollarIntegral collar = collar_norm_integral({t, c_star, 0});
        Eigen::MatrixXcd gram = base;
        gram(0, 0) = collar.value;

        Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
        bool positive = ldlt.info() == Eigen::Success && ldlt.isPositive();
        Eigen::MatrixXcd inv = gram.inverse();

        WpLeadingPoint p;
        p.neg_log_t = ell;
        p.sigma = 1.0 / (ell * ell);
        p.g_tt = (pi * pi / std::norm(t)) * inv(0, 0).real();
        p.normalized_ratio = p.g_tt * std::norm(t) * ell * ell * ell / (pi * pi * pi);
        p.gram_positive = positive;
        out.points.push_back(p);
        dev.emplace_back(p.sigma, std::abs(p.normalized_ratio - 1.0));
    }
    out.deviation_fit = fit_rate(dev);
    return out;
}

// Off-diagonal decay for a two-node Gram with O(1) synthetic couplings:
// |g(d/dt_1, d/dt_2)| |t_1 t_2| (-log|t_1|)^3 (-log|t_2|)^3 stays bounded.
inline std::vector<double> wp_offdiagonal_normalized(const std::vector<complexd>& t1_ladder,
                                                     const std::vector<complexd>& t2_ladder,
                                                     double c_star, unsigned seed = 12345) {
    if (t1_ladder.size() != t2_ladder.size())
        throw std::invalid_argument("wp_offdiagonal_normalized: ladders must align");
    std::mt19937 rng(seed);
    Eigen::MatrixXcd base;
    detail::synthetic_block(rng, 2, 2, base);

    std::vector<double> normalized;
    for (std::size_t i = 0; i < t1_ladder.size(); ++i) {
        const complexd t1 = t1_ladder[i], t2 = t2_ladder[i];
        double l1 = -std::log(std::abs(t1)), l2 = -std::log(std::abs(t2));
        Eigen::MatrixXcd gram = base;
        gram(0, 0) = collar_norm_integral({t1, c_star, 0}).value;
        gram(1, 1) = collar_norm_integral({t2, c_star, 0}).value;
        Eigen::MatrixXcd inv = gram.inverse();
        complexd g12 = (pi * pi / (t1 * std::conj(t2))) * inv(0, 1);
        normalized.push_back(std::abs(g12) * std::abs(t1 * t2) * l1 * l1 * l1 * l2 * l2 * l2);
    }
    return normalized;
}

// Algebraic normal-form identity: the model metric
//   pi^3 |t|^{-2} (-log|t|)^{-3} |dt|^2
// pulled through r = (-log|t|)^{-1/2}, theta = arg t equals
//   pi^3 (4 dr^2 + r^6 dtheta^2)
// exactly; returns the worst coefficient deviation over the sample radii.
inline double wp_normal_form_deviation(const std::vector<double>& r_samples) {
    double worst = 0.0;
    for (double r : r_samples) {
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("wp_normal_form_deviation: need 0 < r < 1");
        double neg_log_t = 1.0 / (r * r);
        // |dt|^2 = |t|^2 ((d log|t|)^2 + dtheta^2) with d log|t| = 2 r^{-3} dr;
        // the |t|^2 factors cancel against the model density.
        double model_times_t2 = pi * pi * pi / (neg_log_t * neg_log_t * neg_log_t);
        double dlog_dr = 2.0 / (r * r * r);
        double coeff_dr = model_times_t2 * dlog_dr * dlog_dr;
        double coeff_dth = model_times_t2;
        double target_dr = 4.0 * pi * pi * pi;
        double target_dth = pi * pi * pi * std::pow(r, 6);
        worst = std::max(worst, std::abs(coeff_dr / target_dr - 1.0));
        worst = std::max(worst, std::abs(coeff_dth / target_dth - 1.0));
    }
    return worst;
}

}  // namespace hypgraft

#endif
