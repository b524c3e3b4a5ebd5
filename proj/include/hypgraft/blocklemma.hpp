#ifndef HYPGRAFT_BLOCKLEMMA_HPP
#define HYPGRAFT_BLOCKLEMMA_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hypgraft/common.hpp"
#include "hypgraft/ratefit.hpp"

namespace hypgraft {

// Symmetric (n+m) x (n+m) matrix with large diagonal entries lambda_k in
// the first n slots, bounded couplings in the first n columns, and a fixed
// symmetric block B in the lower-right corner.
struct BlockMatrixSpec {
    std::vector<double> lambda;  // n entries, all positive
    Eigen::MatrixXd coupling;    // (n+m) x n; only entries with row != col used
    Eigen::MatrixXd B;           // m x m symmetric

    std::size_t n() const { return lambda.size(); }
    std::size_t m() const { return static_cast<std::size_t>(B.rows()); }

    void validate() const {
        std::size_t nn = n(), mm = m();
        if (B.rows() != B.cols()) throw std::invalid_argument("BlockMatrixSpec: B must be square");
        if (!B.isApprox(B.transpose(), 1e-12))
            throw std::invalid_argument("BlockMatrixSpec: B must be symmetric");
        if (coupling.rows() != static_cast<Eigen::Index>(nn + mm) ||
            coupling.cols() != static_cast<Eigen::Index>(nn))
            throw std::invalid_argument("BlockMatrixSpec: coupling must be (n+m) x n");
        for (double l : lambda)
            if (!(l > 0.0)) throw std::invalid_argument("BlockMatrixSpec: lambda entries must be positive");
        if (std::abs(B.determinant()) < 1e-12)
            throw std::invalid_argument("BlockMatrixSpec: det B must be nonzero");
    }

    Eigen::MatrixXd assemble(double scale) const {
        std::size_t nn = n(), mm = m(), total = nn + mm;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(total, total);
        for (std::size_t k = 0; k < nn; ++k) A(k, k) = scale * lambda[k];
        for (std::size_t j = 0; j < total; ++j)
            for (std::size_t l = 0; l < nn; ++l) {
                if (j == l) continue;
                A(j, l) = coupling(j, l);
                A(l, j) = coupling(j, l);
            }
        A.bottomRightCorner(mm, mm) = B;
        return A;
    }
};

struct BlockAsymptoticsResult {
    RateFit det_fit;        // |det A / (det B prod lambda) - 1| vs rho
    RateFit diag_fit;       // max_k |alpha_kk lambda_k - 1| vs rho
    RateFit corner_fit;     // max_jl |alpha_{n+j, n+l} - (B^{-1})_{jl}| vs rho
    std::vector<double> offdiag_nn;  // max |alpha_jl lambda_j lambda_l|, j != l <= n
    std::vector<double> offdiag_nm;  // max |alpha_jl lambda_j|, j <= n < l
};

// Check the determinant and inverse asymptotics as the lambda block grows:
// the spec matrix is evaluated at each scale in the ladder and the
// deviations are fitted against rho = sum 1/lambda_k.
inline BlockAsymptoticsResult block_asymptotics_check(const BlockMatrixSpec& spec,
                                                      const std::vector<double>& scales) {
    spec.validate();
    if (scales.size() < 3)
        throw std::invalid_argument("block_asymptotics_check: need at least 3 ladder points");
    std::size_t nn = spec.n(), mm = spec.m();
    Eigen::MatrixXd Binv = spec.B.inverse();
    double detB = spec.B.determinant();

    BlockAsymptoticsResult out;
    std::vector<std::pair<double, double>> det_s, diag_s, corner_s;
    for (double s : scales) {
        Eigen::MatrixXd A = spec.assemble(s);
        double rho = 0.0, prod = 1.0;
        for (std::size_t k = 0; k < nn; ++k) {
            rho += 1.0 / (s * spec.lambda[k]);
            prod *= s * spec.lambda[k];
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        double det = lu.determinant();
        Eigen::MatrixXd inv = lu.inverse();

        det_s.emplace_back(rho, std::abs(det / (detB * prod) - 1.0));
        double diag_dev = 0.0;
        for (std::size_t k = 0; k < nn; ++k)
            diag_dev = std::max(diag_dev, std::abs(inv(k, k) * s * spec.lambda[k] - 1.0));
        diag_s.emplace_back(rho, diag_dev);
        double corner_dev = 0.0;
        for (std::size_t j = 0; j < mm; ++j)
            for (std::size_t l = 0; l < mm; ++l)
                corner_dev = std::max(corner_dev, std::abs(inv(nn + j, nn + l) - Binv(j, l)));
        corner_s.emplace_back(rho, corner_dev);

        double off_nn = 0.0, off_nm = 0.0;
        for (std::size_t j = 0; j < nn; ++j) {
            for (std::size_t l = 0; l < nn; ++l)
                if (j != l)
                    off_nn = std::max(off_nn,
                                      std::abs(inv(j, l)) * s * spec.lambda[j] * s * spec.lambda[l]);
            for (std::size_t l = nn; l < nn + mm; ++l)
                off_nm = std::max(off_nm, std::abs(inv(j, l)) * s * spec.lambda[j]);
        }
        out.offdiag_nn.push_back(off_nn);
        out.offdiag_nm.push_back(off_nm);
    }
    out.det_fit = fit_rate(det_s);
    out.diag_fit = fit_rate(diag_s);
    out.corner_fit = fit_rate(corner_s);
    return out;
}

// Residual of the first-order inverse perturbation
//   (A + eps B)^{-1} = A^{-1} - eps A^{-1} B A^{-1} + O(eps^2)
// fitted against eps in the spectral norm.
inline RateFit perturbed_inverse_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       const std::vector<double>& eps_ladder) {
    if (A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols())
        throw std::invalid_argument("perturbed_inverse_check: dimension mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (std::abs(lu.determinant()) < 1e-12)
        throw std::invalid_argument("perturbed_inverse_check: A must be invertible");
    Eigen::MatrixXd Ainv = lu.inverse();
    Eigen::MatrixXd first = Ainv * B * Ainv;
    std::vector<std::pair<double, double>> samples;
    for (double eps : eps_ladder) {
        Eigen::MatrixXd resid = (A + eps * B).inverse() - Ainv + eps * first;
        samples.emplace_back(eps, resid.norm());
    }
    return fit_rate(samples);
}

}  // namespace hypgraft

#endif
