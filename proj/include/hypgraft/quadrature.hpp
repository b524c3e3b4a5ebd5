#ifndef HYPGRAFT_QUADRATURE_HPP
#define HYPGRAFT_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "hypgraft/common.hpp"

namespace hypgraft {
namespace quad {

// 16-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> gl16_x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> gl16_w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
auto panels(F&& f, double a, double b, std::size_t n) {
    using R = std::invoke_result_t<F, double>;
    R total{};
    double h = (b - a) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double mid = a + (static_cast<double>(k) + 0.5) * h;
        R local{};
        for (std::size_t j = 0; j < 8; ++j) {
            double dx = 0.5 * h * gl16_x[j];
            local += gl16_w[j] * (f(mid + dx) + f(mid - dx));
        }
        total += 0.5 * h * local;
    }
    return total;
}

// Panel-doubling Gauss quadrature; relative tolerance against the refined
// value, absolute floor for integrals near zero.
template <typename F>
auto adaptive(F&& f, double a, double b, double tol, std::size_t initial = 4,
              std::size_t max_doublings = 12) {
    if (!(b > a)) throw std::invalid_argument("quad::adaptive: empty interval");
    auto coarse = panels(f, a, b, initial);
    std::size_t n = initial;
    for (std::size_t k = 0; k < max_doublings; ++k) {
        n *= 2;
        auto fine = panels(f, a, b, n);
        double err = std::abs(fine - coarse);
        if (err <= tol * std::max(1.0, std::abs(fine))) return fine;
        coarse = fine;
    }
    throw std::runtime_error("quad::adaptive: failed to converge to requested tolerance");
}

// Tensor-product version on a rectangle, same doubling strategy.
template <typename F>
auto adaptive_2d(F&& f, double x0, double x1, double y0, double y1, double tol,
                 std::size_t initial = 2, std::size_t max_doublings = 8) {
    auto integrate = [&](std::size_t n) {
        return panels([&](double y) { return panels([&](double x) { return f(x, y); }, x0, x1, n); },
                      y0, y1, n);
    };
    auto coarse = integrate(initial);
    std::size_t n = initial;
    for (std::size_t k = 0; k < max_doublings; ++k) {
        n *= 2;
        auto fine = integrate(n);
        if (std::abs(fine - coarse) <= tol * std::max(1.0, std::abs(fine))) return fine;
        coarse = fine;
    }
    throw std::runtime_error("quad::adaptive_2d: failed to converge to requested tolerance");
}

}  // namespace quad
}  // namespace hypgraft

#endif
