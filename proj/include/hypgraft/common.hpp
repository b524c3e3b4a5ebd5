#ifndef HYPGRAFT_COMMON_HPP
#define HYPGRAFT_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hypgraft {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

inline double sq(double x) { return x * x; }

inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const complexd& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Run f(i) for i in [0, n).  Work is split into contiguous chunks so results
// written to prealloced slots are independent of the thread count.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    unsigned nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned k = 0; k < nt; ++k) {
        std::size_t lo = k * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hypgraft

#endif
