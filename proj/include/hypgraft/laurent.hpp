#ifndef HYPGRAFT_LAURENT_HPP
#define HYPGRAFT_LAURENT_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hypgraft/common.hpp"

namespace hypgraft {

struct LaurentModes {
    complexd constant;             // mean over the circle
    std::vector<complexd> modes;   // index k holds frequency k - n/2
    int mode_offset = 0;           // frequency of modes[0]

    complexd mode(int frequency) const {
        int idx = frequency - mode_offset;
        if (idx < 0 || idx >= static_cast<int>(modes.size()))
            throw std::out_of_range("LaurentModes: frequency outside resolved band");
        return modes[static_cast<std::size_t>(idx)];
    }
};

// Constant Laurent coefficient of a function sampled uniformly on a circle,
// with the full resolved mode vector.  Sample counts must be a power of two
// of at least 32, and the top quarter of the spectrum must be empty, else
// the mean is aliased.
inline LaurentModes laurent_constant_coefficient(const std::vector<complexd>& samples,
                                                 double alias_tol = 1e-10) {
    std::size_t n = samples.size();
    if (n < 32 || (n & (n - 1)) != 0)
        throw std::invalid_argument(
            "laurent_constant_coefficient: sample count must be a power of two >= 32");

    LaurentModes out;
    out.mode_offset = -static_cast<int>(n) / 2;
    out.modes.resize(n);
    double total_energy = 0.0, top_energy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        int freq = static_cast<int>(k) + out.mode_offset;
        complexd acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double ang = -two_pi * static_cast<double>(freq) * static_cast<double>(j) /
                         static_cast<double>(n);
            acc += samples[j] * complexd(std::cos(ang), std::sin(ang));
        }
        acc /= static_cast<double>(n);
        out.modes[k] = acc;
        double e = std::norm(acc);
        total_energy += e;
        if (std::abs(freq) >= static_cast<int>(n) / 4) top_energy += e;
    }
    if (total_energy > 0.0 && top_energy > alias_tol * total_energy)
        throw std::runtime_error(
            "laurent_constant_coefficient: top-quarter modes carry energy, samples are aliased");
    out.constant = out.modes[static_cast<std::size_t>(-out.mode_offset)];
    return out;
}

}  // namespace hypgraft

#endif
