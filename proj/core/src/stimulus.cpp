#include "isspll/stimulus.hpp"

#include <cassert>
#include <random>
#include <stdexcept>

namespace isspll {

std::vector<double> ref_edges(double f_ref, std::size_t n, double jitter_rms,
                              std::uint64_t seed) {
    assert(f_ref > 0 && n >= 1);
    std::vector<double> edges(n);
    const double t_ref = 1.0 / f_ref;
    if (jitter_rms <= 0.0) {
        for (std::size_t k = 0; k < n; ++k) edges[k] = static_cast<double>(k) * t_ref;
        return edges;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, jitter_rms);
    for (std::size_t k = 0; k < n; ++k) {
        edges[k] = static_cast<double>(k) * t_ref + gauss(rng);
    }
    return edges;
}

double width_from_code(int code) {
    if (code < 0 || code >= kPulseWidthCodes) {
        throw std::out_of_range("pulse width code " + std::to_string(code) +
                                " outside [0, " + std::to_string(kPulseWidthCodes - 1) + "]");
    }
    const double lo = 1e-9, hi = 5e-9;
    return lo + static_cast<double>(code) * (hi - lo) / (kPulseWidthCodes - 1);
}

PulseWindow window_for_edge(double edge_time, double width) {
    assert(width > 0);
    return {edge_time, edge_time + width};
}

}  // namespace isspll
