#pragma once

#include <cstdint>
#include <vector>

namespace isspll {

/// One sampling pulse window [t_start, t_start + width).
struct PulseWindow {
    double t_start = 0.0;  ///< s
    double t_end = 0.0;    ///< s
    double width() const { return t_end - t_start; }
    double center() const { return 0.5 * (t_start + t_end); }
};

/// Reference edge times: edge k at k/f_ref plus independent zero-mean Gaussian
/// perturbation of the given rms. Deterministic for a given seed.
std::vector<double> ref_edges(double f_ref, std::size_t n, double jitter_rms,
                              std::uint64_t seed);

/// Pulse-generator capacitor-bank setting, codes 0..15 spanning 1 ns to 5 ns
/// linearly. Throws std::out_of_range for codes outside [0, 15].
double width_from_code(int code);

inline constexpr int kPulseWidthCodes = 16;

PulseWindow window_for_edge(double edge_time, double width);

}  // namespace isspll
