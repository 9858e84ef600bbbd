#pragma once

#include <array>
#include <random>
#include <vector>

#include "isspll/config.hpp"
#include "isspll/stimulus.hpp"

namespace isspll {

/// 1/f frequency-noise shaping state: a bank of octave-spaced Ornstein-Uhlenbeck
/// sections whose sum approximates a 1/f density between the outermost poles.
struct FlickerBank {
    static constexpr int kStages = 24;
    static constexpr double kTopPoleHz = 10e6;
    std::array<double, kStages> y{};
    bool primed = false;
};

/// Behavioral 32-phase ring-oscillator VCO. Phase is the unwrapped phase of
/// tap 0; a rising transition of the differential output happens at phase
/// 0 mod 2pi, a falling one at pi mod 2pi.
struct VcoState {
    double phase = 0.0;   ///< rad, unwrapped, non-decreasing
    double t_last = 0.0;  ///< s
    int coarse_code = 0;
    double v_c = 0.0;     ///< last applied control voltage, V
    FlickerBank flicker;
};

inline constexpr int kVcoTaps = 32;
inline constexpr double kMinVcoFreq = 1.0;  ///< Hz, clamp floor of inst_freq

/// f = f_base_min + code*f_base_step + k_vco*(v_c - v_ctr), clamped to kMinVcoFreq.
double inst_freq(int coarse_code, double v_c, const SimConfig& cfg);

struct Transition {
    double t;     ///< s, absolute
    bool rising;  ///< rise of the tap-0 differential output
};

/// All tap-0 differential zero crossings in (t_start, t_end], solved from the
/// linear phase ramp at constant frequency f starting from state.{phase,t_last}.
std::vector<Transition> transitions_in(const VcoState& state, const PulseWindow& window,
                                       double f);

/// Advances phase by 2*pi*f*dt plus, when noise is enabled, a white-FM
/// increment of variance 2*pi^2*vco_white_fm*dt and a 1/f term shaped by the
/// flicker bank. dt = 0 returns the state unchanged.
VcoState advance(VcoState state, double dt, double f, const NoiseSpec& noise,
                 std::mt19937_64& rng);

/// 2*pi*k/32 for tap k; throws std::out_of_range outside [0, 32).
double tap_phase_offset(int k);

/// True while the tap-0 differential output is in its post-rise (high) state.
bool output_high(double phase);

/// Rising edges with phase0 < phase(edge) <= phase1.
long long rising_edges_between(double phase0, double phase1);

}  // namespace isspll
