#include "isspll/oscillator.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isspll {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double inst_freq(int coarse_code, double v_c, const SimConfig& cfg) {
    const double f = cfg.f_base(coarse_code) + cfg.k_vco * (v_c - cfg.v_ctr);
    return f > kMinVcoFreq ? f : kMinVcoFreq;
}

std::vector<Transition> transitions_in(const VcoState& state, const PulseWindow& window,
                                       double f) {
    std::vector<Transition> out;
    if (f <= 0.0 || window.width() <= 0.0) return out;

    const double phi_start = state.phase + kTwoPi * f * (window.t_start - state.t_last);
    const double dphi = kTwoPi * f * window.width();

    // crossings of phase = m*pi strictly after the window start
    const long long m_first = static_cast<long long>(std::floor(phi_start / kPi)) + 1;
    const long long m_last = static_cast<long long>(std::floor((phi_start + dphi) / kPi));
    for (long long m = m_first; m <= m_last; ++m) {
        const double t = window.t_start + (static_cast<double>(m) * kPi - phi_start) / (kTwoPi * f);
        out.push_back({t, (m % 2 + 2) % 2 == 0});
    }
    return out;
}

namespace {

/// Per-stage stationary variance realizing S_flicker(f) = white_fm*corner/f.
/// Octave-spaced Lorentzians of equal variance v sum to S(f) = v/(f*ln2)
/// between the outermost poles, so v = white_fm*corner*ln2.
double flicker_stage_variance(const NoiseSpec& n) {
    return n.vco_white_fm * n.vco_flicker_corner * std::numbers::ln2_v<double>;
}

double flicker_sample(FlickerBank& bank, const NoiseSpec& noise, double dt,
                      std::mt19937_64& rng) {
    const double var = flicker_stage_variance(noise);
    if (var <= 0.0) return 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sd = std::sqrt(var);
    if (!bank.primed) {
        for (auto& y : bank.y) y = sd * gauss(rng);
        bank.primed = true;
    }
    double sum = 0.0;
    double pole = FlickerBank::kTopPoleHz;
    for (auto& y : bank.y) {
        const double a = std::exp(-kTwoPi * pole * dt);
        y = a * y + sd * std::sqrt(1.0 - a * a) * gauss(rng);
        sum += y;
        pole *= 0.5;
    }
    return sum;
}

}  // namespace

VcoState advance(VcoState state, double dt, double f, const NoiseSpec& noise,
                 std::mt19937_64& rng) {
    assert(dt >= 0.0);
    if (dt == 0.0) return state;

    double dphi = kTwoPi * f * dt;
    if (noise.enabled) {
        if (noise.vco_white_fm > 0.0) {
            std::normal_distribution<double> gauss(
                0.0, std::sqrt(2.0 * kPi * kPi * noise.vco_white_fm * dt));
            dphi += gauss(rng);
        }
        if (noise.vco_flicker_corner > 0.0) {
            dphi += kTwoPi * dt * flicker_sample(state.flicker, noise, dt, rng);
        }
    }
    state.phase += dphi;
    state.t_last += dt;
    return state;
}

double tap_phase_offset(int k) {
    if (k < 0 || k >= kVcoTaps) {
        throw std::out_of_range("VCO tap " + std::to_string(k) + " outside [0, " +
                                std::to_string(kVcoTaps) + ")");
    }
    return kTwoPi * static_cast<double>(k) / kVcoTaps;
}

bool output_high(double phase) {
    const double frac = phase / kTwoPi - std::floor(phase / kTwoPi);
    return frac < 0.5;
}

long long rising_edges_between(double phase0, double phase1) {
    return static_cast<long long>(std::floor(phase1 / kTwoPi)) -
           static_cast<long long>(std::floor(phase0 / kTwoPi));
}

}  // namespace isspll
