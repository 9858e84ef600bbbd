#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isspll {

/// Noise sources of one simulation run. All densities are one-sided.
struct NoiseSpec {
    double ref_jitter_rms = 0.0;      ///< s rms, independent white jitter per reference edge
    double vco_white_fm = 0.0;        ///< Hz^2/Hz, white frequency-noise density of the VCO
    double vco_flicker_corner = 0.0;  ///< Hz, 1/f corner of the FM noise; 0 disables flicker
    bool enabled = false;
};

/// Every physical and loop parameter of one ISSPLL instance plus run controls.
/// All quantities are SI doubles: seconds, hertz, volts, amperes, farads, ohms.
struct SimConfig {
    // [loop]  phase detector and loop filter
    double f_ref = 25e6;     ///< reference frequency, Hz
    int mult_m = 10;         ///< frequency multiplication factor (f_target = mult_m * f_ref)
    double t_pul = 1.8e-9;   ///< sampling pulse width, s
    double i_chg = 10e-6;    ///< net capacitor charging current during the pulse, A
    double i_bias = 10e-6;   ///< detector bias current, A (i_chg defaults to this)
    double i_offset = 0.0;   ///< constant asymmetry current during the window, A (0 = symmetric)
    double switch_tau = 0.0; ///< current-switch smoothing time constant, s (0 = hard switching)
    double c_s = 1e-12;      ///< integration capacitor, F (the control node)
    double r1 = 30e3;        ///< loop-filter series resistance, ohm
    double c1 = 15e-12;      ///< loop-filter series capacitance, F

    // [vco]
    double k_vco = 175e6;     ///< fine-tune gain, Hz/V
    double v_ctr = 0.6;       ///< control-voltage center, V
    double f_base_min = 80.4e6; ///< free-running frequency at DAC code 0 and v_c = v_ctr, Hz
    double f_base_step = 3.2e6; ///< frequency per DAC code, Hz
    int dac_bits = 6;         ///< coarse DAC width; codes in [0, 2^dac_bits - 1]

    // [fll]
    int fll_window_n = 2;     ///< reference periods per cycle count
    double fll_band_lo = 0.90;
    double fll_band_hi = 0.95;

    // [noise]
    NoiseSpec noise;

    // [run]
    double duration = 2e-3;   ///< s
    std::uint64_t seed = 1;
    double lock_tol_ppm = 10.0;
    int lock_window = 1000;   ///< consecutive cycles that must stay within tolerance

    double f_target() const { return static_cast<double>(mult_m) * f_ref; }
    double t_ref() const { return 1.0 / f_ref; }
    int dac_codes() const { return 1 << dac_bits; }
    int dac_max() const { return dac_codes() - 1; }
    /// Free-running frequency of a coarse code at v_c = v_ctr.
    double f_base(int code) const { return f_base_min + static_cast<double>(code) * f_base_step; }
};

/// Usable fine control range around v_ctr, V. Only used for reachability checks;
/// the control node itself is not clamped.
inline constexpr double kVSwing = 0.4;

/// Checks every config invariant and returns one message per violation
/// (empty = valid). Never throws; callers decide what to do.
std::vector<std::string> validate(const SimConfig& cfg);

/// One numeric config field, addressable by name for INI parsing and sweeps.
struct ConfigField {
    const char* section;
    const char* key;
    double (*get)(const SimConfig&);
    void (*set)(SimConfig&, double);
    bool integral;
};

const std::vector<ConfigField>& config_fields();
const ConfigField* find_field(const std::string& key);

}  // namespace isspll
