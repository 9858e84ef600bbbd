#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "isspll/config.hpp"

namespace isspll {

/// Rational function of s with ascending real coefficients.
struct RationalFn {
    std::vector<double> num;
    std::vector<double> den;
    std::complex<double> eval(std::complex<double> s) const;
};

/// Continuous-time small-signal model of the locked loop.
/// open_loop G(s) = k_pd_i * z_filter(s) * k_vco_rad / s.
struct LoopModel {
    double k_pd_i = 0.0;      ///< A/rad, average detector current per VCO phase error
    RationalFn z_filter;      ///< ohm, transimpedance of the merged C_S / R1 / C1 network
    double k_vco_rad = 0.0;   ///< rad/s per V
    double mult_m = 0.0;
    double f_ref = 0.0;

    std::complex<double> open_loop(double f_hz) const;
};

/// k_pd_i = 2*i_chg*f_ref/(2*pi*f_out); z(s) = (1 + s r1 c1) /
/// (s (c_s+c1) (1 + s r1 c_p)), c_p = c_s c1/(c_s+c1).
LoopModel build_loop_model(const SimConfig& cfg);

struct StabilityReport {
    bool crossing_found = false;
    double unity_gain_bw_hz = 0.0;
    double phase_margin_deg = 0.0;
    bool stable = false;
};

/// Unity-gain crossing of |G| located on [1 Hz, f_ref/2] by bisection;
/// margin = 180 deg + arg G there. crossing_found=false means indeterminate.
StabilityReport stability(const LoopModel& model);

enum class NoiseSource { reference, vco };

/// Reference NTF = M*G/(1+G); VCO NTF = 1/(1+G).
std::complex<double> noise_transfer(const LoopModel& model, NoiseSource source, double f_hz);

/// Magnitude of the above in dB, floored at -200 dB.
double noise_transfer_db(const LoopModel& model, NoiseSource source, double f_hz);

/// All roots of a real-coefficient polynomial (ascending), Durand-Kerner.
std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs);

/// Closed-loop poles of the model (roots of s*D_z + k_pd*k_vco_rad*N_z).
std::vector<std::complex<double>> closed_loop_poles(const LoopModel& model);

/// Control-voltage response to a reference phase step of phase_step_rad
/// applied at t = 0, evaluated at the given times (relative to the step).
std::vector<double> control_step_response(const LoopModel& model, double phase_step_rad,
                                          std::span<const double> times);

/// 1/min|Re(p)| over the closed-loop poles.
double slowest_time_constant(const LoopModel& model);

/// key=value lines: k_pd_i_A_per_rad, ugb_hz, pm_deg, zero_hz.
std::string design_report(const SimConfig& cfg);

}  // namespace isspll
