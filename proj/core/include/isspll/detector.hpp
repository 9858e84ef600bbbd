#pragma once

#include <span>

#include "isspll/config.hpp"
#include "isspll/oscillator.hpp"
#include "isspll/stimulus.hpp"

namespace isspll {

/// Voltages on the merged PD / loop-filter network. v_cs is the control node.
struct FilterState {
    double v_cs = 0.0;  ///< V on C_S (= V_C, the fine control voltage)
    double v_c1 = 0.0;  ///< V on C1 behind R1
};

/// Outcome of one pulse window.
struct PdResult {
    double delta_q = 0.0;     ///< C, net charge into the control node
    double delta_v = 0.0;     ///< V, resulting v_cs change (delta_q / c_s)
    double t_x_offset = 0.0;  ///< s, first transition offset from window start; NaN if none
};

/// Integrates the polarity-switched detector current over one pulse window:
/// -i_chg while the differential VCO output is low (pre-rise), +i_chg while
/// high, the sign flipping at each transition. switch_tau > 0 smooths each
/// flip with a first-order settling of that time constant (integrated in
/// closed form); i_offset adds a constant asymmetry current over the window.
/// Transitions must be sorted and inside the window; polarity_at_start is the
/// output sign (+1 high / -1 low) at window start.
double pd_integrate(const PulseWindow& window, std::span<const Transition> transitions,
                    int polarity_at_start, double i_chg, double switch_tau = 0.0,
                    double i_offset = 0.0);

/// Closed-form single-rise characteristic: dV(dt) = (i_chg/c_s)*(t_pul - 2*dt)
/// for dt in [0, t_pul], clamped to +-(i_chg/c_s)*t_pul outside.
double pd_characteristic(double delta_t, const SimConfig& cfg);

/// |d dV / d dt| in the linear region = 2*i_chg/c_s, V/s.
double pd_gain(const SimConfig& cfg);

struct RelaxResult {
    FilterState state;
    double mean_v_cs = 0.0;  ///< time-average of v_cs over the hold interval
};

/// Impulsive charge deposit on C_S.
FilterState deposit(FilterState state, double delta_q, double c_s);

/// Exact exponential charge exchange between C_S and C1 through R1 over
/// hold_time, conserving total charge c_s*v_cs + c1*v_c1. Time constant
/// tau = r1*c_s*c1/(c_s+c1). Also returns the exact time-average of v_cs,
/// which the engine uses to advance the VCO phase without step error.
RelaxResult relax(FilterState state, double hold_time, const SimConfig& cfg);

/// deposit followed by relax.
FilterState filter_apply(FilterState state, double delta_q, double hold_time,
                         const SimConfig& cfg);

}  // namespace isspll
