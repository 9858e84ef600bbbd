#include "isspll/detector.hpp"

#include <cassert>
#include <cmath>

namespace isspll {

namespace {

/// Charge of one constant-polarity segment with first-order current settling.
/// i_now settles toward i_tgt with time constant tau; returns the segment
/// charge and leaves i_now at the segment end value.
double segment_charge(double& i_now, double i_tgt, double len, double tau) {
    if (len <= 0.0) return 0.0;
    if (tau <= 0.0) {
        i_now = i_tgt;
        return i_tgt * len;
    }
    const double decay = std::exp(-len / tau);
    const double q = i_tgt * len + (i_now - i_tgt) * tau * (1.0 - decay);
    i_now = i_tgt + (i_now - i_tgt) * decay;
    return q;
}

}  // namespace

double pd_integrate(const PulseWindow& window, std::span<const Transition> transitions,
                    int polarity_at_start, double i_chg, double switch_tau,
                    double i_offset) {
    assert(polarity_at_start == 1 || polarity_at_start == -1);
    double polarity = static_cast<double>(polarity_at_start);
    double i_now = polarity * i_chg;  // settled before the window opens
    double q = 0.0;
    double t = window.t_start;
    for (const auto& x : transitions) {
        assert(x.t >= window.t_start && x.t <= window.t_end);
        q += segment_charge(i_now, polarity * i_chg, x.t - t, switch_tau);
        t = x.t;
        polarity = -polarity;
    }
    q += segment_charge(i_now, polarity * i_chg, window.t_end - t, switch_tau);
    return q + i_offset * window.width();
}

double pd_characteristic(double delta_t, const SimConfig& cfg) {
    const double full = (cfg.i_chg / cfg.c_s) * cfg.t_pul;
    if (delta_t <= 0.0) return full;
    if (delta_t >= cfg.t_pul) return -full;
    return (cfg.i_chg / cfg.c_s) * (cfg.t_pul - 2.0 * delta_t);
}

double pd_gain(const SimConfig& cfg) { return 2.0 * cfg.i_chg / cfg.c_s; }

FilterState deposit(FilterState state, double delta_q, double c_s) {
    state.v_cs += delta_q / c_s;
    return state;
}

RelaxResult relax(FilterState state, double hold_time, const SimConfig& cfg) {
    assert(hold_time >= 0.0);
    if (hold_time == 0.0) return {state, state.v_cs};

    const double c_sum = cfg.c_s + cfg.c1;
    const double v_eq = (cfg.c_s * state.v_cs + cfg.c1 * state.v_c1) / c_sum;
    const double d0 = state.v_cs - state.v_c1;
    const double tau = cfg.r1 * cfg.c_s * cfg.c1 / c_sum;
    const double decay = std::exp(-hold_time / tau);

    RelaxResult r;
    r.state.v_cs = v_eq + d0 * (cfg.c1 / c_sum) * decay;
    r.state.v_c1 = v_eq - d0 * (cfg.c_s / c_sum) * decay;
    r.mean_v_cs = v_eq + d0 * (cfg.c1 / c_sum) * (tau / hold_time) * (1.0 - decay);
    return r;
}

FilterState filter_apply(FilterState state, double delta_q, double hold_time,
                         const SimConfig& cfg) {
    return relax(deposit(state, delta_q, cfg.c_s), hold_time, cfg).state;
}

}  // namespace isspll
