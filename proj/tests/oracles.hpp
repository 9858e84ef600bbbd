// Independent test oracles. These deliberately avoid the library's closed-form
// code paths: charge comes from a grid walk, transitions from a sign-change
// scan, the filter from RK4, the FM tone from trapezoidal integration.
#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "isspll/config.hpp"
#include "isspll/detector.hpp"
#include "isspll/oscillator.hpp"
#include "isspll/stimulus.hpp"

namespace oracles {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Brute-force charge integration on a fixed grid, splitting cells at the
/// listed transition times. Polarity at time t is the start polarity flipped
/// once per transition at or before t.
inline double pd_charge_grid(const isspll::PulseWindow& w,
                             std::span<const isspll::Transition> xs, int polarity_at_start,
                             double i_chg, double grid = 1e-12) {
    auto polarity_at = [&](double t) {
        int p = polarity_at_start;
        for (const auto& x : xs) {
            if (x.t <= t) p = -p;
        }
        return p;
    };
    double q = 0.0;
    double a = w.t_start;
    while (a < w.t_end) {
        double b = std::min(a + grid, w.t_end);
        // split the cell at any transition inside it
        double lo = a;
        for (const auto& x : xs) {
            if (x.t > lo && x.t < b) {
                q += polarity_at(0.5 * (lo + x.t)) * i_chg * (x.t - lo);
                lo = x.t;
            }
        }
        q += polarity_at(0.5 * (lo + b)) * i_chg * (b - lo);
        a = b;
    }
    return q;
}

/// Sign-change scan of sin(phase(t)) on a fixed grid; returns crossing times
/// refined by linear interpolation within the bracketing cell.
inline std::vector<double> transition_scan(double phase_at_start, double f,
                                           const isspll::PulseWindow& w,
                                           double grid = 1e-12) {
    std::vector<double> out;
    auto s = [&](double t) { return std::sin(phase_at_start + kTwoPi * f * (t - w.t_start)); };
    double t_prev = w.t_start;
    double s_prev = s(t_prev);
    for (double t = w.t_start + grid;; t += grid) {
        if (t > w.t_end) t = w.t_end;
        const double sv = s(t);
        if ((s_prev > 0.0) != (sv > 0.0)) {
            out.push_back(t_prev + grid * s_prev / (s_prev - sv));
        }
        if (t >= w.t_end) break;
        t_prev = t;
        s_prev = sv;
    }
    return out;
}

struct Rk4Result {
    isspll::FilterState state;
    double mean_v_cs = 0.0;
};

/// Fine-step RK4 of the R1/C_S/C1 relaxation ODE, plus the trapezoidal mean
/// of v_cs over the interval.
inline Rk4Result filter_relax_rk4(isspll::FilterState s, double hold,
                                  const isspll::SimConfig& cfg, int steps = 20000) {
    const double h = hold / steps;
    auto deriv = [&](const isspll::FilterState& x) {
        const double i = (x.v_cs - x.v_c1) / cfg.r1;
        return isspll::FilterState{-i / cfg.c_s, i / cfg.c1};
    };
    double mean = 0.0;
    for (int k = 0; k < steps; ++k) {
        mean += 0.5 * s.v_cs;
        const auto k1 = deriv(s);
        const auto k2 = deriv({s.v_cs + 0.5 * h * k1.v_cs, s.v_c1 + 0.5 * h * k1.v_c1});
        const auto k3 = deriv({s.v_cs + 0.5 * h * k2.v_cs, s.v_c1 + 0.5 * h * k2.v_c1});
        const auto k4 = deriv({s.v_cs + h * k3.v_cs, s.v_c1 + h * k3.v_c1});
        s.v_cs += h / 6.0 * (k1.v_cs + 2.0 * k2.v_cs + 2.0 * k3.v_cs + k4.v_cs);
        s.v_c1 += h / 6.0 * (k1.v_c1 + 2.0 * k2.v_c1 + 2.0 * k3.v_c1 + k4.v_c1);
        mean += 0.5 * s.v_cs;
    }
    return {s, mean / steps};
}

/// Numeric integral of 2*pi*k_vco*amp*sin(2*pi*f_r*t) from 0 to each t.
inline std::vector<double> fm_tone_phase(double k_vco, double amp, double f_r,
                                         std::span<const double> times, int substeps = 64) {
    std::vector<double> out(times.size());
    double acc = 0.0;
    double t_prev = 0.0;
    auto df = [&](double t) { return k_vco * amp * std::sin(kTwoPi * f_r * t); };
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double h = (times[i] - t_prev) / substeps;
        for (int k = 0; k < substeps; ++k) {
            acc += kTwoPi * 0.5 * (df(t_prev + k * h) + df(t_prev + (k + 1) * h)) * h;
        }
        t_prev = times[i];
        out[i] = acc;
    }
    return out;
}

}  // namespace oracles
