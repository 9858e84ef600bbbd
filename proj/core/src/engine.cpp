#include "isspll/engine.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <random>

namespace isspll {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> make_edges(const SimConfig& cfg, std::size_t n, const Disturbances& d,
                               std::mt19937_64& rng, RunDiagnostics& diag) {
    std::vector<double> edges(n);
    const double ppm = d.ref_freq_step_ppm * 1e-6;
    double t = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double e = t;
        if (e >= d.ref_phase_step_time) {
            // positive reference phase step advances the clock: edges come earlier
            e -= d.ref_phase_step_rad / (kTwoPi * cfg.f_ref);
        }
        edges[k] = e;
        const double f = (t >= d.ref_freq_step_time) ? cfg.f_ref * (1.0 + ppm) : cfg.f_ref;
        t += 1.0 / f;
    }
    if (cfg.noise.enabled && cfg.noise.ref_jitter_rms > 0.0) {
        std::normal_distribution<double> gauss(0.0, cfg.noise.ref_jitter_rms);
        for (auto& e : edges) e += gauss(rng);
        for (std::size_t k = 1; k < n; ++k) {
            if (edges[k] <= edges[k - 1]) {
                edges[k] = std::nextafter(edges[k - 1], std::numeric_limits<double>::max());
                ++diag.edge_order_fixes;
            }
        }
    }
    return edges;
}

double checked_freq(int code, double v_c, const SimConfig& cfg, RunDiagnostics& diag) {
    const double raw = cfg.f_base(code) + cfg.k_vco * (v_c - cfg.v_ctr);
    if (raw <= kMinVcoFreq) ++diag.freq_clamps;
    return inst_freq(code, v_c, cfg);
}

}  // namespace

RunResult run_transient(const SimConfig& cfg) { return run_transient(cfg, RunOptions{}); }

RunResult run_transient(const SimConfig& cfg, const RunOptions& opts) {
    {
        const auto violations = validate(cfg);
        if (!violations.empty()) {
            std::string msg = "invalid config:";
            for (const auto& v : violations) msg += "\n  " + v;
            throw EngineError(msg);
        }
    }

    const auto n_cycles =
        static_cast<std::size_t>(std::floor(cfg.duration * cfg.f_ref));
    if (n_cycles == 0) throw EngineError("duration shorter than one reference period");

    RunResult res;
    std::mt19937_64 rng(cfg.seed);
    const auto edges = make_edges(cfg, n_cycles + 1, opts.disturb, rng, res.diag);

    res.fll = initial_fll_state(cfg);
    res.filter = FilterState{cfg.v_ctr, cfg.v_ctr};
    res.vco.t_last = edges[0];
    res.vco.coarse_code = res.fll.code;

    if (opts.warm_start) {
        res.fll.code = opts.warm_start->code;
        res.fll.engaged = false;
        res.filter = FilterState{opts.warm_start->v_c, opts.warm_start->v_c};
        res.vco.coarse_code = res.fll.code;
        const double f0 = inst_freq(res.fll.code, opts.warm_start->v_c, cfg);
        res.vco.phase = kPi - kPi * f0 * cfg.t_pul;  // falling edge at first window center
    }

    res.trace.reserve(n_cycles);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t k = 0; k < n_cycles; ++k) {
        const double t0 = edges[k];
        const double t1 = edges[k + 1];
        const double t_cycle = t1 - t0;
        const double phase_begin = res.vco.phase;

        CycleRecord rec;
        rec.cycle_index = static_cast<std::int64_t>(k);
        rec.t = t0;
        rec.fll_code = res.fll.code;
        rec.fll_engaged = res.fll.engaged;

        if (res.fll.engaged) {
            const double f = checked_freq(res.fll.code, cfg.v_ctr, cfg, res.diag);
            res.vco = advance(std::move(res.vco), t_cycle, f, cfg.noise, rng);
            res.fll.cycle_count += rising_edges_between(phase_begin, res.vco.phase);
            if (++res.fll.periods_elapsed == cfg.fll_window_n) {
                res.fll = fll_step(std::move(res.fll), res.fll.cycle_count, cfg);
                if (res.fll.clamped) ++res.diag.dac_rail_hits;
                res.fll.periods_elapsed = 0;
                res.fll.cycle_count = 0;
            }
            rec.v_c = cfg.v_ctr;
            rec.delta_v_pd = 0.0;
            rec.t_x_offset = nan;
        } else {
            const double f_win = checked_freq(res.fll.code, res.filter.v_cs, cfg, res.diag);
            if (f_win > 1e12) {
                throw EngineError("VCO frequency diverged (" + std::to_string(f_win) +
                                  " Hz) at cycle " + std::to_string(k));
            }

            PulseWindow window = window_for_edge(t0, cfg.t_pul);
            if (window.t_end > t1) {  // jittered next edge arrived inside the pulse
                window.t_end = t1;
                ++res.diag.window_truncations;
            }

            const auto transitions = transitions_in(res.vco, window, f_win);
            const int polarity = output_high(res.vco.phase) ? 1 : -1;
            const double dq = pd_integrate(window, transitions, polarity, cfg.i_chg,
                                           cfg.switch_tau, cfg.i_offset);

            res.vco = advance(std::move(res.vco), window.width(), f_win, cfg.noise, rng);
            res.filter = deposit(res.filter, dq, cfg.c_s);

            const double hold = t1 - window.t_end;
            const auto relaxed = relax(res.filter, hold, cfg);
            res.filter = relaxed.state;
            const double f_hold = checked_freq(res.fll.code, relaxed.mean_v_cs, cfg, res.diag);
            res.vco = advance(std::move(res.vco), hold, f_hold, cfg.noise, rng);

            // bookkeeping only; the FLL never acts again after disengaging
            res.fll.cycle_count += rising_edges_between(phase_begin, res.vco.phase);
            if (++res.fll.periods_elapsed == cfg.fll_window_n) {
                res.fll.periods_elapsed = 0;
                res.fll.cycle_count = 0;
            }

            rec.v_c = res.filter.v_cs;
            rec.delta_v_pd = dq / cfg.c_s;
            rec.t_x_offset = transitions.empty() ? nan : transitions.front().t - window.t_start;
        }

        rec.f_inst = (res.vco.phase - phase_begin) / (kTwoPi * t_cycle);
        res.vco.coarse_code = res.fll.code;
        res.vco.v_c = rec.v_c;

        if (!std::isfinite(res.filter.v_cs) || !std::isfinite(res.filter.v_c1) ||
            !std::isfinite(res.vco.phase)) {
            throw EngineError("non-finite loop state at cycle " + std::to_string(k));
        }
        res.trace.push_back(rec);
    }

    res.lock = detect_lock(res.trace, cfg.f_target(), cfg.lock_tol_ppm, cfg.lock_window);
    return res;
}

LockReport detect_lock(std::span<const CycleRecord> trace, double f_target, double tol_ppm,
                       int window_cycles) {
    assert(window_cycles >= 2);
    LockReport rep;
    if (trace.empty()) return rep;

    const double tol = tol_ppm * 1e-6 * f_target;
    int run = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& r = trace[i];
        const bool ok = !r.fll_engaged && std::abs(r.f_inst - f_target) <= tol;
        run = ok ? run + 1 : 0;
        if (run == window_cycles) {
            rep.locked = true;
            rep.lock_time = trace[i + 1 - static_cast<std::size_t>(window_cycles)].t;
            break;
        }
    }

    const std::size_t tail =
        std::min(trace.size(), static_cast<std::size_t>(window_cycles));
    double f_sum = 0.0, dv_sum = 0.0;
    for (std::size_t i = trace.size() - tail; i < trace.size(); ++i) {
        f_sum += trace[i].f_inst;
        dv_sum += std::abs(trace[i].delta_v_pd);
    }
    rep.f_error_ppm =
        std::abs(f_sum / static_cast<double>(tail) - f_target) / f_target * 1e6;
    rep.residual_dv = dv_sum / static_cast<double>(tail);
    return rep;
}

std::vector<double> synthesize_phase_samples(std::span<const CycleRecord> trace,
                                             const SimConfig& cfg, double fs,
                                             const RippleInjection& ripple) {
    const double f_target = cfg.f_target();
    if (fs < 4.0 * f_target) {
        throw std::invalid_argument("sample rate " + std::to_string(fs) +
                                    " Hz below 4*f_target = " +
                                    std::to_string(4.0 * f_target) + " Hz");
    }
    if (trace.size() < 2) {
        throw std::invalid_argument("trace too short to synthesize phase (need >= 2 cycles)");
    }

    const double t0 = trace.front().t;
    const double t_end = trace.back().t;  // last record's span is unknown; stop at its edge
    const auto n_samples = static_cast<std::size_t>(std::floor((t_end - t0) * fs)) + 1;

    std::vector<double> phi(n_samples);
    std::size_t cycle = 0;
    double phi_cycle = 0.0;  // excess phase at trace[cycle].t
    const bool with_ripple = ripple.amp_v != 0.0 && ripple.freq_hz > 0.0;
    const double ripple_gain = with_ripple ? cfg.k_vco * ripple.amp_v / ripple.freq_hz : 0.0;

    for (std::size_t j = 0; j < n_samples; ++j) {
        const double t = t0 + static_cast<double>(j) / fs;
        while (cycle + 1 < trace.size() && trace[cycle + 1].t <= t) {
            phi_cycle += kTwoPi * (trace[cycle].f_inst - f_target) *
                         (trace[cycle + 1].t - trace[cycle].t);
            ++cycle;
        }
        double v = phi_cycle +
                   kTwoPi * (trace[cycle].f_inst - f_target) * (t - trace[cycle].t);
        if (with_ripple) {
            // exact integral of k_vco * amp * sin(2*pi*f_r*(t - t0))
            v += ripple_gain * (1.0 - std::cos(kTwoPi * ripple.freq_hz * (t - t0)));
        }
        phi[j] = v;
    }
    return phi;
}

}  // namespace isspll
