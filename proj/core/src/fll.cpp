#include "isspll/fll.hpp"

#include <cassert>
#include <cmath>

namespace isspll {

std::optional<std::pair<int, int>> try_thresholds(const SimConfig& cfg) {
    const double span = static_cast<double>(cfg.mult_m) * static_cast<double>(cfg.fll_window_n);
    const int lo = static_cast<int>(std::ceil(cfg.fll_band_lo * span));
    const int hi = static_cast<int>(std::floor(cfg.fll_band_hi * span));
    if (lo >= hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

int min_resolvable_window(const SimConfig& cfg) {
    SimConfig probe = cfg;
    for (int n = 1; n <= 1 << 20; ++n) {
        probe.fll_window_n = n;
        if (try_thresholds(probe)) return n;
    }
    return -1;
}

std::pair<int, int> thresholds(const SimConfig& cfg) {
    if (auto th = try_thresholds(cfg)) return *th;
    throw ConfigError("FLL count band (" + std::to_string(cfg.fll_band_lo) + ", " +
                      std::to_string(cfg.fll_band_hi) + ") unresolvable at fll_window_N = " +
                      std::to_string(cfg.fll_window_n) + "; minimum N is " +
                      std::to_string(min_resolvable_window(cfg)));
}

long long count_cycles(double f_vco, double f_ref, int n) {
    assert(f_vco > 0 && f_ref > 0);
    return static_cast<long long>(std::floor(static_cast<double>(n) * f_vco / f_ref));
}

FllState initial_fll_state(const SimConfig& cfg) {
    const auto [lo, hi] = thresholds(cfg);
    FllState s;
    s.code = cfg.dac_max();
    s.engaged = true;
    s.count_lo = lo;
    s.count_hi = hi;
    return s;
}

FllState fll_step(FllState s, long long count, const SimConfig& cfg) {
    assert(s.engaged);
    s.clamped = false;
    if (count < s.count_lo) {
        if (s.code < cfg.dac_max()) {
            ++s.code;
        } else {
            s.clamped = true;
        }
    } else if (count > s.count_hi) {
        if (s.code > 0) {
            --s.code;
        } else {
            s.clamped = true;
        }
    } else {
        s.engaged = false;  // dead zone: code frozen for the rest of the run
    }
    return s;
}

}  // namespace isspll
