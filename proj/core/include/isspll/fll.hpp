#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "isspll/config.hpp"

namespace isspll {

/// Coarse frequency-locked loop: counts VCO cycles over fll_window_N reference
/// periods, steps the DAC code toward the dead zone, disengages once inside it.
struct FllState {
    int code = 0;
    bool engaged = true;
    int count_lo = 0;
    int count_hi = 0;
    int periods_elapsed = 0;
    long long cycle_count = 0;
    bool clamped = false;  ///< the most recent step saturated at a DAC rail
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dead-zone count band, rounded inward so the realized frequency band stays
/// strictly inside (fll_band_lo, fll_band_hi) of the target.
/// Returns nothing when the window is too short to resolve the band.
std::optional<std::pair<int, int>> try_thresholds(const SimConfig& cfg);

/// Same as try_thresholds but throws ConfigError naming the minimum usable N.
std::pair<int, int> thresholds(const SimConfig& cfg);

/// Smallest fll_window_N that resolves the configured band.
int min_resolvable_window(const SimConfig& cfg);

/// Complete VCO periods in n reference periods (analytic path).
long long count_cycles(double f_vco, double f_ref, int n);

/// Initial state: engaged at the top DAC code so the walk approaches the dead
/// zone from above and hands off in its topmost count bucket (the capture
/// basin of the desired harmonic).
FllState initial_fll_state(const SimConfig& cfg);

/// One comparator decision. Requires state.engaged.
FllState fll_step(FllState state, long long count, const SimConfig& cfg);

}  // namespace isspll
