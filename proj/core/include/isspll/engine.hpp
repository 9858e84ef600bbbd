#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isspll/config.hpp"
#include "isspll/detector.hpp"
#include "isspll/fll.hpp"
#include "isspll/oscillator.hpp"
#include "isspll/trace.hpp"

namespace isspll {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LockReport {
    bool locked = false;
    double lock_time = std::numeric_limits<double>::quiet_NaN();  ///< s, start of first qualifying window
    double f_error_ppm = std::numeric_limits<double>::quiet_NaN();  ///< trailing-window mean error
    double residual_dv = std::numeric_limits<double>::quiet_NaN();  ///< V, trailing-window mean |delta_v_pd|
};

struct RunDiagnostics {
    long long freq_clamps = 0;        ///< inst_freq hit its positive floor
    long long dac_rail_hits = 0;      ///< FLL step saturated at a DAC rail
    long long window_truncations = 0; ///< pulse window clipped at the next edge
    long long edge_order_fixes = 0;   ///< jittered edge forced forward to keep order
};

/// Starts the run already in fine-loop mode at the given coarse code and
/// control voltage, VCO phase aligned so a falling transition sits at the
/// center of the first pulse window.
struct WarmStart {
    int code = 0;
    double v_c = 0.0;
};

/// Reference-clock disturbances, applied from the given times onward.
struct Disturbances {
    double ref_phase_step_rad = 0.0;
    double ref_phase_step_time = std::numeric_limits<double>::infinity();
    double ref_freq_step_ppm = 0.0;
    double ref_freq_step_time = std::numeric_limits<double>::infinity();
};

struct RunOptions {
    std::optional<WarmStart> warm_start;
    Disturbances disturb;
};

struct RunResult {
    std::vector<CycleRecord> trace;
    LockReport lock;
    VcoState vco;
    FilterState filter;
    FllState fll;
    RunDiagnostics diag;
};

/// Runs floor(duration*f_ref) reference cycles: while the FLL is engaged the
/// fine control is pinned at v_ctr and cycle counts drive the coarse DAC;
/// after disengage each cycle integrates the detector over the pulse window,
/// deposits the charge, relaxes the filter to the next edge, and advances the
/// VCO on the exact mean control voltage. Deterministic for a given seed.
/// Throws EngineError on an invalid config or non-finite state.
RunResult run_transient(const SimConfig& cfg);
RunResult run_transient(const SimConfig& cfg, const RunOptions& opts);

/// Locked iff some window_cycles consecutive records are all FLL-disengaged
/// with |f_inst - f_target| within tol_ppm. Trailing-window statistics fill
/// f_error_ppm / residual_dv regardless of lock.
LockReport detect_lock(std::span<const CycleRecord> trace, double f_target, double tol_ppm,
                       int window_cycles);

/// Sinusoidal control-line ripple added at synthesis time (continuous FM,
/// integrated in closed form).
struct RippleInjection {
    double amp_v = 0.0;
    double freq_hz = 0.0;
};

/// Excess phase phi_e(t) = vco phase - 2*pi*f_target*t sampled at fs by exact
/// piecewise-linear evaluation (frequency constant within each cycle).
/// Requires fs >= 4*f_target and at least two trace records.
std::vector<double> synthesize_phase_samples(std::span<const CycleRecord> trace,
                                             const SimConfig& cfg, double fs,
                                             const RippleInjection& ripple = {});

}  // namespace isspll
