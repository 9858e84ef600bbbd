#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "isspll/analysis.hpp"
#include "isspll/config.hpp"
#include "isspll/engine.hpp"
#include "isspll/trace.hpp"

namespace isspll {

/// Post-processing settings shared by `simulate` and `analyze`.
struct AnalysisOptions {
    double band_lo = 1e3;       ///< Hz, jitter integration band
    double band_hi = 1e5;       ///< Hz
    double spur_offset = 0.0;   ///< Hz; 0 means f_ref
    double power = 131.8e-6;    ///< W, assumed for FOM reporting
    double area = 0.034;        ///< mm^2, assumed for FOM reporting
    double fs = 0.0;            ///< Hz, phase sample rate; 0 means 4*f_target
    std::size_t segment_len = 0;  ///< 0 means auto
    double overlap = 0.5;
};

/// The seven summary keys. Quantities that could not be computed are NaN.
struct RunSummary {
    double sigma_s = 0.0;
    double spur_dbc = 0.0;
    double spur_freq_hz = 0.0;
    double fom_ja_db = 0.0;
    double fom_db = 0.0;
    double lock_time_s = 0.0;
    double f_error_ppm = 0.0;
};

struct AnalysisOutput {
    RunSummary summary;
    SpectrumEstimate spectrum;
    LockReport lock;
};

/// Full post-processing pipeline: lock detection, phase synthesis from the
/// post-lock trace slice (whole trace when unlocked), PSD, band jitter, spur
/// at the reference offset, FOM from the measured jitter and assumed P/A.
AnalysisOutput summarize(std::span<const CycleRecord> trace, const SimConfig& cfg,
                         const AnalysisOptions& opts);

std::string format_summary(const RunSummary& s);
void write_summary(const std::filesystem::path& path, const RunSummary& s);
RunSummary read_summary(const std::filesystem::path& path);

}  // namespace isspll
