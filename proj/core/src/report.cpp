#include "isspll/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace isspll {

namespace {
const double kNan = std::numeric_limits<double>::quiet_NaN();
}

AnalysisOutput summarize(std::span<const CycleRecord> trace, const SimConfig& cfg,
                         const AnalysisOptions& opts) {
    AnalysisOutput out;
    out.summary = RunSummary{kNan, kNan, kNan, kNan, kNan, kNan, kNan};
    if (trace.empty()) return out;

    out.lock = detect_lock(trace, cfg.f_target(), cfg.lock_tol_ppm, cfg.lock_window);
    out.summary.lock_time_s = out.lock.locked ? out.lock.lock_time : kNan;
    out.summary.f_error_ppm = out.lock.f_error_ppm;

    auto slice = trace;
    if (out.lock.locked) {
        const auto it = std::lower_bound(
            trace.begin(), trace.end(), out.lock.lock_time,
            [](const CycleRecord& r, double t) { return r.t < t; });
        slice = trace.subspan(static_cast<std::size_t>(it - trace.begin()));
    }

    const double fs = opts.fs > 0.0 ? opts.fs : 4.0 * cfg.f_target();
    if (slice.size() < 2) return out;
    const auto phase = synthesize_phase_samples(slice, cfg, fs);

    const std::size_t seg =
        opts.segment_len > 0 ? opts.segment_len : auto_segment_len(phase.size());
    if (phase.size() < seg || seg < 16) return out;
    out.spectrum = estimate_psd(phase, fs, seg, opts.overlap);

    try {
        out.summary.sigma_s =
            integrate_jitter(out.spectrum, opts.band_lo, opts.band_hi, cfg.f_target());
    } catch (const std::invalid_argument&) {
        // band outside the achievable resolution; leave NaN
    }
    try {
        const double offset = opts.spur_offset > 0.0 ? opts.spur_offset : cfg.f_ref;
        const auto spur = spur_level(out.spectrum, cfg.f_target(), offset);
        out.summary.spur_dbc = spur.dbc;
        out.summary.spur_freq_hz = spur.freq_hz;
    } catch (const std::invalid_argument&) {
    }
    if (out.summary.sigma_s > 0.0 && opts.power > 0.0 && opts.area > 0.0) {
        const auto fom = fom_ja({out.summary.sigma_s, opts.power, opts.area});
        out.summary.fom_ja_db = fom.fom_ja_db;
        out.summary.fom_db = fom.fom_db;
    }
    return out;
}

std::string format_summary(const RunSummary& s) {
    char buf[64];
    std::string out;
    const auto kv = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g\n", key, v);
        out += buf;
    };
    kv("sigma_s", s.sigma_s);
    kv("spur_dbc", s.spur_dbc);
    kv("spur_freq_hz", s.spur_freq_hz);
    kv("fom_ja_db", s.fom_ja_db);
    kv("fom_db", s.fom_db);
    kv("lock_time_s", s.lock_time_s);
    kv("f_error_ppm", s.f_error_ppm);
    return out;
}

void write_summary(const std::filesystem::path& path, const RunSummary& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << format_summary(s);
}

RunSummary read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::map<std::string, double> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = std::strtod(line.c_str() + eq + 1, nullptr);
    }
    const auto get = [&](const char* key) {
        const auto it = kv.find(key);
        return it == kv.end() ? kNan : it->second;
    };
    RunSummary s;
    s.sigma_s = get("sigma_s");
    s.spur_dbc = get("spur_dbc");
    s.spur_freq_hz = get("spur_freq_hz");
    s.fom_ja_db = get("fom_ja_db");
    s.fom_db = get("fom_db");
    s.lock_time_s = get("lock_time_s");
    s.f_error_ppm = get("f_error_ppm");
    return s;
}

}  // namespace isspll
