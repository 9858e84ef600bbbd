#include "isspll/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace isspll {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not thread-safe; executing distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double db10_floor(double power) {
    if (!(power > 0.0)) return kLFloorDb;
    return std::max(10.0 * std::log10(power), kLFloorDb);
}

}  // namespace

std::size_t auto_segment_len(std::size_t n_samples) {
    std::size_t seg = 16;
    while (seg * 2 <= n_samples && seg < (std::size_t{1} << 22)) seg *= 2;
    return seg;
}

SpectrumEstimate estimate_psd(std::span<const double> x, double fs,
                              std::size_t segment_len, double overlap) {
    if (!is_pow2(segment_len) || segment_len < 16) {
        throw std::invalid_argument("segment_len must be a power of two >= 16, got " +
                                    std::to_string(segment_len));
    }
    if (x.size() < segment_len) {
        throw std::invalid_argument("need at least segment_len = " +
                                    std::to_string(segment_len) + " samples, have " +
                                    std::to_string(x.size()));
    }
    if (overlap < 0.0 || overlap > 0.9) {
        throw std::invalid_argument("overlap must be in [0, 0.9]");
    }

    const std::size_t len = segment_len;
    const auto hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(len) * (1.0 - overlap))));
    const std::size_t n_segments = (x.size() - len) / hop + 1;
    const std::size_t n_bins = len / 2;  // k = 1 .. len/2 (DC dropped)

    std::vector<double> window(len);
    double win_power = 0.0;
    for (std::size_t n = 0; n < len; ++n) {
        window[n] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(n) /
                                          static_cast<double>(len - 1)));
        win_power += window[n] * window[n];
    }

    double* in = fftw_alloc_real(static_cast<int>(len));
    auto* out = fftw_alloc_complex(static_cast<int>(len / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in, out, FFTW_ESTIMATE);
    }

    std::vector<double> acc(n_bins, 0.0);
    // linear detrend x-moments are segment-independent
    const double n_len = static_cast<double>(len);
    const double sx = n_len * (n_len - 1.0) / 2.0;
    const double sxx = n_len * (n_len - 1.0) * (2.0 * n_len - 1.0) / 6.0;
    const double det = n_len * sxx - sx * sx;

    for (std::size_t s = 0; s < n_segments; ++s) {
        const double* seg = x.data() + s * hop;
        double sy = 0.0, sxy = 0.0;
        for (std::size_t n = 0; n < len; ++n) {
            sy += seg[n];
            sxy += static_cast<double>(n) * seg[n];
        }
        const double slope = (n_len * sxy - sx * sy) / det;
        const double intercept = (sy - slope * sx) / n_len;
        for (std::size_t n = 0; n < len; ++n) {
            in[n] = (seg[n] - intercept - slope * static_cast<double>(n)) * window[n];
        }
        fftw_execute(plan);
        for (std::size_t k = 1; k <= n_bins; ++k) {
            acc[k - 1] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
        }
    }

    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);

    SpectrumEstimate spec;
    spec.resolution_bw = fs / static_cast<double>(len);
    spec.n_averages = static_cast<int>(n_segments);
    spec.freqs.resize(n_bins);
    spec.l_dbchz.resize(n_bins);
    const double scale = 1.0 / (fs * win_power * static_cast<double>(n_segments));
    for (std::size_t k = 1; k <= n_bins; ++k) {
        const double one_sided = (k == n_bins) ? acc[k - 1] * scale : 2.0 * acc[k - 1] * scale;
        spec.freqs[k - 1] = static_cast<double>(k) * spec.resolution_bw;
        spec.l_dbchz[k - 1] = db10_floor(one_sided / 2.0);
    }
    return spec;
}

namespace {

/// Linear interpolation of the linear-power density at frequency f.
double density_at(const SpectrumEstimate& spec, double f) {
    const auto& fr = spec.freqs;
    auto it = std::lower_bound(fr.begin(), fr.end(), f);
    if (it == fr.begin()) return std::pow(10.0, spec.l_dbchz.front() / 10.0);
    if (it == fr.end()) return std::pow(10.0, spec.l_dbchz.back() / 10.0);
    const std::size_t hi = static_cast<std::size_t>(it - fr.begin());
    const std::size_t lo = hi - 1;
    const double w = (f - fr[lo]) / (fr[hi] - fr[lo]);
    const double p_lo = std::pow(10.0, spec.l_dbchz[lo] / 10.0);
    const double p_hi = std::pow(10.0, spec.l_dbchz[hi] / 10.0);
    return p_lo + w * (p_hi - p_lo);
}

}  // namespace

double integrate_jitter(const SpectrumEstimate& spec, double f1, double f2, double f_out) {
    if (spec.freqs.empty()) throw std::invalid_argument("empty spectrum");
    if (f1 > f2) throw std::invalid_argument("jitter band reversed");
    if (f1 < spec.freqs.front() || f2 > spec.freqs.back()) {
        throw std::invalid_argument(
            "jitter band [" + std::to_string(f1) + ", " + std::to_string(f2) +
            "] Hz outside spectrum span [" + std::to_string(spec.freqs.front()) + ", " +
            std::to_string(spec.freqs.back()) + "] Hz");
    }
    if (f1 == f2) return 0.0;

    double integral = 0.0;
    double f_prev = f1;
    double p_prev = density_at(spec, f1);
    for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
        const double f = spec.freqs[i];
        if (f <= f1) continue;
        const double f_cur = std::min(f, f2);
        const double p_cur = density_at(spec, f_cur);
        integral += 0.5 * (p_prev + p_cur) * (f_cur - f_prev);
        f_prev = f_cur;
        p_prev = p_cur;
        if (f >= f2) break;
    }
    return std::sqrt(2.0 * integral) / (kTwoPi * f_out);
}

SpurResult spur_level(const SpectrumEstimate& spec, double f_out, double f_offset) {
    if (spec.freqs.empty()) throw std::invalid_argument("empty spectrum");
    if (!(spec.resolution_bw < f_offset / 10.0)) {
        throw std::invalid_argument(
            "resolution bandwidth " + std::to_string(spec.resolution_bw) +
            " Hz too coarse to resolve a spur at " + std::to_string(f_offset) +
            " Hz offset; capture at least " + std::to_string(10.0 / f_offset) +
            " s per segment");
    }
    if (f_offset > spec.freqs.back()) {
        throw std::invalid_argument("spur offset beyond Nyquist of the phase record");
    }

    const auto n = static_cast<std::ptrdiff_t>(spec.freqs.size());
    const auto center = static_cast<std::ptrdiff_t>(
        std::llround(f_offset / spec.resolution_bw)) - 1;  // freqs[k] = (k+1)*rbw
    std::ptrdiff_t peak = std::clamp<std::ptrdiff_t>(center, 0, n - 1);
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, center - 5);
         i <= std::min(n - 1, center + 5); ++i) {
        if (spec.l_dbchz[i] > spec.l_dbchz[peak]) peak = i;
    }

    double tone_power = 0.0;
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, peak - 2);
         i <= std::min(n - 1, peak + 2); ++i) {
        tone_power += std::pow(10.0, spec.l_dbchz[i] / 10.0) * spec.resolution_bw;
    }
    // S_phi integrates to a^2/2 over the tone; the SSB spur is (a/2)^2 = P/2
    return {db10_floor(tone_power / 2.0), f_out + f_offset};
}

FomResult fom_ja(const FomInputs& in) {
    if (!(in.sigma_j > 0.0) || !(in.power > 0.0) || !(in.area > 0.0)) {
        throw std::invalid_argument("FOM inputs must all be > 0");
    }
    FomResult r;
    r.fom_db = 20.0 * std::log10(in.sigma_j) + 10.0 * std::log10(in.power / 1e-3);
    r.fom_ja_db = r.fom_db + 10.0 * std::log10(in.area);
    return r;
}

void write_spectrum_csv(std::ostream& out, const SpectrumEstimate& spec) {
    out << "f_Hz,L_dBcHz\n";
    char buf[80];
    for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", spec.freqs[i], spec.l_dbchz[i]);
        out << buf;
    }
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumEstimate& spec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_spectrum_csv(out, spec);
}

}  // namespace isspll
