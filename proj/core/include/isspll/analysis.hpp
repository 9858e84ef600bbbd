#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace isspll {

/// Single-sideband phase-noise spectrum. freqs excludes DC and is uniformly
/// spaced by resolution_bw; l_dbchz is floored at kLFloorDb.
struct SpectrumEstimate {
    std::vector<double> freqs;    ///< Hz
    std::vector<double> l_dbchz;  ///< dBc/Hz, L(f) = 10 log10(S_phi(f)/2)
    double resolution_bw = 0.0;   ///< Hz (bin spacing)
    int n_averages = 0;
};

inline constexpr double kLFloorDb = -400.0;

/// Averaged modified-periodogram estimate of the excess-phase PSD: Hann
/// window, per-segment linear detrend, overlap in [0, 0.9]. Normalized so a
/// pure phase tone of amplitude a rad integrates to a^2/2 rad^2 across its
/// bins. segment_len must be a power of two, >= 16, <= sample count.
SpectrumEstimate estimate_psd(std::span<const double> phase_samples, double fs,
                              std::size_t segment_len, double overlap);

/// Largest usable power-of-two segment for n samples, capped at 2^22.
std::size_t auto_segment_len(std::size_t n_samples);

/// sigma_t = sqrt(2 * integral_f1^f2 10^(L/10) df) / (2*pi*f_out), trapezoidal
/// over bins with linear edge interpolation. f1 == f2 yields 0.
double integrate_jitter(const SpectrumEstimate& spec, double f1, double f2, double f_out);

struct SpurResult {
    double dbc = 0.0;
    double freq_hz = 0.0;  ///< reported spur location, f_out + f_offset
};

/// Tone power at f_offset in the phase spectrum (peak bin +-2), converted to
/// the single-sideband spur level 10*log10(P_tone/2) dBc. Requires
/// resolution_bw < f_offset/10.
SpurResult spur_level(const SpectrumEstimate& spec, double f_out, double f_offset);

struct FomInputs {
    double sigma_j = 0.0;  ///< s, integrated rms jitter
    double power = 0.0;    ///< W
    double area = 0.0;     ///< mm^2
};

struct FomResult {
    double fom_ja_db = 0.0;  ///< 20log10(sigma/1s) + 10log10(P/1mW) + 10log10(A/1mm^2)
    double fom_db = 0.0;     ///< jitter-power part only
};

FomResult fom_ja(const FomInputs& in);

void write_spectrum_csv(std::ostream& out, const SpectrumEstimate& spec);
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumEstimate& spec);

}  // namespace isspll
