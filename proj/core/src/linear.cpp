#include "isspll/linear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace isspll {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> horner(std::span<const double> coeffs, std::complex<double> s) {
    std::complex<double> acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
    return acc;
}

}  // namespace

std::complex<double> RationalFn::eval(std::complex<double> s) const {
    return horner(num, s) / horner(den, s);
}

std::complex<double> LoopModel::open_loop(double f_hz) const {
    const std::complex<double> s{0.0, kTwoPi * f_hz};
    return k_pd_i * k_vco_rad * z_filter.eval(s) / s;
}

LoopModel build_loop_model(const SimConfig& cfg) {
    LoopModel m;
    m.k_pd_i = 2.0 * cfg.i_chg * cfg.f_ref / (kTwoPi * cfg.f_target());
    m.k_vco_rad = kTwoPi * cfg.k_vco;
    m.mult_m = static_cast<double>(cfg.mult_m);
    m.f_ref = cfg.f_ref;

    const double c_sum = cfg.c_s + cfg.c1;
    const double c_p = cfg.c_s * cfg.c1 / c_sum;
    m.z_filter.num = {1.0, cfg.r1 * cfg.c1};
    m.z_filter.den = {0.0, c_sum, c_sum * cfg.r1 * c_p};
    return m;
}

StabilityReport stability(const LoopModel& model) {
    StabilityReport rep;
    const double f_lo = 1.0;
    const double f_hi = model.f_ref / 2.0;

    auto log_mag = [&](double f) { return std::log10(std::abs(model.open_loop(f))); };

    // |G| is monotone decreasing for this loop; find the sign change on a log grid
    constexpr int kGrid = 256;
    double a = f_lo, b = 0.0;
    double ga = log_mag(a);
    if (ga < 0.0) return rep;  // already below unity at 1 Hz
    for (int i = 1; i <= kGrid; ++i) {
        const double f = f_lo * std::pow(f_hi / f_lo, static_cast<double>(i) / kGrid);
        const double g = log_mag(f);
        if (g <= 0.0) {
            b = f;
            break;
        }
        a = f;
        ga = g;
    }
    if (b == 0.0) return rep;  // no crossing below f_ref/2

    for (int it = 0; it < 100; ++it) {
        const double mid = std::sqrt(a * b);
        if (log_mag(mid) > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }

    rep.crossing_found = true;
    rep.unity_gain_bw_hz = std::sqrt(a * b);
    const auto g = model.open_loop(rep.unity_gain_bw_hz);
    rep.phase_margin_deg = 180.0 + std::arg(g) * 180.0 / std::numbers::pi;
    rep.stable = rep.phase_margin_deg > 0.0;
    return rep;
}

std::complex<double> noise_transfer(const LoopModel& model, NoiseSource source, double f_hz) {
    const auto g = model.open_loop(f_hz);
    if (source == NoiseSource::reference) return model.mult_m * g / (1.0 + g);
    return 1.0 / (1.0 + g);
}

double noise_transfer_db(const LoopModel& model, NoiseSource source, double f_hz) {
    const double mag = std::abs(noise_transfer(model, source, f_hz));
    if (!(mag > 0.0)) return -200.0;
    return std::max(20.0 * std::log10(mag), -200.0);
}

std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs) {
    // strip trailing zero coefficients
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
    if (deg < 2) return {};
    const std::size_t n = deg - 1;

    std::vector<std::complex<double>> c(deg);
    for (std::size_t i = 0; i < deg; ++i) c[i] = coeffs[i] / coeffs[deg - 1];

    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = deg; i-- > 0;) acc = acc * x + c[i];
        return acc;
    };

    // Durand-Kerner from a scaled non-real seed
    double radius = 0.0;
    for (std::size_t i = 0; i + 1 < deg; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ang = kTwoPi * (static_cast<double>(i) + 0.25) / static_cast<double>(n);
        r[i] = radius * std::polar(1.0, ang);
    }
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> d{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) d *= r[i] - r[j];
            }
            const auto delta = eval(r[i]) / d;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * radius) break;
    }
    return r;
}

namespace {

/// den_cl(s) = s*D_z(s) + k_pd*k_vco_rad*N_z(s), ascending coefficients.
std::vector<double> closed_loop_denominator(const LoopModel& model) {
    const double a = model.k_pd_i * model.k_vco_rad;
    std::vector<double> den(std::max(model.z_filter.den.size() + 1, model.z_filter.num.size()),
                            0.0);
    for (std::size_t i = 0; i < model.z_filter.den.size(); ++i) {
        den[i + 1] += model.z_filter.den[i];
    }
    for (std::size_t i = 0; i < model.z_filter.num.size(); ++i) {
        den[i] += a * model.z_filter.num[i];
    }
    return den;
}

}  // namespace

std::vector<std::complex<double>> closed_loop_poles(const LoopModel& model) {
    return poly_roots(closed_loop_denominator(model));
}

std::vector<double> control_step_response(const LoopModel& model, double phase_step_rad,
                                          std::span<const double> times) {
    const auto den = closed_loop_denominator(model);
    const auto poles = poly_roots(den);

    // v_c(s) = M * theta * k_pd * N_z(s) / den(s); residues at simple poles
    auto den_deriv = [&](std::complex<double> s) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = den.size(); i-- > 1;) {
            acc = acc * s + static_cast<double>(i) * den[i];
        }
        return acc;
    };
    const double gain = model.mult_m * phase_step_rad * model.k_pd_i;

    std::vector<double> out(times.size(), 0.0);
    for (const auto& p : poles) {
        const auto res = gain * horner(model.z_filter.num, p) / den_deriv(p);
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] < 0.0) continue;
            out[i] += (res * std::exp(p * times[i])).real();
        }
    }
    return out;
}

double slowest_time_constant(const LoopModel& model) {
    double min_re = std::numeric_limits<double>::infinity();
    for (const auto& p : closed_loop_poles(model)) {
        if (p.real() < 0.0) min_re = std::min(min_re, -p.real());
    }
    return 1.0 / min_re;
}

std::string design_report(const SimConfig& cfg) {
    const auto model = build_loop_model(cfg);
    const auto stab = stability(model);
    const double zero_hz = 1.0 / (kTwoPi * cfg.r1 * cfg.c1);
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf, "k_pd_i_A_per_rad=%.10g\n", model.k_pd_i);
    out += buf;
    std::snprintf(buf, sizeof buf, "ugb_hz=%.10g\n",
                  stab.crossing_found ? stab.unity_gain_bw_hz
                                      : std::numeric_limits<double>::quiet_NaN());
    out += buf;
    std::snprintf(buf, sizeof buf, "pm_deg=%.10g\n",
                  stab.crossing_found ? stab.phase_margin_deg
                                      : std::numeric_limits<double>::quiet_NaN());
    out += buf;
    std::snprintf(buf, sizeof buf, "zero_hz=%.10g\n", zero_hz);
    out += buf;
    return out;
}

}  // namespace isspll
