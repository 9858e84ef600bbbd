#include "isspll/config.hpp"

#include <cmath>
#include <sstream>

#include "isspll/fll.hpp"

namespace isspll {

namespace {

void require(std::vector<std::string>& out, bool ok, const std::string& msg) {
    if (!ok) out.push_back(msg);
}

std::string num(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

}  // namespace

std::vector<std::string> validate(const SimConfig& c) {
    std::vector<std::string> v;

    require(v, c.f_ref > 0, "f_ref must be > 0");
    require(v, c.mult_m >= 1, "mult_M must be >= 1");
    require(v, c.t_pul > 0, "t_pul must be > 0");
    require(v, c.i_chg > 0, "i_chg must be > 0");
    require(v, c.i_bias > 0, "i_bias must be > 0");
    require(v, c.switch_tau >= 0, "switch_tau must be >= 0");
    require(v, c.c_s > 0, "c_s must be > 0");
    require(v, c.r1 > 0, "r1 must be > 0");
    require(v, c.c1 > 0, "c1 must be > 0");
    require(v, c.k_vco > 0, "k_vco must be > 0");
    require(v, c.f_base_step > 0, "f_base_step must be > 0");
    require(v, c.dac_bits >= 1 && c.dac_bits <= 24, "dac_bits must be in [1, 24]");
    require(v, c.fll_window_n >= 1, "fll_window_N must be >= 1");
    require(v, c.duration > 0, "duration must be > 0");
    require(v, c.lock_tol_ppm > 0, "lock_tol_ppm must be > 0");
    require(v, c.lock_window >= 2, "lock_window must be >= 2");

    if (c.f_ref > 0 && c.t_pul > 0) {
        require(v, c.t_pul < c.t_ref(),
                "t_pul < 1/f_ref violated: t_pul = " + num(c.t_pul) + " s, 1/f_ref = " +
                    num(c.t_ref()) + " s");
    }

    require(v, c.fll_band_lo > 0 && c.fll_band_lo < 1, "fll_band_lo must be in (0, 1)");
    require(v, c.fll_band_hi > 0 && c.fll_band_hi < 1, "fll_band_hi must be in (0, 1)");
    require(v, c.fll_band_lo < c.fll_band_hi,
            "fll_band_lo < fll_band_hi violated: lo = " + num(c.fll_band_lo) +
                ", hi = " + num(c.fll_band_hi));

    // target must be reachable by coarse DAC + fine range
    if (c.f_ref > 0 && c.mult_m >= 1 && c.k_vco > 0 && c.f_base_step > 0 && c.dac_bits >= 1) {
        const double fine = c.k_vco * kVSwing;
        const double lo = c.f_base_min - fine;
        const double hi = c.f_base(c.dac_max()) + fine;
        require(v, c.f_target() >= lo && c.f_target() <= hi,
                "target frequency " + num(c.f_target()) + " Hz outside reachable range [" +
                    num(lo) + ", " + num(hi) + "] Hz");
    }

    require(v, c.noise.ref_jitter_rms >= 0, "ref_jitter_rms must be >= 0");
    require(v, c.noise.vco_white_fm >= 0, "vco_white_fm must be >= 0");
    require(v, c.noise.vco_flicker_corner >= 0, "vco_flicker_corner must be >= 0");
    if (c.noise.enabled && c.f_ref > 0) {
        require(v, c.noise.ref_jitter_rms < 0.1 * c.t_ref(),
                "ref_jitter_rms must be < T_REF/10 to keep the edge sequence increasing");
    }

    // FLL band must be resolvable and the code step must not jump over it
    if (c.fll_band_lo > 0 && c.fll_band_lo < c.fll_band_hi && c.fll_band_hi < 1 &&
        c.mult_m >= 1 && c.fll_window_n >= 1) {
        auto th = try_thresholds(c);
        if (!th) {
            v.push_back("FLL count band unresolvable at fll_window_N = " +
                        std::to_string(c.fll_window_n) + "; minimum N is " +
                        std::to_string(min_resolvable_window(c)));
        } else if (c.f_ref > 0 && c.f_base_step > 0) {
            const double counts_per_code =
                c.f_base_step * static_cast<double>(c.fll_window_n) / c.f_ref;
            require(v, counts_per_code <= static_cast<double>(th->second - th->first),
                    "f_base_step * fll_window_N / f_ref = " + num(counts_per_code) +
                        " exceeds the FLL dead-zone width " +
                        std::to_string(th->second - th->first) +
                        "; the coarse walk could step over the band");
        }
    }

    return v;
}

namespace {

#define ISSPLL_FIELD(sec, name, member, integral)                                  \
    ConfigField {                                                                   \
        sec, #name, [](const SimConfig& c) { return static_cast<double>(c.member); }, \
            [](SimConfig& c, double v) {                                           \
                c.member = static_cast<decltype(c.member)>(v);                      \
            },                                                                      \
            integral                                                                \
    }

const std::vector<ConfigField> kFields = {
    ISSPLL_FIELD("loop", f_ref, f_ref, false),
    ISSPLL_FIELD("loop", mult_M, mult_m, true),
    ISSPLL_FIELD("loop", t_pul, t_pul, false),
    ISSPLL_FIELD("loop", i_chg, i_chg, false),
    ISSPLL_FIELD("loop", i_bias, i_bias, false),
    ISSPLL_FIELD("loop", i_offset, i_offset, false),
    ISSPLL_FIELD("loop", switch_tau, switch_tau, false),
    ISSPLL_FIELD("loop", c_s, c_s, false),
    ISSPLL_FIELD("loop", r1, r1, false),
    ISSPLL_FIELD("loop", c1, c1, false),
    ISSPLL_FIELD("vco", k_vco, k_vco, false),
    ISSPLL_FIELD("vco", v_ctr, v_ctr, false),
    ISSPLL_FIELD("vco", f_base_min, f_base_min, false),
    ISSPLL_FIELD("vco", f_base_step, f_base_step, false),
    ISSPLL_FIELD("vco", dac_bits, dac_bits, true),
    ISSPLL_FIELD("fll", fll_window_N, fll_window_n, true),
    ISSPLL_FIELD("fll", fll_band_lo, fll_band_lo, false),
    ISSPLL_FIELD("fll", fll_band_hi, fll_band_hi, false),
    ISSPLL_FIELD("noise", ref_jitter_rms, noise.ref_jitter_rms, false),
    ISSPLL_FIELD("noise", vco_white_fm, noise.vco_white_fm, false),
    ISSPLL_FIELD("noise", vco_flicker_corner, noise.vco_flicker_corner, false),
    ISSPLL_FIELD("run", duration, duration, false),
    ISSPLL_FIELD("run", seed, seed, true),
    ISSPLL_FIELD("run", lock_tol_ppm, lock_tol_ppm, false),
    ISSPLL_FIELD("run", lock_window, lock_window, true),
};

#undef ISSPLL_FIELD

}  // namespace

const std::vector<ConfigField>& config_fields() { return kFields; }

const ConfigField* find_field(const std::string& key) {
    for (const auto& f : kFields) {
        if (key == f.key) return &f;
    }
    return nullptr;
}

}  // namespace isspll
