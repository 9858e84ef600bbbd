// isspll: behavioral simulator and design-analysis CLI for integrating
// sub-sampling PLLs. Subcommands: simulate, analyze, design, sweep, fom.
//
// Exit codes: 0 success (simulate/analyze: locked), 1 usage/config/parse
// error, 2 run completed without lock (outputs still written).

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "isspll/config_io.hpp"
#include "isspll/engine.hpp"
#include "isspll/linear.hpp"
#include "isspll/report.hpp"
#include "isspll/trace.hpp"

namespace fs = std::filesystem;
using namespace isspll;

namespace {

constexpr const char* kConfigKeyHelp = R"(Config file keys (INI sections, SI units):
  [loop]   f_ref Hz | mult_M - | t_pul s | i_chg A | i_bias A | i_offset A
           switch_tau s | c_s F | r1 ohm | c1 F
  [vco]    k_vco Hz/V | v_ctr V | f_base_min Hz | f_base_step Hz | dac_bits -
  [fll]    fll_window_N - | fll_band_lo - | fll_band_hi -
  [noise]  enabled bool | ref_jitter_rms s | vco_white_fm Hz^2/Hz
           vco_flicker_corner Hz
  [run]    duration s | seed - | lock_tol_ppm - | lock_window -
Unset keys keep their defaults; i_chg defaults to i_bias.)";

struct AnalysisFlags {
    AnalysisOptions opts;

    void attach(CLI::App* cmd) {
        cmd->add_option("--band-lo", opts.band_lo, "jitter band lower edge, Hz")
            ->capture_default_str();
        cmd->add_option("--band-hi", opts.band_hi, "jitter band upper edge, Hz")
            ->capture_default_str();
        cmd->add_option("--spur-offset", opts.spur_offset,
                        "spur offset from the carrier, Hz (0 = f_ref)");
        cmd->add_option("--power", opts.power, "power assumed for FOM reporting, W")
            ->capture_default_str();
        cmd->add_option("--area", opts.area, "area assumed for FOM reporting, mm^2")
            ->capture_default_str();
        cmd->add_option("--fs", opts.fs, "phase sample rate, Hz (0 = 4*f_target)");
        cmd->add_option("--segment", opts.segment_len,
                        "PSD segment length, power of two (0 = auto)");
        cmd->add_option("--overlap", opts.overlap, "PSD segment overlap in [0, 0.9]")
            ->capture_default_str();
    }
};

int write_outputs(const fs::path& out_dir, std::span<const CycleRecord> trace,
                  const AnalysisOutput& result) {
    fs::create_directories(out_dir);
    write_trace_csv(out_dir / "trace.csv", trace);
    write_summary(out_dir / "summary.txt", result.summary);
    if (!result.spectrum.freqs.empty()) {
        write_spectrum_csv(out_dir / "spectrum.csv", result.spectrum);
    }
    std::cout << format_summary(result.summary);
    return result.lock.locked ? 0 : 2;
}

int run_simulate(const std::string& config_path, const fs::path& out_dir,
                 std::optional<std::uint64_t> seed, std::optional<double> duration,
                 const AnalysisOptions& opts) {
    SimConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (duration) cfg.duration = *duration;

    const auto violations = validate(cfg);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << config_path << ": " << v << '\n';
        return 1;
    }

    const auto run = run_transient(cfg);
    const auto result = summarize(run.trace, cfg, opts);
    return write_outputs(out_dir, run.trace, result);
}

int run_analyze(const std::string& config_path, const std::string& trace_path,
                const fs::path& out_dir, const AnalysisOptions& opts) {
    const SimConfig cfg = load_config(config_path);
    const auto trace = read_trace_csv(trace_path);
    const auto result = summarize(trace, cfg, opts);
    fs::create_directories(out_dir);
    write_summary(out_dir / "summary.txt", result.summary);
    if (!result.spectrum.freqs.empty()) {
        write_spectrum_csv(out_dir / "spectrum.csv", result.spectrum);
    }
    std::cout << format_summary(result.summary);
    return result.lock.locked ? 0 : 2;
}

struct SweepRow {
    double value = 0.0;
    RunSummary summary;
    double k_pd_i = 0.0, ugb = 0.0, pm = 0.0, zero = 0.0;
    bool failed = false;
};

int run_sweep(const std::string& config_path, const std::string& key, double from, double to,
              int steps, const fs::path& out_dir, unsigned jobs, const AnalysisOptions& opts) {
    if (steps < 1) {
        std::cerr << "--steps must be >= 1\n";
        return 1;
    }
    const ConfigField* field = find_field(key);
    if (field == nullptr) {
        std::cerr << "unknown or non-numeric config key '" << key << "'\n";
        return 1;
    }
    const SimConfig base = load_config(config_path);

    std::vector<double> values(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        values[static_cast<std::size_t>(i)] =
            steps == 1 ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
    }

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(values.size())));

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            SweepRow& row = rows[i];
            row.value = values[i];
            try {
                SimConfig cfg = base;
                field->set(cfg, values[i]);
                const auto run = run_transient(cfg);
                row.summary = summarize(run.trace, cfg, opts).summary;
                const auto model = build_loop_model(cfg);
                const auto stab = stability(model);
                row.k_pd_i = model.k_pd_i;
                row.ugb = stab.unity_gain_bw_hz;
                row.pm = stab.phase_margin_deg;
                row.zero = 1.0 / (2.0 * std::numbers::pi * cfg.r1 * cfg.c1);
            } catch (const std::exception& e) {
                row.failed = true;
                std::cerr << key << " = " << values[i] << ": " << e.what() << '\n';
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    fs::create_directories(out_dir);
    std::ofstream out(out_dir / "sweep.csv");
    if (!out) {
        std::cerr << "cannot open " << (out_dir / "sweep.csv") << " for writing\n";
        return 1;
    }
    out << key
        << ",sigma_s,spur_dbc,spur_freq_hz,fom_ja_db,fom_db,lock_time_s,f_error_ppm"
           ",k_pd_i_A_per_rad,ugb_hz,pm_deg,zero_hz\n";
    char buf[512];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows) {
        const RunSummary& s = r.summary;
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.value, s.sigma_s, s.spur_dbc, s.spur_freq_hz, s.fom_ja_db, s.fom_db,
                      s.lock_time_s, s.f_error_ppm, r.failed ? nan : r.k_pd_i,
                      r.failed ? nan : r.ugb, r.failed ? nan : r.pm, r.failed ? nan : r.zero);
        out << buf;
    }
    return 0;
}

int run_fom(double sigma, double power, double area) {
    if (!(sigma > 0.0) || !(power > 0.0) || !(area > 0.0)) {
        std::cerr << "fom: --sigma, --power and --area must all be > 0\n";
        return 1;
    }
    const auto r = fom_ja({sigma, power, area});
    std::printf("fom_ja_db=%.1f\n", r.fom_ja_db);
    std::printf("fom_db=%.1f\n", r.fom_db);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrating sub-sampling PLL behavioral simulator"};
    app.require_subcommand(1);
    app.footer(kConfigKeyHelp);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a transient and write trace/summary/spectrum");
    std::string sim_config, sim_out = "out";
    std::optional<std::uint64_t> sim_seed;
    std::optional<double> sim_duration;
    AnalysisFlags sim_flags;
    sim->add_option("--config", sim_config, "INI config file")->required();
    sim->add_option("--seed", sim_seed, "override [run] seed");
    sim->add_option("--duration", sim_duration, "override [run] duration, s");
    sim->add_option("--out", sim_out, "output directory")->capture_default_str();
    sim_flags.attach(sim);

    // analyze
    auto* ana = app.add_subcommand("analyze", "recompute summary/spectrum from a trace.csv");
    std::string ana_config, ana_trace, ana_out = "out";
    AnalysisFlags ana_flags;
    ana->add_option("--config", ana_config, "INI config file")->required();
    ana->add_option("--trace", ana_trace, "trace.csv from simulate")->required();
    ana->add_option("--out", ana_out, "output directory")->capture_default_str();
    ana_flags.attach(ana);

    // design
    auto* des = app.add_subcommand("design", "print the small-signal design report");
    std::string des_config;
    des->add_option("--config", des_config, "INI config file")->required();

    // sweep
    auto* swp = app.add_subcommand("sweep", "run simulate over a parameter range");
    std::string swp_config, swp_key, swp_out = "out";
    double swp_from = 0.0, swp_to = 0.0;
    int swp_steps = 1;
    unsigned swp_jobs = std::max(1u, std::thread::hardware_concurrency());
    AnalysisFlags swp_flags;
    swp->add_option("--config", swp_config, "INI config file")->required();
    swp->add_option("--param", swp_key, "numeric config key to sweep")->required();
    swp->add_option("--from", swp_from, "first value")->required();
    swp->add_option("--to", swp_to, "last value")->required();
    swp->add_option("--steps", swp_steps, "number of points")->required();
    swp->add_option("--out", swp_out, "output directory")->capture_default_str();
    swp->add_option("--jobs", swp_jobs, "parallel workers");
    swp_flags.attach(swp);

    // fom
    auto* fom = app.add_subcommand("fom", "jitter-power figure of merit");
    double fom_sigma = 0.0, fom_power = 0.0, fom_area = 0.0;
    fom->add_option("--sigma", fom_sigma, "integrated rms jitter, s")->required();
    fom->add_option("--power", fom_power, "power, W")->required();
    fom->add_option("--area", fom_area, "area, mm^2")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            return run_simulate(sim_config, sim_out, sim_seed, sim_duration, sim_flags.opts);
        }
        if (ana->parsed()) {
            return run_analyze(ana_config, ana_trace, ana_out, ana_flags.opts);
        }
        if (des->parsed()) {
            const SimConfig cfg = load_config(des_config);
            const auto violations = validate(cfg);
            if (!violations.empty()) {
                for (const auto& v : violations) std::cerr << des_config << ": " << v << '\n';
                return 1;
            }
            std::cout << design_report(cfg);
            return 0;
        }
        if (swp->parsed()) {
            return run_sweep(swp_config, swp_key, swp_from, swp_to, swp_steps, swp_out,
                             swp_jobs, swp_flags.opts);
        }
        if (fom->parsed()) {
            return run_fom(fom_sigma, fom_power, fom_area);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 1;
}
