#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace isspll {

/// One reference cycle of a transient run. t_x_offset is NaN when no VCO
/// transition fell inside the pulse window (or while the FLL was engaged).
struct CycleRecord {
    std::int64_t cycle_index = 0;
    double t = 0.0;        ///< s, cycle start (reference edge time)
    double v_c = 0.0;      ///< V, control voltage at cycle end
    double f_inst = 0.0;   ///< Hz, effective mean frequency over the cycle
    int fll_code = 0;
    bool fll_engaged = false;
    double delta_v_pd = 0.0;  ///< V, detector voltage step this cycle
    double t_x_offset = 0.0;  ///< s, first transition offset from window start
};

inline constexpr const char* kTraceCsvHeader =
    "cycle,t_s,v_c_V,f_Hz,fll_code,fll_engaged,dv_pd_V,tx_off_s";

/// Writes one row per cycle, doubles at full round-trip precision (%.17g).
void write_trace_csv(std::ostream& out, std::span<const CycleRecord> trace);
void write_trace_csv(const std::filesystem::path& path, std::span<const CycleRecord> trace);

/// Parses a file produced by write_trace_csv; throws std::runtime_error with
/// the offending line number on malformed input.
std::vector<CycleRecord> read_trace_csv(std::istream& in, const std::string& name);
std::vector<CycleRecord> read_trace_csv(const std::filesystem::path& path);

}  // namespace isspll
