#include "isspll/trace.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace isspll {

namespace {

std::runtime_error parse_error(const std::string& name, std::size_t line,
                               const std::string& what) {
    return std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void write_trace_csv(std::ostream& out, std::span<const CycleRecord> trace) {
    out << kTraceCsvHeader << '\n';
    char buf[256];
    for (const auto& r : trace) {
        std::snprintf(buf, sizeof buf, "%" PRId64 ",%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g\n",
                      r.cycle_index, r.t, r.v_c, r.f_inst, r.fll_code,
                      r.fll_engaged ? 1 : 0, r.delta_v_pd, r.t_x_offset);
        out << buf;
    }
}

void write_trace_csv(const std::filesystem::path& path, std::span<const CycleRecord> trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_trace_csv(out, trace);
}

std::vector<CycleRecord> read_trace_csv(std::istream& in, const std::string& name) {
    std::vector<CycleRecord> trace;
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw parse_error(name, 1, "empty trace file");
    ++lineno;
    if (line != kTraceCsvHeader) {
        throw parse_error(name, 1, "unexpected header, want '" + std::string(kTraceCsvHeader) + "'");
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        CycleRecord r;
        int engaged = 0;
        char* p = line.data();
        char* end = nullptr;
        auto next_field = [&](bool last) -> double {
            const double v = std::strtod(p, &end);
            if (end == p || (*end != ',' && !(last && (*end == '\0' || *end == '\r')))) {
                throw parse_error(name, lineno, "malformed row '" + line + "'");
            }
            p = (*end == ',') ? end + 1 : end;
            return v;
        };
        r.cycle_index = static_cast<std::int64_t>(next_field(false));
        r.t = next_field(false);
        r.v_c = next_field(false);
        r.f_inst = next_field(false);
        r.fll_code = static_cast<int>(next_field(false));
        engaged = static_cast<int>(next_field(false));
        r.delta_v_pd = next_field(false);
        r.t_x_offset = next_field(true);
        r.fll_engaged = engaged != 0;
        trace.push_back(r);
    }
    return trace;
}

std::vector<CycleRecord> read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_trace_csv(in, path.string());
}

}  // namespace isspll
