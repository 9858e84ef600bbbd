#include "isspll/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace isspll {

namespace {

std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    return s;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& why) {
    throw ConfigParseError(name + ":" + std::to_string(line) + ": " + why);
}

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        out = true;
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        out = false;
        return true;
    }
    return false;
}

}  // namespace

SimConfig parse_config(std::istream& in, const std::string& name) {
    SimConfig cfg;
    bool i_chg_set = false;
    std::string section;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find_first_of("#;"); pos != std::string::npos) {
            line.erase(pos);
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(name, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "loop" && section != "vco" && section != "fll" &&
                section != "noise" && section != "run") {
                fail(name, lineno, "unknown section [" + section + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(name, lineno, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(name, lineno, "empty key or value");
        if (section.empty()) fail(name, lineno, "key '" + key + "' before any section");

        if (key == "enabled") {
            if (section != "noise") fail(name, lineno, "'enabled' belongs to [noise]");
            if (!parse_bool(value, cfg.noise.enabled)) {
                fail(name, lineno, "'" + value + "' is not a boolean");
            }
            continue;
        }

        const ConfigField* field = find_field(key);
        if (field == nullptr) fail(name, lineno, "unknown key '" + key + "'");
        if (section != field->section) {
            fail(name, lineno, "key '" + key + "' belongs to [" + field->section + "]");
        }

        if (key == "seed") {  // full 64-bit range, no double round-trip
            char* end = nullptr;
            cfg.seed = std::strtoull(value.c_str(), &end, 0);
            if (end == nullptr || *end != '\0') fail(name, lineno, "'" + value + "' is not an integer");
            continue;
        }

        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == nullptr || *end != '\0') fail(name, lineno, "'" + value + "' is not a number");
        if (field->integral && v != std::floor(v)) {
            fail(name, lineno, "key '" + key + "' wants an integer, got '" + value + "'");
        }
        field->set(cfg, v);
        if (key == "i_chg") i_chg_set = true;
    }

    if (!i_chg_set) cfg.i_chg = cfg.i_bias;  // full differential switching by default
    return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError(path.string() + ": cannot open");
    return parse_config(in, path.string());
}

std::string format_config(const SimConfig& cfg) {
    std::ostringstream out;
    std::string section;
    char buf[128];
    for (const auto& f : config_fields()) {
        if (section != f.section) {
            if (!section.empty()) out << '\n';
            section = f.section;
            out << '[' << section << "]\n";
            if (section == "noise") {
                out << "enabled = " << (cfg.noise.enabled ? "true" : "false") << '\n';
            }
        }
        if (std::string_view(f.key) == "seed") {
            out << "seed = " << cfg.seed << '\n';
            continue;
        }
        const double v = f.get(cfg);
        if (f.integral) {
            std::snprintf(buf, sizeof buf, "%s = %lld\n", f.key,
                          static_cast<long long>(v));
        } else {
            std::snprintf(buf, sizeof buf, "%s = %.17g\n", f.key, v);
        }
        out << buf;
    }
    return out.str();
}

}  // namespace isspll
