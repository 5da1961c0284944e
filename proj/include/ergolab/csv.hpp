#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ergolab {

/// 17 significant digits: enough to round-trip any double, so identical
/// computations serialize to identical bytes.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation anywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

/// Key-value constants file, `name = value` per line, '#' comments allowed.
inline std::map<std::string, double> read_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open constants file: " + path);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) continue;
        out[key] = std::stod(val);
    }
    return out;
}

inline void write_constants(const std::string& path,
                            const std::vector<std::pair<std::string, double>>& constants) {
    std::ofstream out = open_out(path);
    for (const auto& [name, value] : constants) out << name << " = " << g17(value) << "\n";
}

}  // namespace ergolab
