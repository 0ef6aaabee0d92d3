#include "matchstudy/common/csv.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "matchstudy/common/errors.h"

namespace matchstudy::csv {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string token;
    for (char ch : line) {
        if (ch == delimiter) {
            fields.push_back(token);
            token.clear();
        } else {
            token.push_back(ch);
        }
    }
    fields.push_back(token);
    return fields;
}

std::string trim(std::string value) {
    const auto first = value.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = value.find_last_not_of(" \t\r\n");
    return value.substr(first, last - first + 1);
}

std::string format_full(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    double parsed = std::strtod(buf, nullptr);
    if (parsed == value) {
        // Prefer the shortest representation that still round-trips.
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, value);
            if (std::strtod(shorter, nullptr) == value) {
                return shorter;
            }
        }
    }
    return buf;
}

std::string format_fixed(double value, int decimals) {
    if (std::isnan(value)) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

bool parse_double(const std::string& field, double& out) {
    const std::string s = trim(field);
    if (s.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file for reading: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path);
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

std::string fnv1a_hex(const std::string& content) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : content) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace matchstudy::csv
