#include "symkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace symkit::io {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double rounded = std::strtod(buf, nullptr);
    const auto res = std::to_chars(buf, buf + sizeof buf, rounded);
    return std::string(buf, res.ptr);
}

namespace {

void emit(std::ostringstream& os, const nlohmann::ordered_json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{' << nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad << nlohmann::json(it.key()).dump() << (indent > 0 ? ": " : ":");
                emit(os, it.value(), indent, depth + 1);
            }
            os << nl << close << '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            const bool flat = std::none_of(j.begin(), j.end(), [](const auto& v) { return v.is_structured(); });
            if (flat) {
                os << '[';
                bool first = true;
                for (const auto& v : j) {
                    if (!first) os << (indent > 0 ? ", " : ",");
                    first = false;
                    emit(os, v, indent, depth + 1);
                }
                os << ']';
                return;
            }
            os << '[' << nl;
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad;
                emit(os, v, indent, depth + 1);
            }
            os << nl << close << ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            const std::string s = format_number(v);
            if (std::isfinite(v)) {
                os << s;
                // keep floats recognizable as floats
                if (s.find_first_of(".eE") == std::string::npos) os << ".0";
            } else {
                os << '"' << s << '"';
            }
            return;
        }
        default: os << j.dump(); return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
    std::ostringstream os;
    emit(os, j, indent, 0);
    os << '\n';
    return os.str();
}

std::string write_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::runtime_error("CSV row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace symkit::io
