#include "netgate/csv.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <unordered_map>

#include "netgate/error.hpp"

namespace netgate {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(std::string_view(line).substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

namespace {

std::optional<double> to_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

}  // namespace

Eigen::VectorXd read_unit_values(std::istream& in, std::span<const std::string> labels) {
    std::vector<double> ordered;
    std::unordered_map<std::string, double> by_label;
    std::string line;
    std::size_t line_no = 0;
    bool first_data = true;
    int layout = 0;  // 1 = single column, 2 = label,value
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto fields = split_fields(t, ',');
        if (fields.size() == 1 && t.find_first_of(" \t") != std::string::npos)
            fields = split_fields(t, t.find('\t') != std::string::npos ? '\t' : ' ');
        if (fields.size() > 2) throw ParseError("expected one or two columns", line_no);
        const auto value = to_double(fields.back());
        if (!value) {
            if (first_data) {  // header line
                first_data = false;
                continue;
            }
            throw ParseError("not a number: '" + fields.back() + "'", line_no);
        }
        first_data = false;
        const int this_layout = static_cast<int>(fields.size());
        if (layout == 0) layout = this_layout;
        if (layout != this_layout) throw ParseError("inconsistent column count", line_no);
        if (layout == 1) {
            ordered.push_back(*value);
        } else if (!by_label.emplace(fields[0], *value).second) {
            throw ParseError("duplicate label '" + fields[0] + "'", line_no);
        }
    }
    const auto n = labels.size();
    Eigen::VectorXd out(static_cast<Eigen::Index>(n));
    if (layout == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            auto it = by_label.find(labels[i]);
            if (it == by_label.end()) throw ParseError("no value for node '" + labels[i] + "'", 0);
            out[static_cast<Eigen::Index>(i)] = it->second;
        }
        return out;
    }
    if (ordered.size() != n)
        throw ParseError("expected " + std::to_string(n) + " values, found " +
                             std::to_string(ordered.size()),
                         0);
    for (std::size_t i = 0; i < n; ++i) out[static_cast<Eigen::Index>(i)] = ordered[i];
    return out;
}

Eigen::VectorXd read_unit_values_file(const std::string& path, std::span<const std::string> labels) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_unit_values(in, labels);
}

}  // namespace netgate
