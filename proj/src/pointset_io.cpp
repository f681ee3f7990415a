#include "tukey/pointset_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tukey::io {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw std::invalid_argument("bad number: '" + token + "'");
    return v;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

PointSet read_points(std::istream& in) {
    PointSet out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        size_t comma = body.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected 'x,y'");
        try {
            Point p{parse_double(trim(body.substr(0, comma))),
                    parse_double(trim(body.substr(comma + 1)))};
            out.push_back(p);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": " + e.what());
        }
    }
    return out;
}

PointSet read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_points(in);
}

std::string write_points(const PointSet& points) {
    std::string out;
    for (const Point& p : points) {
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += '\n';
    }
    return out;
}

void write_points_file(const PointSet& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << write_points(points);
}

}  // namespace tukey::io
