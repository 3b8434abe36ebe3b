#include "skydiag/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace skydiag {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    for (std::string& f : fields) {
        std::size_t b = f.find_first_not_of(" \t");
        std::size_t e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
    }
    return fields;
}

long long parse_int(const std::string& s, std::size_t row) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || errno != 0 || end != s.c_str() + s.size())
        throw ParseError("row " + std::to_string(row) + ": '" + s + "' is not an integer");
    return v;
}

double parse_number(const std::string& s, std::size_t row) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || errno != 0 || end != s.c_str() + s.size())
        throw ParseError("row " + std::to_string(row) + ": '" + s + "' is not numeric");
    return v;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    while (!lines.empty() && split_row(lines.back()) == std::vector<std::string>{""})
        lines.pop_back();
    return lines;
}

}  // namespace

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << "id";
    for (int a = 1; a <= ds.dim; ++a) out << ",x" << a;
    out << "\n";
    for (const Point& p : ds.points) {
        out << p.id;
        for (Coord c : p.coords) out << ',' << c;
        out << "\n";
    }
}

Dataset read_dataset_csv(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ParseError("missing header row");
    std::vector<std::string> header = split_row(lines[0]);
    if (header.size() < 3 || header[0] != "id")
        throw ParseError("header must be id,x1,...,xd with d >= 2");

    Dataset ds;
    ds.dim = static_cast<int>(header.size()) - 1;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_row(lines[r]);
        if (fields.size() != header.size())
            throw ParseError("row " + std::to_string(r + 1) + ": expected " +
                             std::to_string(header.size()) + " fields");
        Point p;
        p.id = static_cast<PointId>(parse_int(fields[0], r + 1));
        for (int a = 0; a < ds.dim; ++a) p.coords.push_back(parse_int(fields[a + 1], r + 1));
        ds.points.push_back(std::move(p));
    }
    ds.validate();
    return ds;
}

Dataset load_columns_csv(const std::string& path, const std::vector<std::string>& columns,
                         const std::vector<bool>& max_is_better, long long scale) {
    if (columns.size() != max_is_better.size())
        throw std::invalid_argument("load_columns_csv: one direction flag per column");
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ParseError("missing header row");
    std::vector<std::string> header = split_row(lines[0]);

    std::vector<std::size_t> col_index;
    for (const std::string& name : columns) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("missing column '" + name + "'");
        col_index.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    Dataset ds;
    ds.dim = static_cast<int>(columns.size());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_row(lines[r]);
        Point p;
        p.id = static_cast<PointId>(ds.points.size());
        for (std::size_t k = 0; k < col_index.size(); ++k) {
            if (col_index[k] >= fields.size())
                throw ParseError("row " + std::to_string(r + 1) + ": too few fields");
            double v = parse_number(fields[col_index[k]], r + 1);
            long long c = std::llround(v * static_cast<double>(scale));
            p.coords.push_back(max_is_better[k] ? -c : c);
        }
        ds.points.push_back(std::move(p));
    }
    return ds;
}

}  // namespace skydiag
