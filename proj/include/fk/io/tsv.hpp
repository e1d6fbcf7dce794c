#pragma once

#include "fk/braid/braid.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fk {

/// one fixture row: name, strand count, braid word, optional datum sign string
struct BraidRecord {
    std::string name;
    int strands = 1;
    std::string braid;
    std::optional<std::string> datum;

    friend bool operator==(const BraidRecord&, const BraidRecord&) = default;
};

struct TsvError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto tab = line.find('\t', pos);
        out.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
        if (tab == std::string::npos) break;
        pos = tab + 1;
    }
    return out;
}

inline std::string emit_record(const BraidRecord& r) {
    std::string line = r.name + '\t' + std::to_string(r.strands) + '\t' + r.braid;
    if (r.datum) line += '\t' + *r.datum;
    return line;
}

inline BraidRecord parse_record(const std::string& line) {
    auto f = split_tabs(line);
    if (f.size() < 3 || f.size() > 4) throw TsvError("expected 3 or 4 tab-separated fields: " + line);
    BraidRecord r;
    r.name = f[0];
    if (r.name.empty()) throw TsvError("empty knot name");
    try {
        std::size_t used = 0;
        r.strands = std::stoi(f[1], &used);
        if (used != f[1].size() || r.strands < 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw TsvError("bad strand count: " + f[1]);
    }
    r.braid = f[2];
    parse_braid(r.braid, r.strands);  // validates indices against the strand count
    if (f.size() == 4) {
        if (f[3].find_first_not_of("+-") != std::string::npos) throw TsvError("datum must consist of '+' and '-'");
        r.datum = f[3];
    }
    return r;
}

/// rows of a fixture file; blank lines and lines starting with '#' are skipped
inline std::vector<BraidRecord> read_records(std::istream& in) {
    std::vector<BraidRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(parse_record(line));
    }
    return out;
}

inline std::vector<BraidRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TsvError("cannot open " + path);
    return read_records(in);
}

inline BraidRecord find_record(const std::vector<BraidRecord>& rows, const std::string& name) {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw TsvError("no row named " + name);
}

}  // namespace fk
