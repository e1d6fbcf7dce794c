#pragma once

#include "fk/slopes/quasipoly.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fk {

struct SlopeRow {
    std::string name;
    QuasiPolyFit min_fit, max_fit;

    /// distinct slopes of the fitted sequences
    std::set<Rational> slopes() const {
        std::set<Rational> s;
        if (min_fit.found && min_fit.slope) s.insert(*min_fit.slope);
        if (max_fit.found && max_fit.slope) s.insert(*max_fit.slope);
        return s;
    }
};

struct SlopeDiff {
    std::string name;
    std::set<Rational> computed, reference;
    bool matches() const { return computed == reference; }
};

inline std::vector<SlopeRow> slope_table(const std::vector<std::pair<std::string, FSeries>>& batch, const FitOptions& opt = {}) {
    std::vector<SlopeRow> rows;
    for (const auto& [name, F] : batch) {
        const DegreeSequences ds = degree_sequences(F);
        rows.push_back({name, fit(ds.min, opt), fit(ds.max, opt)});
    }
    return rows;
}

inline std::string format_slopes(const std::set<Rational>& s) {
    std::string out;
    for (const auto& v : s) out += (out.empty() ? "" : ",") + to_string(v);
    return out;
}

/// knot, slopes, then min and max fit metadata
inline std::string slope_table_tsv(const std::vector<SlopeRow>& rows) {
    std::ostringstream os;
    os << "knot\tslopes\tmin_period\tmin_onset\tmax_period\tmax_onset\tmarkers\n";
    for (const auto& r : rows) {
        std::string markers;
        if (!r.min_fit.found || !r.max_fit.found) markers += "no-fit;";
        if (!r.min_fit.a_constant || !r.max_fit.a_constant) markers += "periodic-a;";
        if ((r.min_fit.found && !r.min_fit.slope) || (r.max_fit.found && !r.max_fit.slope)) markers += "constant-degree;";
        os << r.name << '\t' << format_slopes(r.slopes()) << '\t' << r.min_fit.period << '\t' << r.min_fit.onset << '\t'
           << r.max_fit.period << '\t' << r.max_fit.onset << '\t' << markers << '\n';
    }
    return os.str();
}

/// reference rows "knot<TAB>s1,s2,..."; lines starting with '#' are comments
inline std::map<std::string, std::set<Rational>> parse_slope_reference(std::istream& in) {
    std::map<std::string, std::set<Rational>> ref;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::invalid_argument("reference row without a tab: " + line);
        std::set<Rational> s;
        std::stringstream ss(line.substr(tab + 1));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) s.insert(parse_rational(item));
        ref[line.substr(0, tab)] = s;
    }
    return ref;
}

inline std::vector<SlopeDiff> diff_slopes(const std::vector<SlopeRow>& rows, const std::map<std::string, std::set<Rational>>& ref) {
    std::vector<SlopeDiff> out;
    for (const auto& r : rows) {
        auto it = ref.find(r.name);
        if (it == ref.end()) continue;
        out.push_back({r.name, r.slopes(), it->second});
    }
    return out;
}

}  // namespace fk
