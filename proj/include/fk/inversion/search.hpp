#pragma once

#include "fk/braid/diagram.hpp"
#include "fk/braid/random_walk.hpp"
#include "fk/inversion/datum.hpp"
#include "fk/inversion/niceness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fk {

struct SearchBudget {
    WalkOptions walk;          // seed and walk length
    long max_words = 1000;     // braid words examined
    long max_data = 1000000;   // data checked for niceness
    int max_length = 16;       // longer words are skipped
};

struct SearchStats {
    long words_tried = 0;
    long data_tried = 0;
    long data_found = 0;  // locally admissible data over all words
};

struct SearchResult {
    BraidWord braid;
    InversionDatum datum;
    NicenessCertificate certificate;
    std::uint64_t seed = 0;
    long word_index = 0;  // position of the braid in the walk, 0 for the input itself
};

struct SearchOutcome {
    std::optional<SearchResult> result;
    SearchStats stats;
};

/// nice data of one braid word, in enumeration order
inline std::vector<std::pair<InversionDatum, NicenessCertificate>> nice_data(const BraidWord& b, long* tried = nullptr) {
    const DiagramGraph g = diagram(b);
    std::vector<std::pair<InversionDatum, NicenessCertificate>> out;
    for (const auto& d : enumerate_data(g)) {
        if (tried) ++*tried;
        auto cert = niceness_check(g, d);
        if (cert.nice) out.emplace_back(d, std::move(cert));
    }
    return out;
}

/**
 * Random walk over braid words of the same knot; the first word with a nice
 * datum wins, and among its nice data the lexicographically smallest sign
 * string is returned.
 */
inline SearchOutcome search_datum(const BraidWord& b, const SearchBudget& budget = {}) {
    SearchOutcome out;
    long index = 0;
    random_walk(b, budget.walk, [&](const BraidWord& w) {
        const long here = index++;
        if (static_cast<int>(w.letters.size()) > budget.max_length) return true;
        if (out.stats.words_tried >= budget.max_words || out.stats.data_tried >= budget.max_data) return false;
        ++out.stats.words_tried;
        const DiagramGraph g = diagram(w);
        std::optional<SearchResult> best;
        std::string best_key;
        for (const auto& d : enumerate_data(g)) {
            ++out.stats.data_found;
            if (out.stats.data_tried >= budget.max_data) break;
            ++out.stats.data_tried;
            auto cert = niceness_check(g, d);
            if (!cert.nice) continue;
            const std::string key = datum_to_string(g, d);
            if (!best || key < best_key) {
                best = SearchResult{w, d, std::move(cert), budget.walk.seed, here};
                best_key = key;
            }
        }
        if (!best) return true;
        out.result = std::move(best);
        return false;
    });
    return out;
}

/**
 * Connected sum with the unknot sigma_1 sigma_2 sigma_2 sigma_2^{-1}: two
 * stabilizations on new strands n+1, n+2 followed by a canceling pair of the
 * last generator, appended at the top of the word.
 */
inline BraidWord unknot_gadget_sum(const BraidWord& b) {
    BraidWord r = b;
    const int n = b.strands;
    r.strands = n + 2;
    r.letters.push_back({n, 1});
    r.letters.push_back({n + 1, 1});
    r.letters.push_back({n + 1, 1});
    r.letters.push_back({n + 1, -1});
    return r;
}

}  // namespace fk
