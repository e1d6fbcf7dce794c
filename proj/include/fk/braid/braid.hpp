#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace fk {

struct Letter {
    int index = 1;  // generator sigma_index, 1-based
    int sign = 1;   // +1 or -1

    friend bool operator==(const Letter& a, const Letter& b) { return a.index == b.index && a.sign == b.sign; }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    /// total order used by normalize: index ascending, then + before -
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.index != b.index) return a.index < b.index;
        return a.sign > b.sign;
    }
    Letter inverse() const { return {index, -sign}; }
};

/// Braid word on `strands` strands; letters listed bottom to top.
struct BraidWord {
    int strands = 1;
    std::vector<Letter> letters;

    BraidWord() = default;
    BraidWord(int n, std::vector<Letter> w) : strands(n), letters(std::move(w)) { check(); }

    void check() const {
        if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
        for (const auto& l : letters) {
            if (l.index < 1 || l.index >= strands) throw std::invalid_argument("generator index out of range");
            if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +-1");
        }
    }

    std::size_t length() const { return letters.size(); }
    int writhe() const {
        int w = 0;
        for (const auto& l : letters) w += l.sign;
        return w;
    }

    friend bool operator==(const BraidWord& a, const BraidWord& b) { return a.strands == b.strands && a.letters == b.letters; }
    friend bool operator!=(const BraidWord& a, const BraidWord& b) { return !(a == b); }
    friend bool operator<(const BraidWord& a, const BraidWord& b) {
        return std::tie(a.strands, a.letters) < std::tie(b.strands, b.letters);
    }
};

/// "1 -2 1 -2" style notation; strands = max |index| + 1 unless given
inline BraidWord parse_braid(const std::string& text, int strands = 0) {
    std::istringstream is(text);
    std::vector<Letter> w;
    std::string tok;
    int maxi = 0;
    while (is >> tok) {
        if (tok == "," ) continue;
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        int v = 0;
        const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || end != tok.data() + tok.size() || v == 0) throw std::invalid_argument("bad braid letter: " + tok);
        w.push_back({std::abs(v), v > 0 ? 1 : -1});
        maxi = std::max(maxi, std::abs(v));
    }
    int n = strands > 0 ? strands : maxi + 1;
    return BraidWord(n, std::move(w));
}

inline std::string format_braid(const BraidWord& b) {
    std::ostringstream os;
    for (std::size_t k = 0; k < b.letters.size(); ++k) {
        if (k) os << ' ';
        os << b.letters[k].sign * b.letters[k].index;
    }
    return os.str();
}

/// permutation of the closure: perm[p] = position reached from bottom position p
inline std::vector<int> closure_permutation(const BraidWord& b) {
    std::vector<int> at(b.strands);
    std::iota(at.begin(), at.end(), 0);
    // at[pos] = starting strand currently at position pos
    for (const auto& l : b.letters) std::swap(at[l.index - 1], at[l.index]);
    std::vector<int> perm(b.strands);
    for (int pos = 0; pos < b.strands; ++pos) perm[at[pos]] = pos;
    return perm;
}

inline int closure_components(const BraidWord& b) {
    auto perm = closure_permutation(b);
    std::vector<bool> seen(perm.size(), false);
    int c = 0;
    for (std::size_t s = 0; s < perm.size(); ++s) {
        if (seen[s]) continue;
        ++c;
        for (std::size_t t = s; !seen[t]; t = perm[t]) seen[t] = true;
    }
    return c;
}

inline BraidWord band_generator(int u, int v, int n) {
    if (u < 1 || v < u || v > n - 1) throw std::invalid_argument("band generator indices out of range");
    std::vector<Letter> w;
    for (int k = v; k > u; --k) w.push_back({k, 1});
    w.push_back({u, 1});
    for (int k = u + 1; k <= v; ++k) w.push_back({k, -1});
    return BraidWord(n, std::move(w));
}

/// concatenation a then b (a below b); strand counts are padded to the larger
inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
    BraidWord r(std::max(a.strands, b.strands), a.letters);
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

inline BraidWord inverse(const BraidWord& b) {
    BraidWord r(b.strands, {});
    for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) r.letters.push_back(it->inverse());
    return r;
}

/// word in band generators: each entry (u, v, sign)
inline BraidWord band_word(int n, const std::vector<std::tuple<int, int, int>>& bands) {
    BraidWord r(n, {});
    for (const auto& [u, v, s] : bands) {
        BraidWord g = band_generator(u, v, n);
        r = concat(r, s > 0 ? g : inverse(g));
    }
    return r;
}

inline BraidWord mirror(const BraidWord& b) {
    BraidWord r = b;
    for (auto& l : r.letters) l.sign = -l.sign;
    return r;
}

inline BraidWord shift(const BraidWord& b, int k) {
    BraidWord r(b.strands + k, {});
    for (const auto& l : b.letters) r.letters.push_back({l.index + k, l.sign});
    return r;
}

/// b1 sigma_{n1}^m sh_{n1}(b2)
inline BraidWord connected_sum(const BraidWord& b1, const BraidWord& b2, int m) {
    BraidWord r(b1.strands + b2.strands, b1.letters);
    r.letters.push_back({b1.strands, m});
    for (const auto& l : b2.letters) r.letters.push_back({l.index + b1.strands, l.sign});
    return r;
}

enum class MoveKind { Commute, YangBaxter, Conjugate, Rotate, Stabilize, Destabilize, FreeReduce };

struct Move {
    MoveKind kind = MoveKind::Commute;
    int position = 0;
    Letter letter{1, 1};  // conjugating generator, or the stabilization sign in letter.sign
};

struct MoveError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline BraidWord apply_move(const BraidWord& b, const Move& mv) {
    const auto& w = b.letters;
    const int len = static_cast<int>(w.size());
    const int p = mv.position;
    BraidWord r = b;
    switch (mv.kind) {
        case MoveKind::Commute: {
            if (p < 0 || p + 1 >= len || std::abs(w[p].index - w[p + 1].index) < 2)
                throw MoveError("commute not applicable");
            std::swap(r.letters[p], r.letters[p + 1]);
            return r;
        }
        case MoveKind::YangBaxter: {
            if (p < 0 || p + 2 >= len) throw MoveError("yang-baxter out of range");
            const Letter a = w[p], c = w[p + 1], d = w[p + 2];
            if (!(a == d && a.sign == c.sign && std::abs(a.index - c.index) == 1))
                throw MoveError("yang-baxter not applicable");
            r.letters[p] = c;
            r.letters[p + 1] = a;
            r.letters[p + 2] = c;
            return r;
        }
        case MoveKind::Conjugate: {
            if (mv.letter.index < 1 || mv.letter.index >= b.strands) throw MoveError("conjugator out of range");
            r.letters.insert(r.letters.begin(), mv.letter);
            r.letters.push_back(mv.letter.inverse());
            return r;
        }
        case MoveKind::Rotate: {
            if (len == 0) throw MoveError("rotate on empty word");
            std::rotate(r.letters.begin(), r.letters.begin() + 1, r.letters.end());
            return r;
        }
        case MoveKind::Stabilize: {
            r.strands += 1;
            r.letters.push_back({b.strands, mv.letter.sign});
            return r;
        }
        case MoveKind::Destabilize: {
            if (b.strands < 2 || len == 0 || w.back().index != b.strands - 1) throw MoveError("destabilize not applicable");
            int count = 0;
            for (const auto& l : w)
                if (l.index == b.strands - 1) ++count;
            if (count != 1) throw MoveError("destabilize not applicable");
            r.letters.pop_back();
            r.strands -= 1;
            return r;
        }
        case MoveKind::FreeReduce: {
            if (p < 0 || p + 1 >= len || w[p] != w[p + 1].inverse()) throw MoveError("free reduction not applicable");
            r.letters.erase(r.letters.begin() + p, r.letters.begin() + p + 2);
            return r;
        }
    }
    throw MoveError("unknown move");
}

/// free and cyclic reduction to a fixed point
inline BraidWord free_reduce(const BraidWord& b) {
    std::vector<Letter> st;
    for (const auto& l : b.letters) {
        if (!st.empty() && st.back() == l.inverse())
            st.pop_back();
        else
            st.push_back(l);
    }
    std::size_t lo = 0, hi = st.size();
    while (hi - lo >= 2 && st[lo] == st[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return BraidWord(b.strands, std::vector<Letter>(st.begin() + lo, st.begin() + hi));
}

inline BraidWord normalize(const BraidWord& b) {
    BraidWord r = free_reduce(b);
    const std::size_t n = r.letters.size();
    if (n == 0) return r;
    std::vector<Letter> best = r.letters;
    std::vector<Letter> cur = r.letters;
    for (std::size_t k = 1; k < n; ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) best = cur;
    }
    return BraidWord(r.strands, std::move(best));
}

}  // namespace fk
