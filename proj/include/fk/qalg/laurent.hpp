#pragma once

#include "fk/qalg/numeric.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fk {

/**
 * Dense Laurent polynomial with integer exponents and coefficients in T.
 *
 * The exponent unit is left to the caller. HalfLaurent stores doubled
 * exponents of q, so q^{1/2} has exponent 1.
 */
template <class T>
class Laurent {
public:
    Laurent() = default;
    Laurent(int e, T c) {
        if (c != 0) {
            lo_ = e;
            c_.push_back(std::move(c));
        }
    }

    static Laurent constant(T c) { return Laurent(0, std::move(c)); }
    static Laurent monomial(int e) { return Laurent(e, T(1)); }

    bool is_zero() const { return c_.empty(); }
    int min_exp() const { return lo_; }
    int max_exp() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    std::size_t span() const { return c_.size(); }
    const std::vector<T>& raw() const { return c_; }

    T coeff(int e) const {
        if (c_.empty() || e < lo_ || e > max_exp()) return T(0);
        return c_[e - lo_];
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) f(lo_ + static_cast<int>(k), c_[k]);
    }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& v : c_)
            if (v != 0) ++n;
        return n;
    }

    void set(int e, const T& v) {
        reserve_range(e, e);
        c_[e - lo_] = v;
        trim();
    }

    void add_term(int e, const T& v) {
        if (v == 0) return;
        reserve_range(e, e);
        c_[e - lo_] += v;
        trim();
    }

    Laurent& operator+=(const Laurent& o) {
        add_scaled_shifted(o, T(1), 0);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        add_scaled_shifted(o, T(-1), 0);
        return *this;
    }

    /// this += c * X^shift * o
    void add_scaled_shifted(const Laurent& o, const T& c, int shift) {
        if (o.is_zero() || c == 0) return;
        const int olo = o.lo_ + shift;
        const int ohi = o.max_exp() + shift;
        reserve_range(olo, ohi);
        T* dst = c_.data() + (olo - lo_);
        const bool unit = (c == 1);
        const bool neg_unit = (c == -1);
        for (std::size_t k = 0; k < o.c_.size(); ++k) {
            const T& v = o.c_[k];
            if (v == 0) continue;
            if (unit)
                dst[k] += v;
            else if (neg_unit)
                dst[k] -= v;
            else
                dst[k] += c * v;
        }
        trim();
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Laurent& operator*=(const T& s) {
        if (s == 0) {
            c_.clear();
            lo_ = 0;
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    Laurent shifted(int k) const {
        Laurent r = *this;
        if (!r.c_.empty()) r.lo_ += k;
        return r;
    }
    void shift_in_place(int k) {
        if (!c_.empty()) lo_ += k;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        if (a.is_zero() || b.is_zero()) return r;
        r.lo_ = a.lo_ + b.lo_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            const T& x = a.c_[i];
            if (x == 0) continue;
            T* dst = r.c_.data() + i;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                const T& y = b.c_[j];
                if (y == 0) continue;
                dst[j] += x * y;
            }
        }
        r.trim();
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    /// drop all exponents > e
    void truncate_above(int e) {
        if (c_.empty()) return;
        if (e < lo_) {
            c_.clear();
            lo_ = 0;
            return;
        }
        if (e < max_exp()) c_.resize(e - lo_ + 1);
        trim();
    }

    /// exponent map e -> -e
    Laurent reflected() const {
        Laurent r;
        if (c_.empty()) return r;
        r.lo_ = -max_exp();
        r.c_.assign(c_.rbegin(), c_.rend());
        return r;
    }

    template <class U>
    Laurent<U> convert() const {
        Laurent<U> r;
        for_each([&](int e, const T& v) { r.add_term(e, from_int<U>(to_int(v))); });
        return r;
    }

    void trim() {
        std::size_t a = 0;
        while (a < c_.size() && c_[a] == 0) ++a;
        if (a == c_.size()) {
            c_.clear();
            lo_ = 0;
            return;
        }
        std::size_t b = c_.size();
        while (c_[b - 1] == 0) --b;
        if (a > 0 || b < c_.size()) {
            c_.erase(c_.begin() + b, c_.end());
            c_.erase(c_.begin(), c_.begin() + a);
            lo_ += static_cast<int>(a);
        }
    }

private:
    void reserve_range(int lo, int hi) {
        if (c_.empty()) {
            lo_ = lo;
            c_.assign(hi - lo + 1, T(0));
            return;
        }
        if (lo < lo_) {
            c_.insert(c_.begin(), lo_ - lo, T(0));
            lo_ = lo;
        }
        if (hi > max_exp()) c_.resize(hi - lo_ + 1, T(0));
    }

    int lo_ = 0;
    std::vector<T> c_;
};

/// Laurent polynomial in q^{1/2}: exponents are doubled.
using HalfLaurent = Laurent<Int>;

/// Laurent polynomial with unit exponents (used for x- and t-polynomials).
using IntLaurent = Laurent<Int>;

inline HalfLaurent qpow2(int e2, Int c = 1) { return HalfLaurent(e2, std::move(c)); }
inline HalfLaurent qpow(int e, Int c = 1) { return HalfLaurent(2 * e, std::move(c)); }

inline bool all_even_exponents(const HalfLaurent& p) {
    bool ok = true;
    p.for_each([&](int e, const Int&) {
        if (e % 2 != 0) ok = false;
    });
    return ok;
}

inline std::string format_exponent(int e2, bool doubled) {
    if (!doubled) return std::to_string(e2);
    if (e2 % 2 == 0) return std::to_string(e2 / 2);
    return std::to_string(e2) + "/2";
}

/// Human readable form, highest-order last, e.g. "q^-1 + 3 + q".
template <class T>
std::string pretty(const Laurent<T>& p, const std::string& var = "q", bool doubled = true) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    p.for_each([&](int e, const T& v) {
        Int c = to_int(v);
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << c;
            return;
        }
        if (c != 1) os << c << "*";
        os << var;
        if (!(doubled ? e == 2 : e == 1)) {
            std::string ex = format_exponent(e, doubled);
            if (ex.find('/') != std::string::npos || ex[0] == '-')
                os << "^(" << ex << ")";
            else
                os << "^" << ex;
        }
    });
    return os.str();
}

}  // namespace fk
