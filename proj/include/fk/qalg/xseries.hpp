#pragma once

#include "fk/qalg/laurent.hpp"
#include "fk/qalg/qseries.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fk {

/**
 * Truncated series in x^{1/2}. Keys are doubled x-exponents, all strictly
 * below x_order; zero coefficients are never stored.
 */
template <class C>
class XSeries {
public:
    XSeries() = default;
    explicit XSeries(int x_order) : order_(x_order) {}
    XSeries(int x2, C c, int x_order) : order_(x_order) { add(x2, std::move(c)); }

    static XSeries one(int x_order) { return XSeries(0, C(HalfLaurent::constant(1)), x_order); }

    int x_order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, C>& terms() const { return terms_; }

    /// dx: minimal stored doubled x-exponent
    int dx() const {
        if (terms_.empty()) throw std::domain_error("dx of zero series");
        return terms_.begin()->first;
    }
    const C& leading() const { return terms_.begin()->second; }

    C coeff(int x2) const {
        if (x2 >= order_) throw std::out_of_range("x-coefficient beyond truncation order");
        auto it = terms_.find(x2);
        return it == terms_.end() ? C() : it->second;
    }

    void add(int x2, const C& c) {
        if (x2 >= order_) return;
        auto it = terms_.find(x2);
        if (it == terms_.end()) {
            if (!is_zero_coeff(c)) terms_.emplace(x2, c);
            return;
        }
        it->second += c;
        if (is_zero_coeff(it->second)) terms_.erase(it);
    }

    void set_order(int o) {
        order_ = std::min(order_, o);
        terms_.erase(terms_.lower_bound(order_), terms_.end());
    }

    XSeries& operator+=(const XSeries& o) {
        set_order(o.order_);
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    XSeries& operator-=(const XSeries& o) {
        set_order(o.order_);
        for (const auto& [e, c] : o.terms_) add(e, -c);
        return *this;
    }
    friend XSeries operator+(XSeries a, const XSeries& b) { return a += b; }
    friend XSeries operator-(XSeries a, const XSeries& b) { return a -= b; }
    XSeries operator-() const {
        XSeries r(order_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend XSeries operator*(const XSeries& a, const XSeries& b) {
        const int amin = a.terms_.empty() ? a.order_ : a.terms_.begin()->first;
        const int bmin = b.terms_.empty() ? b.order_ : b.terms_.begin()->first;
        XSeries r(std::min(a.order_ + bmin, b.order_ + amin));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                if (ea + eb < r.order_) r.add(ea + eb, ca * cb);
        return r;
    }
    XSeries& operator*=(const XSeries& o) { return *this = *this * o; }

    /// multiply every coefficient by c (same x-exponent)
    XSeries scaled(const C& c) const {
        XSeries r(order_);
        for (const auto& [e, v] : terms_) r.add(e, v * c);
        return r;
    }

    /// multiply by x^{x2/2}
    XSeries shifted(int x2) const {
        XSeries r(order_ + x2);
        for (const auto& [e, v] : terms_) r.terms_.emplace(e + x2, v);
        return r;
    }

    friend bool operator==(const XSeries& a, const XSeries& b) { return a.order_ == b.order_ && a.terms_ == b.terms_; }

    /// agreement of all coefficients below min(order, bound)
    bool agrees_below(const XSeries& o, int bound) const {
        const int lim = std::min({order_, o.order_, bound});
        auto cut = [lim](const std::map<int, C>& m) {
            std::map<int, C> r;
            for (const auto& [e, c] : m)
                if (e < lim) r.emplace(e, c);
            return r;
        };
        return cut(terms_) == cut(o.terms_);
    }

private:
    static bool is_zero_coeff(const C& c) { return c.is_zero(); }

    int order_ = INT_MAX / 4;
    std::map<int, C> terms_;
};

using FSeries = XSeries<HalfLaurent>;

template <class C>
std::string pretty_x(const XSeries<C>& s, const std::string& var = "x") {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << pretty(c) << ")";
        if (e != 0) os << "*" << var << "^" << (e % 2 == 0 ? std::to_string(e / 2) : "(" + std::to_string(e) + "/2)");
    }
    if (first) os << "0";
    os << " + O(" << var << "^" << format_exponent(s.x_order(), true) << ")";
    return os.str();
}

}  // namespace fk
