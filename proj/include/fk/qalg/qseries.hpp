#pragma once

#include "fk/qalg/laurent.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace fk {

/**
 * Truncated Laurent series in q^{1/2}. Coefficients at doubled exponents
 * >= order are unknown and never reported.
 */
class QSeriesTrunc {
public:
    QSeriesTrunc() = default;
    QSeriesTrunc(HalfLaurent p, int order) : p_(std::move(p)), order_(order) { p_.truncate_above(order_ - 1); }

    static QSeriesTrunc zero(int order) { return QSeriesTrunc(HalfLaurent(), order); }

    int order() const { return order_; }
    bool is_zero() const { return p_.is_zero(); }
    int min_exp() const { return p_.is_zero() ? order_ : p_.min_exp(); }
    const HalfLaurent& known() const { return p_; }
    Int coeff(int e2) const {
        if (e2 >= order_) throw std::out_of_range("coefficient beyond truncation order");
        return p_.coeff(e2);
    }

    QSeriesTrunc& operator+=(const QSeriesTrunc& o) {
        order_ = std::min(order_, o.order_);
        p_ += o.p_;
        p_.truncate_above(order_ - 1);
        return *this;
    }
    QSeriesTrunc& operator-=(const QSeriesTrunc& o) {
        order_ = std::min(order_, o.order_);
        p_ -= o.p_;
        p_.truncate_above(order_ - 1);
        return *this;
    }
    QSeriesTrunc operator-() const { return QSeriesTrunc(-p_, order_); }
    friend QSeriesTrunc operator+(QSeriesTrunc a, const QSeriesTrunc& b) { return a += b; }
    friend QSeriesTrunc operator-(QSeriesTrunc a, const QSeriesTrunc& b) { return a -= b; }

    friend QSeriesTrunc operator*(const QSeriesTrunc& a, const QSeriesTrunc& b) {
        const int o = std::min(a.order_ + b.min_exp(), b.order_ + a.min_exp());
        HalfLaurent pa = a.p_, pb = b.p_;
        pa.truncate_above(o - 1 - b.min_exp());
        pb.truncate_above(o - 1 - a.min_exp());
        return QSeriesTrunc(pa * pb, o);
    }
    QSeriesTrunc& operator*=(const QSeriesTrunc& o) { return *this = *this * o; }

    QSeriesTrunc shifted(int e2) const { return QSeriesTrunc(p_.shifted(e2), order_ + e2); }

    /// multiplicative inverse; requires leading coefficient +-1
    QSeriesTrunc inverse() const {
        if (p_.is_zero()) throw std::domain_error("inverse of zero series");
        const int m = p_.min_exp();
        const Int lead = p_.coeff(m);
        if (lead != 1 && lead != -1) throw std::domain_error("inverse needs unit leading coefficient");
        const int out_order = order_ - 2 * m;
        HalfLaurent u = p_.shifted(-m);
        HalfLaurent inv;
        for (int e = 0; e < out_order - (-m); ++e) {
            Int acc = (e == 0) ? Int(1) : Int(0);
            for (int k = 1; k <= e && k <= u.max_exp(); ++k) {
                Int uk = u.coeff(k);
                if (uk == 0) continue;
                acc -= uk * inv.coeff(e - k);
            }
            inv.add_term(e, acc * lead);
        }
        return QSeriesTrunc(inv.shifted(-m), out_order);
    }

    friend bool operator==(const QSeriesTrunc& a, const QSeriesTrunc& b) { return a.order_ == b.order_ && a.p_ == b.p_; }

    /// agreement on the common known range
    bool agrees_with(const QSeriesTrunc& o) const {
        const int lim = std::min(order_, o.order_);
        HalfLaurent a = p_, b = o.p_;
        a.truncate_above(lim - 1);
        b.truncate_above(lim - 1);
        return a == b;
    }

private:
    HalfLaurent p_;
    int order_ = INT_MAX / 4;
};

inline std::string pretty(const QSeriesTrunc& s, const std::string& var = "q") {
    std::string body = pretty(s.known(), var, true);
    return body + " + O(" + var + "^" + format_exponent(s.order(), true) + ")";
}

}  // namespace fk
