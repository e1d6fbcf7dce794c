#pragma once

#include "fk/qalg/laurent.hpp"
#include "fk/qalg/xseries.hpp"
#include "fk/statesum/rmatrix.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace fk {

/**
 * Dense work series for the propagation kernel: rows[r] is the q-coefficient
 * of x^{(x0 + r)/2}. Coefficients use T (Checked on the fast path, Int otherwise).
 */
template <class T>
struct KSeries {
    int x0 = 0;
    std::vector<Laurent<T>> rows;

    bool is_zero() const {
        for (const auto& r : rows)
            if (!r.is_zero()) return false;
        return true;
    }

    /// smallest doubled x-exponent with a nonzero row (INT_MAX when zero)
    int min_x2() const {
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!rows[r].is_zero()) return x0 + static_cast<int>(r);
        return INT_MAX;
    }

    void normalize() {
        std::size_t a = 0;
        while (a < rows.size() && rows[a].is_zero()) ++a;
        if (a == rows.size()) {
            rows.clear();
            x0 = 0;
            return;
        }
        std::size_t b = rows.size();
        while (rows[b - 1].is_zero()) --b;
        rows.erase(rows.begin() + b, rows.end());
        rows.erase(rows.begin(), rows.begin() + a);
        x0 += static_cast<int>(a);
    }

    /// drop every x2 >= limit
    void truncate(int limit) {
        if (rows.empty()) return;
        if (limit <= x0) {
            rows.clear();
            x0 = 0;
            return;
        }
        if (limit - x0 < static_cast<int>(rows.size())) rows.resize(limit - x0);
        normalize();
    }

    void add(const KSeries& o) {
        if (o.rows.empty()) return;
        if (rows.empty()) {
            *this = o;
            return;
        }
        const int lo = std::min(x0, o.x0);
        const int hi = std::max(x0 + static_cast<int>(rows.size()), o.x0 + static_cast<int>(o.rows.size()));
        if (lo < x0) {
            rows.insert(rows.begin(), x0 - lo, Laurent<T>());
            x0 = lo;
        }
        if (hi - x0 > static_cast<int>(rows.size())) rows.resize(hi - x0);
        for (std::size_t r = 0; r < o.rows.size(); ++r) rows[o.x0 - x0 + r] += o.rows[r];
        normalize();
    }

    /// multiply by an R-matrix entry, keeping x2 < limit
    void apply(const RFactors& f, const Laurent<T>& binom, int limit) {
        x0 += static_cast<int>(f.x2);
        truncate(limit);
        if (rows.empty()) return;
        const T s = f.sign < 0 ? T(-1) : T(1);
        for (auto& r : rows) {
            if (r.is_zero()) continue;
            r = r * binom;
            r.shift_in_place(static_cast<int>(f.q2));
            if (f.sign < 0) r *= s;
        }
        if (!f.mul_q2.empty() || !f.div_q2.empty()) {
            const int want = limit - x0;
            if (want > static_cast<int>(rows.size())) rows.resize(want);
        }
        const int R = static_cast<int>(rows.size());
        for (long m : f.mul_q2)
            for (int r = R - 1; r >= 2; --r) rows[r].add_scaled_shifted(rows[r - 2], T(-1), static_cast<int>(m));
        for (long d : f.div_q2)
            for (int r = 2; r < R; ++r) rows[r].add_scaled_shifted(rows[r - 2], T(1), static_cast<int>(d));
        normalize();
    }

    FSeries to_fseries(int x_order) const {
        FSeries out(x_order);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!rows[r].is_zero()) out.add(x0 + static_cast<int>(r), rows[r].template convert<Int>());
        return out;
    }
};

}  // namespace fk
