#pragma once

#include "fk/jones/colored_jones.hpp"
#include "fk/qalg/qseries.hpp"
#include "fk/qalg/xseries.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fk {

struct TailResult {
    bool stabilized = false;
    QSeriesTrunc tail;        // Phi_0 normalized to start at +q^0
    int stabilized_from = -1; // n_0
    std::vector<int> shifts;  // doubled minimal q-degree of each J_n
};

namespace detail {

/// doubled order up to which a and b agree (INT_MAX / 4 when equal)
inline int agreement_order(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent d = a - b;
    return d.is_zero() ? INT_MAX / 4 : d.min_exp();
}

inline std::vector<HalfLaurent> shifted_table(const JonesTable& J, bool unnormalized, std::vector<int>& shifts) {
    const auto& src = unnormalized ? J.unnormalized : J.values;
    std::vector<HalfLaurent> out;
    for (const auto& p : src) {
        if (p.is_zero()) throw std::domain_error("zero colored Jones polynomial");
        shifts.push_back(p.min_exp());
        // J_n is only defined up to sign here, so make the leading coefficient positive
        HalfLaurent a = p.shifted(-p.min_exp());
        out.push_back(a.coeff(0) < 0 ? -a : a);
    }
    return out;
}

}  // namespace detail

/**
 * Tail of the colored Jones function: the q-series that the minimal-degree end
 * of J_n converges to. Uses the unnormalized J'_n unless told otherwise.
 * q_order2 is doubled.
 */
inline TailResult tail(const JonesTable& J, int q_order2, bool unnormalized = true) {
    if (J.values.size() < 3) throw std::invalid_argument("tail needs at least three colors");
    TailResult r;
    std::vector<HalfLaurent> A = detail::shifted_table(J, unnormalized, r.shifts);
    const int N = static_cast<int>(A.size()) - 1;
    // the smallest n_0 with A_n = A_{n+1} below q_order2 for every n >= n_0
    int n0 = N;
    while (n0 > 0 && detail::agreement_order(A[n0 - 1], A[n0]) >= q_order2) --n0;
    // require at least one confirming pair
    if (n0 >= N) {
        r.tail = QSeriesTrunc(A[N], std::min(q_order2, detail::agreement_order(A[N - 1], A[N])));
        return r;
    }
    r.stabilized = true;
    r.stabilized_from = n0;
    r.tail = QSeriesTrunc(A[N], q_order2);
    return r;
}

struct StabilitySeries {
    std::vector<QSeriesTrunc> coeffs;  // Phi_0, Phi_1, ... each known below its own order
    std::vector<bool> stabilized;
    XSeries<QSeriesTrunc> as_series() const {
        XSeries<QSeriesTrunc> s(2 * static_cast<int>(coeffs.size()));
        for (std::size_t k = 0; k < coeffs.size(); ++k) s.add(2 * static_cast<int>(k), coeffs[k]);
        return s;
    }
};

/**
 * Stability series sum_k Phi_k(q) x^k, where x stands for q^{n+1}:
 * A_n - sum_{j<k} Phi_j q^{j(n+1)} = q^{k(n+1)} (Phi_k + o(1)) for the shifted
 * J_n = A_n. Each layer is read from the colors where it is both determined
 * by the earlier layers and confirmed by two consecutive agreements.
 */
inline StabilitySeries stability_series(const JonesTable& J, int x_order, int q_order2, bool unnormalized = true) {
    std::vector<int> shifts;
    std::vector<HalfLaurent> A = detail::shifted_table(J, unnormalized, shifts);
    const int N = static_cast<int>(A.size()) - 1;
    StabilitySeries out;
    for (int k = 0; k < x_order; ++k) {
        std::vector<HalfLaurent> R(N + 1);
        std::vector<int> known(N + 1, q_order2);
        for (int n = 0; n <= N; ++n) {
            HalfLaurent res = A[n];
            for (int j = 0; j < k; ++j) {
                res -= out.coeffs[j].known().shifted(2 * j * (n + 1));
                known[n] = std::min(known[n], out.coeffs[j].order() - 2 * (k - j) * (n + 1));
            }
            R[n] = res.is_zero() ? res : res.shifted(-2 * k * (n + 1));
        }
        int best = INT_MIN;
        HalfLaurent value;
        for (int n = 0; n + 2 <= N; ++n) {
            const int o = std::min({known[n], known[n + 1], known[n + 2], detail::agreement_order(R[n], R[n + 1]),
                                    detail::agreement_order(R[n + 1], R[n + 2])});
            if (o > best) {
                best = o;
                value = R[n + 2];
            }
        }
        const bool ok = best >= 0;
        best = std::min(best, q_order2);
        out.coeffs.push_back(QSeriesTrunc(ok ? value : HalfLaurent(), ok ? best : 0));
        out.stabilized.push_back(ok);
    }
    return out;
}

}  // namespace fk
