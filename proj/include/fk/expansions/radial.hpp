#pragma once

#include "fk/qalg/qseries.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fk {

struct RadialOptions {
    int eps_from = 4;         // largest epsilon is 2^-eps_from
    int eps_to = 12;          // smallest epsilon is 2^-eps_to
    int richardson_order = 3;
    double tail_tolerance = 1e-6;  // bound on order^k (1 - eps)^order / eps for a usable epsilon
};

struct RadialEstimate {
    int k = 0;  // estimates lim (1/k!) d^k c / dq^k as q -> 1 from below
    double value = 0;
    double spread = 0;
    bool divergent = false;
    bool sufficient = false;  // at least two usable ladder points
    std::vector<double> epsilons;
    std::vector<double> samples;
};

/// (1/k!) d^k/dq^k of the known part of c at q
inline long double radial_derivative(const QSeriesTrunc& c, int k, long double q) {
    long double s = 0;
    c.known().for_each([&](int e2, const Int& v) {
        if (e2 % 2 != 0) throw std::domain_error("radial limits need integer q-exponents");
        const int e = e2 / 2;
        long double f = 1;
        for (int t = 0; t < k; ++t) f *= static_cast<long double>(e - t) / static_cast<long double>(t + 1);
        s += static_cast<long double>(v.convert_to<double>()) * f * std::pow(q, static_cast<long double>(e - k));
    });
    return s;
}

/**
 * Limits of c and its first k_max scaled derivatives as q -> 1 from below,
 * sampled at q = 1 - eps on the ladder eps = 2^-eps_from .. 2^-eps_to and
 * Richardson-extrapolated in eps. A ladder point is used only when the unknown
 * tail beyond the truncation order is negligible there, measured for
 * coefficients of unit size. A value that keeps
 * growing by at least 1.5x per halving of eps is reported as divergent.
 */
inline std::vector<RadialEstimate> radial_limits(const QSeriesTrunc& c, int k_max, const RadialOptions& opt = {}) {
    const double M = c.order() / 2.0;
    std::vector<RadialEstimate> out;
    for (int k = 0; k <= k_max; ++k) {
        RadialEstimate r;
        r.k = k;
        for (int p = opt.eps_from; p <= opt.eps_to; ++p) {
            const double eps = std::ldexp(1.0, -p);
            if (std::pow(M, k) * std::exp(M * std::log1p(-eps)) / eps > opt.tail_tolerance) break;
            r.epsilons.push_back(eps);
            r.samples.push_back(static_cast<double>(radial_derivative(c, k, 1.0L - eps)));
        }
        const std::size_t n = r.samples.size();
        r.sufficient = n >= 2;
        if (n >= 3) {
            bool growing = true;
            for (std::size_t i = n - 3; i + 1 < n; ++i)
                if (!(std::abs(r.samples[i + 1]) >= 1.5 * std::abs(r.samples[i]))) growing = false;
            r.divergent = growing;
        }
        if (n == 0) {
            out.push_back(r);
            continue;
        }
        // T[l][i] eliminates eps^1..eps^l using consecutive halvings
        std::vector<std::vector<double>> T{r.samples};
        for (int l = 1; l <= opt.richardson_order && T.back().size() >= 2; ++l) {
            const auto& prev = T.back();
            const double f = std::ldexp(1.0, l);
            std::vector<double> next;
            for (std::size_t i = 0; i + 1 < prev.size(); ++i) next.push_back((f * prev[i + 1] - prev[i]) / (f - 1));
            T.push_back(std::move(next));
        }
        r.value = T.back().back();
        r.spread = T.size() >= 2 ? std::abs(T.back().back() - T[T.size() - 2].back()) : INFINITY;
        out.push_back(r);
    }
    return out;
}

}  // namespace fk
