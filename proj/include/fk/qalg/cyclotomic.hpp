#pragma once

#include "fk/qalg/laurent.hpp"
#include "fk/qalg/polydiv.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fk {

/// p-th cyclotomic polynomial as coefficient vector (index = power)
inline const std::vector<Int>& cyclotomic_poly(int p) {
    thread_local std::map<int, std::vector<Int>> cache;
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    IntLaurent num = IntLaurent::monomial(p) - IntLaurent::constant(1);
    for (int d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        const std::vector<Int> coeffs = cyclotomic_poly(d);
        IntLaurent phi_d;
        for (std::size_t k = 0; k < coeffs.size(); ++k) phi_d.add_term(static_cast<int>(k), coeffs[k]);
        num = exact_divide(num, phi_d);
    }
    std::vector<Int> out(num.max_exp() + 1);
    for (int k = 0; k <= num.max_exp(); ++k) out[k] = num.coeff(k);
    return cache.emplace(p, std::move(out)).first->second;
}

/// Element of Q(zeta_p) in the power basis reduced modulo Phi_p.
class CycElem {
public:
    CycElem() = default;
    explicit CycElem(int p) : p_(p), c_(degree_of(p)) {}
    CycElem(int p, Rational v) : CycElem(p) { c_[0] = std::move(v); }

    static CycElem zeta_pow(int p, long k) {
        CycElem r(p);
        std::vector<Rational> full(p);
        long e = ((k % p) + p) % p;
        full[e] = 1;
        r.reduce_from(full);
        return r;
    }

    static int degree_of(int p) { return static_cast<int>(cyclotomic_poly(p).size()) - 1; }

    int p() const { return p_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    CycElem& operator+=(const CycElem& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    CycElem& operator-=(const CycElem& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    CycElem& operator*=(const Rational& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
    friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
    friend CycElem operator*(const CycElem& a, const CycElem& b) {
        a.check(b);
        std::vector<Rational> full(2 * a.c_.size() + 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) full[i + j] += a.c_[i] * b.c_[j];
        }
        CycElem r(a.p_);
        r.reduce_from(full);
        return r;
    }
    friend bool operator==(const CycElem& a, const CycElem& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

    /// build from integer coefficients in the power basis (already reduced)
    static CycElem from_basis(int p, const std::vector<long>& v) {
        CycElem r(p);
        std::vector<Rational> full(v.begin(), v.end());
        if (full.size() < r.c_.size()) full.resize(r.c_.size());
        r.reduce_from(full);
        return r;
    }

    std::string str(const std::string& z = "z") const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Rational v = c_[k];
            bool neg = v < 0;
            if (neg) v = -v;
            os << (first ? (neg ? "-" : "") : (neg ? "-" : "+"));
            first = false;
            if (k == 0 || v != 1) os << to_string(v);
            if (k > 0) os << z << (k > 1 ? "^" + std::to_string(k) : "");
        }
        return first ? "0" : os.str();
    }

private:
    void check(const CycElem& o) const {
        if (o.p_ != p_) throw std::invalid_argument("cyclotomic fields differ");
    }
    void reduce_from(std::vector<Rational> full) {
        const auto& phi = cyclotomic_poly(p_);
        const int deg = static_cast<int>(phi.size()) - 1;
        for (int k = static_cast<int>(full.size()) - 1; k >= deg; --k) {
            if (full[k] == 0) continue;
            Rational t = full[k];
            for (int i = 0; i <= deg; ++i) full[k - deg + i] -= t * Rational(phi[i]);
        }
        c_.assign(deg, Rational(0));
        for (int k = 0; k < deg && k < static_cast<int>(full.size()); ++k) c_[k] = full[k];
    }

    int p_ = 2;
    std::vector<Rational> c_;
};

}  // namespace fk
