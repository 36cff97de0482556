#pragma once

#include <map>
#include <vector>

#include "ccalc/fp.hpp"
#include "ccalc/series.hpp"

namespace ccalc {

/// Polynomial in n formal Chern roots t_1..t_n over F_l, truncated at a total
/// degree cap.  Only used internally by the splitting-principle evaluators.
class RootPoly {
public:
    RootPoly(uint32_t prime, int nvars, int degree_cap)
        : prime_(prime), nvars_(nvars), cap_(degree_cap) {}

    static RootPoly constant(uint32_t prime, int nvars, int cap, int64_t v) {
        RootPoly r(prime, nvars, cap);
        Fp c(prime, v);
        if (!c.is_zero()) r.terms_[std::vector<int>(nvars, 0)] = c;
        return r;
    }

    /// s(t_k) for a one-variable series s.
    static RootPoly from_series(const Series& s, int nvars, int var, int cap) {
        RootPoly r(s.prime(), nvars, cap);
        for (int d = 0; d <= std::min(cap, s.order()); ++d) {
            if (s.coeff(d).is_zero()) continue;
            std::vector<int> e(nvars, 0);
            e[var] = d;
            r.terms_[e] = s.coeff(d);
        }
        return r;
    }

    uint32_t prime() const { return prime_; }
    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Fp>& terms() const { return terms_; }

    void add_term(const std::vector<int>& e, Fp c) {
        if (c.is_zero()) return;
        int d = 0;
        for (int x : e) d += x;
        if (d > cap_) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RootPoly operator+(const RootPoly& o) const {
        RootPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    RootPoly operator-(const RootPoly& o) const {
        RootPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    RootPoly operator*(const RootPoly& o) const {
        RootPoly r(prime_, nvars_, cap_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                std::vector<int> e(nvars_);
                for (int k = 0; k < nvars_; ++k) e[k] = e1[k] + e2[k];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    /// Elementary symmetric polynomial sigma_k of the n roots.
    static RootPoly elementary(uint32_t prime, int nvars, int k, int cap) {
        RootPoly r(prime, nvars, cap);
        if (k == 0) return constant(prime, nvars, cap, 1);
        if (k > nvars) return r;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<int> e(nvars, 0);
            for (int i : idx) e[i] = 1;
            r.add_term(e, Fp(prime, 1));
            int i = k - 1;
            while (i >= 0 && idx[i] == nvars - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return r;
    }

private:
    uint32_t prime_;
    int nvars_;
    int cap_;
    std::map<std::vector<int>, Fp> terms_;
};

/// A polynomial in the elementary symmetric generators sigma_1..sigma_n:
/// exponent vector (b_1..b_n) -> coefficient.
using SigmaPoly = std::map<std::vector<int>, Fp>;

/// Rewrite a symmetric RootPoly in the elementary basis by leading-monomial
/// subtraction.  Exact over any F_l; no division by integers anywhere.
inline SigmaPoly symmetric_to_elementary(RootPoly p) {
    const int n = p.nvars();
    std::vector<RootPoly> sigma;
    sigma.reserve(n + 1);
    for (int k = 0; k <= n; ++k)
        sigma.push_back(RootPoly::elementary(p.prime(), n, k, p.cap()));

    SigmaPoly out;
    while (!p.is_zero()) {
        // Lexicographically largest exponent vector; symmetry makes it weakly
        // decreasing, which is what the sigma-monomial recipe needs.
        auto lead = p.terms().begin();
        for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
            if (it->first > lead->first) lead = it;
        const std::vector<int> a = lead->first;
        const Fp c = lead->second;
        for (int k = 0; k + 1 < n; ++k)
            if (a[k] < a[k + 1])
                throw arithmetic_error("polynomial is not symmetric");

        std::vector<int> b(n, 0);
        for (int k = 0; k < n; ++k) b[k] = a[k] - (k + 1 < n ? a[k + 1] : 0);

        RootPoly expansion = RootPoly::constant(p.prime(), n, p.cap(), 1);
        for (int k = 0; k < n; ++k)
            for (int rep = 0; rep < b[k]; ++rep) expansion = expansion * sigma[k + 1];

        RootPoly scaled(p.prime(), n, p.cap());
        for (const auto& [e, ec] : expansion.terms()) scaled.add_term(e, c * ec);
        p = p - scaled;

        auto [it, fresh] = out.emplace(b, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

} // namespace ccalc
