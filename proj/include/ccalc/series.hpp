#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ccalc/fp.hpp"

namespace ccalc {

/// One-variable power series truncated at a fixed order: coefficients of
/// u^0 .. u^N.  Arithmetic silently discards everything above u^N.
class Series {
public:
    Series(uint32_t prime, int order, std::string var = "u")
        : prime_(prime), var_(std::move(var)), c_(order + 1, Fp(prime, 0)) {}

    static Series constant(uint32_t prime, int order, int64_t v) {
        Series s(prime, order);
        s.c_[0] = Fp(prime, v);
        return s;
    }

    uint32_t prime() const { return prime_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::string& var() const { return var_; }

    const Fp& coeff(int k) const { return c_.at(k); }
    void set_coeff(int k, Fp v) {
        if (k <= order()) c_.at(k) = v;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Fp& x) { return x.is_zero(); });
    }

    Series truncated(int order) const {
        Series r(prime_, order, var_);
        for (int k = 0; k <= std::min(order, this->order()); ++k) r.c_[k] = c_[k];
        return r;
    }

    Series operator+(const Series& o) const {
        Series r = truncated(std::min(order(), o.order()));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] += o.c_[k];
        return r;
    }

    Series operator-(const Series& o) const {
        Series r = truncated(std::min(order(), o.order()));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] -= o.c_[k];
        return r;
    }

    Series operator*(const Series& o) const {
        int n = std::min(order(), o.order());
        Series r(prime_, n, var_);
        for (int i = 0; i <= n; ++i) {
            if (c_[i].is_zero()) continue;
            for (int j = 0; i + j <= n && j <= o.order(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }

    bool operator==(const Series& o) const {
        return prime_ == o.prime_ && c_ == o.c_;
    }

    std::string str() const {
        std::string out;
        for (int k = 0; k <= order(); ++k) {
            if (c_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += c_[k].str();
            } else {
                if (!c_[k].is_one()) out += c_[k].str() + "*";
                out += var_;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    uint32_t prime_;
    std::string var_;
    std::vector<Fp> c_;
};

/// Multiplicative inverse up to the truncation order.  The constant term must
/// be a unit; a zero constant term raises not_invertible, which is also the
/// signal used upstream when a Todd genus fails to exist.
inline Series series_invert(const Series& s) {
    if (s.coeff(0).is_zero())
        throw not_invertible("series has zero constant term");
    const int n = s.order();
    Series r(s.prime(), n, s.var());
    Fp a0inv = s.coeff(0).inv();
    r.set_coeff(0, a0inv);
    for (int k = 1; k <= n; ++k) {
        Fp acc(s.prime(), 0);
        for (int i = 1; i <= k; ++i) acc += s.coeff(i) * r.coeff(k - i);
        r.set_coeff(k, -(a0inv * acc));
    }
    return r;
}

} // namespace ccalc
