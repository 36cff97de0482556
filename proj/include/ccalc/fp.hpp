#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccalc {

struct arithmetic_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct presentation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_invertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_well_defined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Residue in the prime field F_l.  Every value carries its modulus; mixing
/// moduli is an arithmetic error, not undefined behavior.
class Fp {
public:
    Fp() : p_(0), v_(0) {}
    Fp(uint32_t p, int64_t v) : p_(p) {
        if (!is_prime(p))
            throw arithmetic_error("modulus " + std::to_string(p) + " is not prime");
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<uint32_t>(r);
    }

    uint32_t modulus() const { return p_; }
    uint32_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator+(const Fp& o) const { check(o); return raw(p_, (v_ + o.v_) % p_); }
    Fp operator-(const Fp& o) const { check(o); return raw(p_, (v_ + p_ - o.v_) % p_); }
    Fp operator*(const Fp& o) const {
        check(o);
        return raw(p_, static_cast<uint32_t>((uint64_t(v_) * o.v_) % p_));
    }
    Fp operator-() const { return raw(p_, v_ == 0 ? 0 : p_ - v_); }

    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    Fp pow(uint64_t e) const {
        Fp r = raw(p_, 1 % p_);
        Fp b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse; zero is not invertible.
    Fp inv() const {
        if (v_ == 0) throw not_invertible("division by zero in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    static Fp raw(uint32_t p, uint32_t v) {
        Fp f;
        f.p_ = p;
        f.v_ = v;
        return f;
    }
    void check(const Fp& o) const {
        if (p_ != o.p_)
            throw arithmetic_error("mixed moduli " + std::to_string(p_) + " and " +
                                   std::to_string(o.p_));
    }

    uint32_t p_;
    uint32_t v_;
};

} // namespace ccalc
