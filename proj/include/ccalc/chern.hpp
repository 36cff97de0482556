#pragma once

#include <string>
#include <utility>

#include "ccalc/bundle.hpp"
#include "ccalc/operation.hpp"
#include "ccalc/symfunc.hpp"

namespace ccalc {

/// A multiplicative genus: a one-variable characteristic series g(u),
/// evaluated on bundles through the splitting principle.  The series is kept
/// as an exact polynomial, optionally to be inverted, so the genus can be
/// materialized at any truncation a base ring demands.
class Genus {
public:
    Genus(uint32_t prime, std::vector<Fp> poly, bool inverted, std::string label)
        : prime_(prime), poly_(std::move(poly)), inverted_(inverted),
          label_(std::move(label)) {
        if (inverted_ && (poly_.empty() || poly_[0].is_zero()))
            throw not_well_defined("genus series has no invertible constant term");
    }

    /// Genus with a fixed, already truncated series.
    Genus(Series s, std::string label)
        : prime_(s.prime()), inverted_(false), label_(std::move(label)),
          fixed_order_(s.order()) {
        poly_.reserve(s.order() + 1);
        for (int k = 0; k <= s.order(); ++k) poly_.push_back(s.coeff(k));
    }

    uint32_t prime() const { return prime_; }
    const std::string& label() const { return label_; }

    Series series(int order) const {
        if (fixed_order_ >= 0 && order > fixed_order_)
            throw usage_error("genus series truncated below the requested order");
        Series s(prime_, order);
        for (size_t k = 0; k < poly_.size() && k <= static_cast<size_t>(order); ++k)
            s.set_coeff(static_cast<int>(k), poly_[k]);
        return inverted_ ? series_invert(s) : s;
    }

private:
    uint32_t prime_;
    std::vector<Fp> poly_;
    bool inverted_;
    std::string label_;
    int fixed_order_ = -1;
};

/// itd of an operation: the series phi(u)/u.
inline Genus inverse_todd_of_operation(const Operation& op) {
    std::vector<Fp> c;
    for (int k = 1; k <= op.poly_degree(); ++k) c.push_back(op.phi(op.poly_degree()).coeff(k));
    if (c.empty()) c.push_back(Fp(op.prime(), 0));
    return Genus(op.prime(), std::move(c), false, "itd of " + op.label());
}

inline bool has_well_defined_todd_genus(const Operation& op) {
    return !op.phi_over_u(0).coeff(0).is_zero();
}

/// td of an operation: the multiplicative inverse u/phi(u).  Raises
/// not_well_defined exactly when phi(u)/u has zero constant term, which is
/// the mod-p obstruction.
inline Genus todd_of_operation(const Operation& op) {
    if (!has_well_defined_todd_genus(op))
        throw not_well_defined("operation '" + op.label() +
                               "' does not have a well-defined Todd genus");
    std::vector<Fp> c;
    for (int k = 1; k <= op.poly_degree(); ++k) c.push_back(op.phi(op.poly_degree()).coeff(k));
    return Genus(op.prime(), std::move(c), true, "td of " + op.label());
}

/// Evaluate a genus on a bundle: expand prod_i g(t_i) in formal Chern roots,
/// rewrite in elementary symmetric polynomials without division, substitute
/// sigma_i -> c_i(E), and normalize in the base ring.
inline Elem evaluate_genus(const Genus& g, const Bundle& E) {
    const RingPtr& ring = E.ring();
    if (g.prime() != ring->prime())
        throw usage_error("genus and bundle live over different primes");
    const int cap = ring->top_degree() / 2;
    const int n = E.rank();
    if (n == 0) return Elem::one(ring);

    Series s = g.series(cap);
    RootPoly prod = RootPoly::constant(ring->prime(), n, cap, 1);
    for (int v = 0; v < n; ++v) prod = prod * RootPoly::from_series(s, n, v, cap);

    SigmaPoly sp = symmetric_to_elementary(prod);

    std::vector<Elem> chern;
    chern.reserve(n + 1);
    for (int i = 0; i <= n; ++i) chern.push_back(E.chern(i));

    Elem out = Elem::zero(ring);
    for (const auto& [b, c] : sp) {
        Elem term = Elem::scalar(ring, c.value());
        for (int i = 0; i < n; ++i)
            if (b[i] > 0) term = term * chern[i + 1].pow(b[i]);
        out = out + term;
    }
    return out;
}

} // namespace ccalc
