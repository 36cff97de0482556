#pragma once

#include <string>
#include <vector>

#include "ccalc/chern.hpp"
#include "ccalc/spaces.hpp"

namespace ccalc {

namespace detail {

/// Image of one generator under the operation.  Line classes transform by
/// phi directly; a Chern-group generator c_i becomes the i-th elementary
/// symmetric polynomial of the transformed roots, rewritten in the sigma
/// basis and evaluated back on the group.
inline Elem operation_gen_image(const Operation& op, const RingPtr& ring, int gen_idx) {
    const GenInfo& g = ring->gens()[gen_idx];
    const int cap = ring->top_degree() / 2;
    switch (g.action) {
        case GenAction::LineClass: {
            Series s = op.phi(cap);
            Elem u = Elem::generator(ring, g.name);
            Elem out = Elem::zero(ring);
            for (int k = 0; k <= s.order(); ++k) {
                if (s.coeff(k).is_zero()) continue;
                out = out + u.pow(k) * s.coeff(k);
            }
            return out;
        }
        case GenAction::ChernGroup: {
            const int r = g.group_rank;
            std::vector<int> group_gens;
            for (size_t k = 0; k < ring->gens().size(); ++k)
                if (ring->gens()[k].group == g.group) group_gens.push_back(static_cast<int>(k));
            if (static_cast<int>(group_gens.size()) != r)
                throw usage_error("incomplete Chern group for generator '" + g.name + "'");

            Series s = op.phi(cap);
            std::vector<RootPoly> roots;
            roots.reserve(r);
            for (int v = 0; v < r; ++v) roots.push_back(RootPoly::from_series(s, r, v, cap));

            // Elementary symmetric accumulators over the transformed roots.
            std::vector<RootPoly> elem(r + 1, RootPoly(ring->prime(), r, cap));
            elem[0] = RootPoly::constant(ring->prime(), r, cap, 1);
            for (int v = 0; v < r; ++v)
                for (int k = std::min(v + 1, r); k >= 1; --k)
                    elem[k] = elem[k] + elem[k - 1] * roots[v];

            SigmaPoly sp = symmetric_to_elementary(elem[g.group_index]);
            Elem out = Elem::zero(ring);
            for (const auto& [b, c] : sp) {
                Elem term = Elem::scalar(ring, c.value());
                for (int i = 0; i < r; ++i)
                    if (b[i] > 0) {
                        int idx = -1;
                        for (int gg : group_gens)
                            if (ring->gens()[gg].group_index == i + 1) idx = gg;
                        term = term * Elem::generator(ring, ring->gens()[idx].name).pow(b[i]);
                    }
                out = out + term;
            }
            return out;
        }
        default:
            throw usage_error("generator '" + g.name + "' has no declared operation action");
    }
}

} // namespace detail

/// Apply a total operation to a ring element.  A ring homomorphism: scalars
/// and the weight unit are fixed, generators transform per their declared
/// action.
inline Elem apply_operation(const Operation& op, const Elem& x) {
    const RingPtr& ring = x.ring();
    if (op.prime() != ring->prime())
        throw usage_error("operation and element are over different primes");

    std::map<int, Elem> images;
    Elem out = Elem::zero(ring);
    for (const auto& [m, c] : x.terms()) {
        Elem t = Elem::scalar(ring, c.value());
        if (m.theta != 0) t = t * Elem::theta_power(ring, m.theta);
        for (size_t k = 0; k < m.e.size(); ++k) {
            if (m.e[k] == 0) continue;
            auto it = images.find(static_cast<int>(k));
            if (it == images.end())
                it = images.emplace(static_cast<int>(k),
                                    detail::operation_gen_image(op, ring, static_cast<int>(k)))
                         .first;
            t = t * it->second.pow(m.e[k]);
        }
        out = out + t;
    }
    return out;
}

/// The s-th graded piece of an applied total operation: the component in
/// bidegree (i + 2s(l-1), j + s(l-1)) over a source of bidegree (i,j).
inline Elem graded_piece(const Operation& op, const Elem& total, Bidegree source, int s) {
    const int shift = static_cast<int>(op.prime()) - 1;
    return total.component({source.first + 2 * s * shift, source.second + s * shift});
}

inline SupportedElem graded_piece_supported(const Operation& op, const SupportedElem& total,
                                            Bidegree source, int s) {
    const int shift = static_cast<int>(op.prime()) - 1;
    Bidegree tb = total.module()->tau_bidegree();
    Bidegree target{source.first + 2 * s * shift - tb.first,
                    source.second + s * shift - tb.second};
    return SupportedElem(total.module(), total.coeff().component(target));
}

/// Action on a Thom module: phi(tau * a) = tau * (itd_phi(N) * phi(a)).
inline SupportedElem apply_to_thom(const Operation& op, const SupportedElem& t) {
    const auto& mod = t.module();
    Genus itd = inverse_todd_of_operation(op);
    Elem defect = evaluate_genus(itd, mod->embedding().normal);
    return SupportedElem(mod, defect * apply_operation(op, t.coeff()));
}

// ---------------------------------------------------------------------------
// Bockstein

/// The Bockstein is a derivation raising (i,j) to (i+1,j).  Every catalog
/// generator carries an integral lift, so each Leibniz term vanishes; the
/// computation still walks the terms so the trace can be reported.
inline Elem bockstein(const Elem& x) {
    const RingPtr& ring = x.ring();
    for (const auto& [m, c] : x.terms()) {
        for (size_t k = 0; k < m.e.size(); ++k)
            if (m.e[k] > 0 && !ring->gens()[k].integral)
                throw usage_error("generator '" + ring->gens()[k].name +
                                  "' has no declared Bockstein image");
    }
    return Elem::zero(ring);
}

inline SupportedElem bockstein(const SupportedElem& t) {
    // beta(tau * a) = beta(tau) * a + tau * beta(a); tau is integral.
    return SupportedElem(t.module(), bockstein(t.coeff()));
}

inline std::vector<std::string> bockstein_trace(const Elem& x) {
    std::vector<std::string> lines;
    if (x.is_zero()) {
        lines.push_back("beta(0) = 0");
        return lines;
    }
    for (const auto& [m, c] : x.terms()) {
        std::string term;
        for (size_t k = 0; k < m.e.size(); ++k) {
            if (m.e[k] == 0) continue;
            if (!term.empty()) term += " + ";
            term += "(" + std::to_string(m.e[k]) + ")*beta(" + x.ring()->gens()[k].name +
                    ")*rest  [integral class, beta = 0]";
        }
        if (m.theta != 0) {
            if (!term.empty()) term += " + ";
            term += "beta(th)*rest  [integral class, beta = 0]";
        }
        if (term.empty()) term = "beta(1) = 0";
        lines.push_back(term);
    }
    lines.push_back("total: 0");
    return lines;
}

// ---------------------------------------------------------------------------
// Twisted operation

/// U(alpha) = phi(alpha) acted on by td_phi of the ambient tangent bundle.
/// Only exists when the operation has a well-defined Todd genus; the mod-p
/// total power does not, reproducing the obstruction to pushing it forward.
class TwistedOperation {
public:
    TwistedOperation(Operation op, SpacePtr ambient)
        : op_(std::move(op)), ambient_(std::move(ambient)) {
        if (!ambient_->tangent)
            throw usage_error("ambient space '" + ambient_->name + "' has no tangent data");
        Genus td = todd_of_operation(op_); // throws not_well_defined for mod-p presets
        td_ambient_ = evaluate_genus(td, *ambient_->tangent);
    }

    const Operation& op() const { return op_; }
    const SpacePtr& ambient() const { return ambient_; }
    const Elem& todd_of_ambient() const { return td_ambient_; }

    SupportedElem apply(const SupportedElem& t) const {
        if (t.module()->ambient()->ring.get() != ambient_->ring.get())
            throw usage_error("supported element lives over a different ambient space");
        return apply_to_thom(op_, t).act(td_ambient_);
    }

private:
    Operation op_;
    SpacePtr ambient_;
    Elem td_ambient_;
};

inline TwistedOperation twisted_operation(const Operation& op, const SpacePtr& ambient) {
    return TwistedOperation(op, ambient);
}

// ---------------------------------------------------------------------------
// Dual homology operations

/// A homology class presented through its supported avatar under "Poincare
/// duality composed with localization": H_i(X, j) corresponds to
/// A^{2d-i, d-j}_X(P) with d the ambient dimension.
struct HomologyClass {
    SupportedElem avatar;
    int i = 0;
    int j = 0;
    int ambient_dim = 0;

    std::string str() const {
        return "H_" + std::to_string(i) + "(X," + std::to_string(j) + "): " + avatar.str();
    }
};

inline HomologyClass fundamental_class(const ThomPtr& mod) {
    const int dx = mod->base()->dim;
    return HomologyClass{SupportedElem::tau(mod), 2 * dx, dx, mod->ambient()->dim};
}

/// Conjugate the s-th piece of the operation by the avatar correspondence.
/// The homological degree law is Q_s: H_i(X,j) -> H_{i-2s(l-1)}(X, lj-d(l-1));
/// with a weight unit present the avatar is shifted by the theta power that
/// realizes the stated twist.
inline HomologyClass dual_homology_operation(const Operation& op, int s,
                                             const HomologyClass& h, bool twist = false) {
    const auto& mod = h.avatar.module();
    const int d = h.ambient_dim;
    Bidegree src{2 * d - h.i, d - h.j};

    SupportedElem total = twist
        ? TwistedOperation(op, mod->ambient()).apply(h.avatar)
        : apply_to_thom(op, h.avatar);
    SupportedElem piece = graded_piece_supported(op, total, src, s);

    const int shift = static_cast<int>(op.prime()) - 1;
    const int mult = static_cast<int>(op.weight_multiplier());
    const int new_i = h.i - 2 * s * shift;
    const int new_j = mult * h.j - d * (mult - 1);

    if (mod->base()->ring->has_theta() && !piece.is_zero()) {
        auto bd = piece.bidegree();
        int want = d - new_j;
        if (bd && want > bd->second)
            piece = SupportedElem(
                mod, piece.coeff() * Elem::theta_power(mod->base()->ring, want - bd->second));
    }
    return HomologyClass{piece, new_i, new_j, d};
}

} // namespace ccalc
