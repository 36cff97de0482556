#pragma once

#include <map>
#include <memory>
#include <string>

#include "ccalc/spaces.hpp"

namespace ccalc {

/// The tau'-line of a supported group over an image support that has no ring
/// model of its own (the singular case).  Only scalar multiples of tau' are
/// representable.
struct SupportLine {
    SpacePtr ambient;
    int codim = 0;
    std::string label = "X'";

    Bidegree tau_bidegree() const { return {2 * codim, codim}; }
};

using SupportLinePtr = std::shared_ptr<const SupportLine>;

struct SupportLineElem {
    SupportLinePtr line;
    Fp scale;

    bool is_zero() const { return scale.is_zero(); }
    std::string str() const {
        if (scale.is_zero()) return "0";
        if (scale.is_one()) return "tau'";
        return scale.str() + "*tau'";
    }
};

/// A projective morphism presented by its factorization: a closed embedding
/// of the source into target x P^n followed by the projection.  The generic
/// degree is declared data, used only on the tau-line of supported groups.
struct ProperMap {
    std::string name;
    SpacePtr source;
    SpacePtr target;
    SpacePtr ambient;                               // target x P^n
    EmbeddingData emb;                              // source -> ambient
    std::string fiber_gen;                          // "" when n = 0
    int proj_n = 0;
    std::map<std::string, std::string> coeff_gens;  // ambient gen -> target gen
    int degree = 1;

    // Supported-transfer model: source Thom module and image tau'-line.
    ThomPtr src_thom;
    SupportLinePtr dst_line;

    int rel_dim() const { return target->dim - source->dim; }
};

/// Pushforward along a closed embedding: the image of tau * a under the
/// support-forgetting map, computed as lift(a) cup the forward class of tau.
inline Elem embed_pushforward(const EmbeddingData& e, const Elem& a) {
    return e.lift(a) * e.forward_class;
}

inline Elem embed_pushforward(const SupportedElem& t) {
    return embed_pushforward(t.module()->embedding(), t.coeff());
}

/// Projection pushforward: write x in the basis {t^i} over the target and
/// keep the coefficient of t^n.
inline Elem proj_pushforward(const ProperMap& f, const Elem& x) {
    if (x.ring().get() != f.ambient->ring.get())
        throw usage_error("proj_pushforward: element not in the ambient ring");
    const RingPtr& tgt = f.target->ring;
    int fiber_idx = f.fiber_gen.empty() ? -1 : f.ambient->ring->gen_index(f.fiber_gen);

    Elem out = Elem::zero(tgt);
    for (const auto& [m, c] : x.terms()) {
        int te = fiber_idx >= 0 ? m.e[fiber_idx] : 0;
        if (te != f.proj_n) continue;
        Elem term = Elem::scalar(tgt, c.value());
        if (m.theta != 0) term = term * Elem::theta_power(tgt, m.theta);
        for (size_t k = 0; k < m.e.size(); ++k) {
            if (static_cast<int>(k) == fiber_idx || m.e[k] == 0) continue;
            auto it = f.coeff_gens.find(f.ambient->ring->gens()[k].name);
            if (it == f.coeff_gens.end())
                throw usage_error("ambient generator '" + f.ambient->ring->gens()[k].name +
                                  "' has no target counterpart");
            term = term * Elem::generator(tgt, it->second).pow(m.e[k]);
        }
        out = out + term;
    }
    return out;
}

/// f_! through the declared factorization: embed, then project.
inline Elem compose_pushforward(const ProperMap& f, const Elem& a) {
    if (a.ring().get() != f.source->ring.get())
        throw usage_error("compose_pushforward: element not in the source ring");
    return proj_pushforward(f, embed_pushforward(f.emb, a));
}

/// Transfer on the tau-line for a generically finite map of declared degree:
/// tau goes to degree * tau'.  Only scalar coefficients are representable on
/// a singular image support.
inline SupportLineElem pushforward_supported(const ProperMap& f, const SupportedElem& t) {
    if (!f.src_thom || !f.dst_line)
        throw usage_error("map '" + f.name + "' has no declared image support");
    if (t.module().get() != f.src_thom.get())
        throw usage_error("supported element does not live on the map's source support");
    const Elem& a = t.coeff();
    Fp scalar(t.coeff().ring()->prime(), 0);
    if (!a.is_zero()) {
        auto bd = a.bidegree();
        if (!bd || *bd != Bidegree{0, 0})
            throw usage_error("only the tau-line maps to a singular image support");
        scalar = a.terms().begin()->second;
    }
    Fp deg(scalar.modulus(), f.degree);
    return SupportLineElem{f.dst_line, scalar * deg};
}

// ---------------------------------------------------------------------------
// Catalog maps

/// P^m -> pt, factored through a linear embedding into P^n (n >= m).
inline ProperMap proper_map_to_point(int m, uint32_t prime, Mode mode, int embed_n = -1) {
    if (embed_n < 0) embed_n = m;
    if (embed_n < m) throw usage_error("embedding dimension below source dimension");
    ProperMap f;
    f.name = "P" + std::to_string(m) + "->pt";
    f.source = projective_space(m, prime, mode);
    f.target = point_space(prime, mode);
    f.ambient = projective_space(embed_n, prime, mode, "t");
    f.fiber_gen = embed_n > 0 ? "t" : "";
    f.proj_n = embed_n;

    EmbeddingData e;
    e.source = f.source;
    e.target = f.ambient;
    e.codim = embed_n - m;
    Elem usrc = m > 0 ? f.source->gen("u") : f.source->zero();
    if (embed_n > 0) e.restrict_images["t"] = usrc;
    if (m > 0) e.lift_images["u"] = f.ambient->gen("t");
    e.normal = Bundle(embed_n - m, (f.source->one() + usrc).pow(embed_n - m), "N");
    e.forward_class =
        embed_n > 0 ? f.ambient->gen("t").pow(embed_n - m) : f.ambient->one();
    e.name = f.name + " embedding";
    f.emb = std::move(e);
    return f;
}

/// P^n x P^m -> P^m, factored through the swap into P^m x P^n.
inline ProperMap proper_map_product_projection(int n, int m, uint32_t prime, Mode mode) {
    if (n < 1 || m < 1) throw usage_error("product projection needs n, m >= 1");
    ProperMap f;
    f.name = "P" + std::to_string(n) + "xP" + std::to_string(m) + "->P" + std::to_string(m);
    auto Pn = projective_space(n, prime, mode);
    auto Pm = projective_space(m, prime, mode);
    f.source = product(Pn, Pm);            // gens u (P^n), v (P^m)
    f.target = Pm;                         // gen u
    f.ambient = product(Pm, Pn, "t");      // gens u (P^m), t (P^n)
    f.fiber_gen = "t";
    f.proj_n = n;
    f.coeff_gens["u"] = "u";

    EmbeddingData e;
    e.source = f.source;
    e.target = f.ambient;
    e.codim = 0;
    e.restrict_images["u"] = f.source->gen("v");
    e.restrict_images["t"] = f.source->gen("u");
    e.lift_images["u"] = f.ambient->gen("t");
    e.lift_images["v"] = f.ambient->gen("u");
    e.normal = trivial_bundle(f.source->ring);
    e.forward_class = f.ambient->one();
    e.name = f.name + " embedding";
    f.emb = std::move(e);
    return f;
}

inline ProperMap identity_map(const SpacePtr& X) {
    ProperMap f;
    f.name = "id(" + X->name + ")";
    f.source = X;
    f.target = X;
    f.ambient = X;
    f.proj_n = 0;
    f.emb = identity_embedding(X);
    for (const auto& g : X->ring->gens()) f.coeff_gens[g.name] = g.name;
    return f;
}

/// Model of a generically finite map (resolution: degree 1, alteration:
/// degree p^m) between supported groups: the smooth side carries a full Thom
/// module, the image side only its tau'-line.
inline ProperMap model_supported_map(const ThomPtr& src, int codim_image, int degree,
                                     const std::string& name) {
    ProperMap f = identity_map(src->ambient());
    f.name = name;
    f.degree = degree;
    f.src_thom = src;
    auto line = std::make_shared<SupportLine>();
    line->ambient = src->ambient();
    line->codim = codim_image;
    line->label = "X'";
    f.dst_line = line;
    return f;
}

} // namespace ccalc
