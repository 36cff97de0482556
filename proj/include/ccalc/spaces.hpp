#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccalc/bundle.hpp"
#include "ccalc/ring.hpp"

namespace ccalc {

/// PurePoint models the mod-p coefficient picture: the point carries F_l in
/// bidegree (0,0) only.  WeightUnit adjoins an invertible weight class theta
/// of bidegree (0,1), the mod-l (l != p) picture over an algebraically
/// closed field.
enum class Mode { PurePoint, WeightUnit };

inline std::string mode_str(Mode m) {
    return m == Mode::PurePoint ? "purepoint" : "weightunit";
}

enum class SpaceKind { Point, Proj, Product, Grassmannian, ProjBundle };

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

struct Space {
    SpaceKind kind = SpaceKind::Point;
    std::string name = "pt";
    Mode mode = Mode::PurePoint;
    uint32_t prime = 2;
    int dim = 0;
    RingPtr ring;
    std::optional<Bundle> tangent;

    // Product structure: factor spaces and their generator names inside the
    // product ring (aligned with each factor's own generator order).
    std::vector<SpacePtr> factors;
    std::vector<std::vector<std::string>> factor_gens;

    // Grassmannian tautological sub/quotient bundle records.
    std::optional<Bundle> taut_sub;
    std::optional<Bundle> taut_quot;

    int proj_n = 0;
    int gr_k = 0;
    int gr_N = 0;

    Elem gen(const std::string& g) const { return Elem::generator(ring, g); }
    Elem one() const { return Elem::one(ring); }
    Elem zero() const { return Elem::zero(ring); }
};

inline SpacePtr point_space(uint32_t prime, Mode mode) {
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Point;
    s->name = "pt";
    s->mode = mode;
    s->prime = prime;
    s->dim = 0;
    s->ring = RingBuilder(prime, 0, mode == Mode::WeightUnit).build();
    s->tangent = trivial_bundle(s->ring);
    return s;
}

/// P^n with one generator of bidegree (2,1) and the relation u^{n+1}; the
/// tangent bundle record carries (1+u)^{n+1} via the Euler sequence.
inline SpacePtr projective_space(int n, uint32_t prime, Mode mode,
                                 const std::string& gen_name = "u") {
    if (n < 0) throw usage_error("projective space needs n >= 0");
    if (n == 0) {
        auto pt = point_space(prime, mode);
        auto s = std::make_shared<Space>(*pt);
        s->kind = SpaceKind::Proj;
        s->name = "P0";
        s->proj_n = 0;
        return s;
    }
    RingBuilder b(prime, 2 * n, mode == Mode::WeightUnit);
    GenInfo u;
    u.name = gen_name;
    u.ideg = 2;
    u.jdeg = 1;
    u.integral = true;
    u.action = GenAction::LineClass;
    b.add_gen(u);
    Mon rel;
    rel.e = {n + 1};
    b.add_relation({{rel, Fp(prime, 1)}});

    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Proj;
    s->name = "P" + std::to_string(n);
    s->mode = mode;
    s->prime = prime;
    s->dim = n;
    s->proj_n = n;
    s->ring = b.build();
    Elem uu = Elem::generator(s->ring, gen_name);
    s->tangent = Bundle(n, (Elem::one(s->ring) + uu).pow(n + 1), "T" + s->name);
    return s;
}

/// Gr(k,N): Z/l[c_1..c_k, d_1..d_{N-k}] modulo the bigraded pieces of
/// (sum c)(sum d) = 1.  Tautological sub/quotient bundles are recorded;
/// tangent data is not.
inline SpacePtr grassmannian(int k, int N, uint32_t prime, Mode mode = Mode::PurePoint) {
    if (!(0 < k && k < N)) throw usage_error("grassmannian needs 0 < k < N");
    const int q = N - k;
    const int dim = k * q;
    RingBuilder b(prime, 2 * dim, mode == Mode::WeightUnit);
    for (int i = 1; i <= k; ++i) {
        GenInfo g;
        g.name = "c" + std::to_string(i);
        g.ideg = 2 * i;
        g.jdeg = i;
        g.integral = true;
        g.action = GenAction::ChernGroup;
        g.group = 0;
        g.group_index = i;
        g.group_rank = k;
        b.add_gen(g);
    }
    for (int i = 1; i <= q; ++i) {
        GenInfo g;
        g.name = "d" + std::to_string(i);
        g.ideg = 2 * i;
        g.jdeg = i;
        g.integral = true;
        g.action = GenAction::ChernGroup;
        g.group = 1;
        g.group_index = i;
        g.group_rank = q;
        b.add_gen(g);
    }
    // Degree-t piece of (1 + c_1 + ... + c_k)(1 + d_1 + ... + d_q) - 1.
    for (int t = 1; t <= N; ++t) {
        std::map<Mon, Fp> rel;
        for (int i = std::max(0, t - q); i <= std::min(k, t); ++i) {
            int j = t - i;
            Mon m;
            m.e.assign(k + q, 0);
            if (i > 0) m.e[i - 1] = 1;
            if (j > 0) m.e[k + j - 1] = 1;
            rel[m] = Fp(prime, 1);
        }
        b.add_relation(std::move(rel));
    }

    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Grassmannian;
    s->name = "Gr(" + std::to_string(k) + "," + std::to_string(N) + ")";
    s->mode = mode;
    s->prime = prime;
    s->dim = dim;
    s->gr_k = k;
    s->gr_N = N;
    s->ring = b.build();

    Elem cs = Elem::one(s->ring), ds = Elem::one(s->ring);
    for (int i = 1; i <= k; ++i) cs = cs + Elem::generator(s->ring, "c" + std::to_string(i));
    for (int i = 1; i <= q; ++i) ds = ds + Elem::generator(s->ring, "d" + std::to_string(i));
    s->taut_sub = Bundle(k, cs, "S");
    s->taut_quot = Bundle(q, ds, "Q");
    return s;
}

namespace detail {

inline std::vector<SpacePtr> flatten_factors(const SpacePtr& s) {
    if (s->kind == SpaceKind::Product) return s->factors;
    return {s};
}

inline std::string proj_letter(size_t idx) {
    static const char* letters[] = {"u", "v", "w", "s", "r"};
    if (idx < 5) return letters[idx];
    return "x" + std::to_string(idx);
}

} // namespace detail

/// Finite product: generators and relations are the disjoint unions of the
/// factors'.  Projective factors are renamed u, v, w, ... in order; an
/// explicit name can be forced for the last factor (used by the pushforward
/// factorizations, which call their fiber coordinate "t").
inline SpacePtr product(const SpacePtr& X, const SpacePtr& Y,
                        const std::string& last_factor_gen = "") {
    if (X->prime != Y->prime) throw usage_error("product factors over different primes");
    if (X->mode != Y->mode) throw usage_error("product factors with different modes");

    std::vector<SpacePtr> factors = detail::flatten_factors(X);
    for (const auto& f : detail::flatten_factors(Y)) factors.push_back(f);

    int dim = 0;
    for (const auto& f : factors) dim += f->dim;

    RingBuilder b(X->prime, 2 * dim, X->mode == Mode::WeightUnit);
    std::vector<std::vector<std::string>> factor_gens;
    std::set<std::string> used;
    int next_group = 0;
    size_t proj_seen = 0;

    for (size_t fi = 0; fi < factors.size(); ++fi) {
        const auto& f = factors[fi];
        std::vector<std::string> names;
        int group_offset = next_group;
        std::string forced =
            (fi + 1 == factors.size() && !last_factor_gen.empty()) ? last_factor_gen : "";
        for (const auto& g : f->ring->gens()) {
            GenInfo copy = g;
            if (f->kind == SpaceKind::Proj) {
                copy.name = forced.empty() ? detail::proj_letter(proj_seen) : forced;
            } else if (!forced.empty() || used.count(copy.name)) {
                copy.name = (forced.empty() ? copy.name : forced) + "_" + std::to_string(fi);
            }
            if (used.count(copy.name))
                throw usage_error("generator name clash in product: " + copy.name);
            used.insert(copy.name);
            if (copy.group >= 0) copy.group += group_offset;
            next_group = std::max(next_group, copy.group + 1);
            names.push_back(copy.name);
            b.add_gen(copy);
        }
        if (f->kind == SpaceKind::Proj && f->dim > 0 && forced.empty()) ++proj_seen;
        factor_gens.push_back(names);
    }

    // Remap each factor's relations into the product exponent layout.
    size_t offset = 0;
    const size_t total_gens = [&] {
        size_t n = 0;
        for (const auto& f : factors) n += f->ring->gens().size();
        return n;
    }();
    for (const auto& f : factors) {
        for (const auto& rel : f->ring->relations()) {
            std::map<Mon, Fp> out;
            for (const auto& [m, c] : rel) {
                Mon mm;
                mm.e.assign(total_gens, 0);
                for (size_t k = 0; k < m.e.size(); ++k) mm.e[offset + k] = m.e[k];
                out[mm] = c;
            }
            b.add_relation(std::move(out));
        }
        offset += f->ring->gens().size();
    }

    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Product;
    s->mode = X->mode;
    s->prime = X->prime;
    s->dim = dim;
    s->factors = factors;
    s->factor_gens = factor_gens;
    s->ring = b.build();
    {
        std::string nm;
        for (const auto& f : factors) nm += (nm.empty() ? "" : "x") + f->name;
        s->name = nm;
    }

    // Tangent: product of the pullbacks, when every factor carries one.
    bool all_tangent = true;
    for (const auto& f : factors) all_tangent = all_tangent && f->tangent.has_value();
    if (all_tangent) {
        Elem total = Elem::one(s->ring);
        int rank = 0;
        size_t fi = 0;
        for (const auto& f : factors) {
            const auto& names = s->factor_gens[fi++];
            std::map<Mon, Fp> mapped;
            for (const auto& [m, c] : f->tangent->total_chern().terms()) {
                Mon mm;
                mm.e.assign(total_gens, 0);
                mm.theta = m.theta;
                for (size_t k = 0; k < m.e.size(); ++k)
                    mm.e[s->ring->gen_index(names[k])] = m.e[k];
                mapped[mm] = Fp(s->prime, c.value());
            }
            total = total * Elem(s->ring, mapped);
            rank += f->tangent->rank();
        }
        s->tangent = Bundle(rank, total, "T" + s->name);
    }
    return s;
}

/// Projectivization P(E) of a bundle over a base space: base presentation
/// plus a line class xi with the single relation sum_i (-1)^i c_i(E) xi^{r-i}.
inline SpacePtr proj_bundle(const SpacePtr& base, const Bundle& E,
                            const std::string& gen_name = "xi") {
    if (E.ring().get() != base->ring.get())
        throw usage_error("bundle is not over the given base");
    const int r = E.rank();
    if (r < 1) throw usage_error("projectivization needs rank >= 1");
    if (r == 1) {
        auto s = std::make_shared<Space>(*base);
        s->kind = SpaceKind::ProjBundle;
        s->name = "P(" + (E.name().empty() ? std::string("E") : E.name()) + ")";
        s->tangent.reset();
        return s;
    }
    const int dim = base->dim + r - 1;
    const size_t base_gens = base->ring->gens().size();
    RingBuilder b(base->prime, 2 * dim, base->mode == Mode::WeightUnit);
    for (const auto& g : base->ring->gens()) b.add_gen(g);
    GenInfo xi;
    xi.name = gen_name;
    xi.ideg = 2;
    xi.jdeg = 1;
    xi.integral = true;
    xi.action = GenAction::LineClass;
    b.add_gen(xi);

    auto widen = [&](const Mon& m, int xi_exp) {
        Mon mm;
        mm.e.assign(base_gens + 1, 0);
        for (size_t k = 0; k < m.e.size(); ++k) mm.e[k] = m.e[k];
        mm.e[base_gens] = xi_exp;
        mm.theta = m.theta;
        return mm;
    };
    for (const auto& rel : base->ring->relations()) {
        std::map<Mon, Fp> out;
        for (const auto& [m, c] : rel) out[widen(m, 0)] = c;
        b.add_relation(std::move(out));
    }
    std::map<Mon, Fp> bundle_rel;
    Fp sign(base->prime, 1);
    for (int i = 0; i <= r; ++i) {
        const Elem ci = E.chern(i);
        for (const auto& [m, c] : ci.terms()) {
            Mon mm = widen(m, r - i);
            auto [it, fresh] = bundle_rel.emplace(mm, c * sign);
            if (!fresh) it->second += c * sign;
        }
        sign = -sign;
    }
    b.add_relation(std::move(bundle_rel));

    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::ProjBundle;
    s->name = "P(" + (E.name().empty() ? std::string("E") : E.name()) + ")";
    s->mode = base->mode;
    s->prime = base->prime;
    s->dim = dim;
    s->ring = b.build();
    return s;
}

/// A closed embedding X -> P presented by its restriction map, a chosen lift
/// of each source generator, the normal bundle, and the image of the Thom
/// class in A(P).  The identities that make this data coherent (projection
/// formula, self-intersection) are property-tested rather than assumed.
struct EmbeddingData {
    SpacePtr source;
    SpacePtr target;
    std::map<std::string, Elem> restrict_images; // target gen -> A(X)
    std::map<std::string, Elem> lift_images;     // source gen -> A(P)
    Bundle normal;                               // over X
    int codim = 0;
    Elem forward_class;                          // image of tau in A(P)
    std::string name;

    Elem restrict(const Elem& x) const {
        if (x.ring().get() != target->ring.get())
            throw usage_error("restrict: element not in the ambient ring");
        return map_through(x, target->ring, source->ring, restrict_images);
    }

    Elem lift(const Elem& x) const {
        if (x.ring().get() != source->ring.get())
            throw usage_error("lift: element not in the source ring");
        return map_through(x, source->ring, target->ring, lift_images);
    }

private:
    static Elem map_through(const Elem& x, const RingPtr& from, const RingPtr& to,
                            const std::map<std::string, Elem>& images) {
        Elem out = Elem::zero(to);
        for (const auto& [m, c] : x.terms()) {
            Elem t = Elem::scalar(to, c.value());
            if (m.theta != 0) t = t * Elem::theta_power(to, m.theta);
            for (size_t k = 0; k < m.e.size(); ++k) {
                if (m.e[k] == 0) continue;
                auto it = images.find(from->gens()[k].name);
                if (it == images.end())
                    throw usage_error("no declared image for generator '" +
                                      from->gens()[k].name + "'");
                t = t * it->second.pow(m.e[k]);
            }
            out = out + t;
        }
        return out;
    }
};

/// Linear P^m inside P^n.  Normal bundle O(1)^{n-m}; the Thom class maps
/// forward to u^{n-m}.
inline EmbeddingData linear_embedding(int m, int n, uint32_t prime, Mode mode) {
    if (m > n) throw usage_error("linear embedding needs m <= n");
    EmbeddingData e;
    e.source = projective_space(m, prime, mode);
    e.target = projective_space(n, prime, mode);
    e.codim = n - m;
    Elem usrc = m > 0 ? e.source->gen("u") : e.source->zero();
    if (n > 0) e.restrict_images["u"] = usrc;
    if (m > 0) e.lift_images["u"] = e.target->gen("u");
    e.normal = Bundle(n - m, (e.source->one() + usrc).pow(n - m), "N");
    e.forward_class = n > 0 ? e.target->gen("u").pow(n - m) : e.target->one();
    e.name = "P" + std::to_string(m) + "->P" + std::to_string(n);
    return e;
}

inline EmbeddingData identity_embedding(const SpacePtr& X) {
    EmbeddingData e;
    e.source = X;
    e.target = X;
    e.codim = 0;
    for (const auto& g : X->ring->gens()) {
        e.restrict_images[g.name] = X->gen(g.name);
        e.lift_images[g.name] = X->gen(g.name);
    }
    e.normal = trivial_bundle(X->ring);
    e.forward_class = X->one();
    e.name = "id(" + X->name + ")";
    return e;
}

/// Rank-one free module tau * A(X) modeling the cohomology of P supported on
/// X; tau sits in bidegree (2c, c).
class ThomModule {
public:
    explicit ThomModule(EmbeddingData emb) : emb_(std::move(emb)) {
        if (emb_.normal.rank() != emb_.codim)
            throw usage_error("normal bundle rank must equal the codimension");
    }

    const EmbeddingData& embedding() const { return emb_; }
    int codim() const { return emb_.codim; }
    Bidegree tau_bidegree() const { return {2 * emb_.codim, emb_.codim}; }
    const SpacePtr& base() const { return emb_.source; }
    const SpacePtr& ambient() const { return emb_.target; }

private:
    EmbeddingData emb_;
};

using ThomPtr = std::shared_ptr<const ThomModule>;

inline ThomPtr thom_module(EmbeddingData emb) {
    return std::make_shared<const ThomModule>(std::move(emb));
}

/// tau * a with a in A(X); the module is free, so the representation is
/// unique and tau*a = 0 iff a = 0.
class SupportedElem {
public:
    SupportedElem(ThomPtr mod, Elem a) : mod_(std::move(mod)), a_(std::move(a)) {
        if (a_.ring().get() != mod_->base()->ring.get())
            throw usage_error("supported element coefficient must live on the base");
    }

    static SupportedElem tau(const ThomPtr& mod) {
        return SupportedElem(mod, Elem::one(mod->base()->ring));
    }

    const ThomPtr& module() const { return mod_; }
    const Elem& coeff() const { return a_; }
    bool is_zero() const { return a_.is_zero(); }

    std::optional<Bidegree> bidegree() const {
        auto bd = a_.bidegree();
        if (!bd) return std::nullopt;
        auto t = mod_->tau_bidegree();
        return Bidegree{bd->first + t.first, bd->second + t.second};
    }

    SupportedElem operator+(const SupportedElem& o) const {
        check(o);
        return SupportedElem(mod_, a_ + o.a_);
    }
    SupportedElem operator-(const SupportedElem& o) const {
        check(o);
        return SupportedElem(mod_, a_ - o.a_);
    }

    /// Module action of the ambient ring: restrict, then multiply.
    SupportedElem act(const Elem& ambient_class) const {
        return SupportedElem(mod_, a_ * mod_->embedding().restrict(ambient_class));
    }

    SupportedElem scale(const Elem& base_class) const {
        return SupportedElem(mod_, a_ * base_class);
    }

    bool operator==(const SupportedElem& o) const {
        return mod_.get() == o.mod_.get() && a_ == o.a_;
    }

    std::string str() const {
        if (a_.is_zero()) return "0";
        if (a_ == Elem::one(a_.ring())) return "tau";
        return "tau*(" + a_.str() + ")";
    }

private:
    void check(const SupportedElem& o) const {
        if (mod_.get() != o.mod_.get())
            throw usage_error("supported elements of different Thom modules");
    }

    ThomPtr mod_;
    Elem a_;
};

} // namespace ccalc
