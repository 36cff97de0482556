#pragma once

#include <string>

#include <json.hpp>

#include "ccalc/spaces.hpp"
#include "ccalc/pushforward.hpp"
#include "ccalc/verify.hpp"

namespace ccalc {

using json = nlohmann::json;

// All encoders emit through nlohmann's std::map-backed objects, so keys are
// sorted and dumps are canonical: parse-then-dump is byte-stable.

// ---------------------------------------------------------------------------
// Elements and rings

inline json mon_to_json(const RingCtx& ring, const Mon& m) {
    json j = json::object();
    for (size_t k = 0; k < m.e.size(); ++k)
        if (m.e[k] != 0) j[ring.gens()[k].name] = m.e[k];
    if (m.theta != 0) j["th"] = m.theta;
    return j;
}

inline Mon mon_from_json(const RingCtx& ring, const json& j) {
    Mon m;
    m.e.assign(ring.gens().size(), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "th") {
            m.theta = it.value().get<int>();
            continue;
        }
        m.e[ring.gen_index(it.key())] = it.value().get<int>();
    }
    return m;
}

inline json elem_to_json(const Elem& x) {
    json terms = json::array();
    for (const auto& [m, c] : x.terms())
        terms.push_back(json{{"c", c.value()}, {"m", mon_to_json(*x.ring(), m)}});
    return json{{"terms", terms}};
}

inline Elem elem_from_json(const RingPtr& ring, const json& j) {
    std::map<Mon, Fp> terms;
    for (const auto& t : j.at("terms"))
        terms[mon_from_json(*ring, t.at("m"))] = Fp(ring->prime(), t.at("c").get<int64_t>());
    return Elem(ring, terms);
}

inline json ring_to_json(const RingCtx& ring) {
    json gens = json::array();
    for (const auto& g : ring.gens()) {
        json jg{{"name", g.name},
                {"ideg", g.ideg},
                {"jdeg", g.jdeg},
                {"integral", g.integral}};
        switch (g.action) {
            case GenAction::LineClass: jg["action"] = "line"; break;
            case GenAction::ChernGroup:
                jg["action"] = "chern";
                jg["group"] = g.group;
                jg["index"] = g.group_index;
                jg["rank"] = g.group_rank;
                break;
            default: jg["action"] = "none";
        }
        gens.push_back(jg);
    }
    json rels = json::array();
    for (const auto& rel : ring.relations()) {
        json jr = json::array();
        for (const auto& [m, c] : rel)
            jr.push_back(json{{"c", c.value()}, {"m", mon_to_json(ring, m)}});
        rels.push_back(jr);
    }
    return json{{"l", ring.prime()},
                {"top_degree", ring.top_degree()},
                {"theta", ring.has_theta()},
                {"generators", gens},
                {"relations", rels}};
}

inline RingPtr ring_from_json(const json& j) {
    RingBuilder b(j.at("l").get<uint32_t>(), j.at("top_degree").get<int>(),
                  j.value("theta", false));
    for (const auto& jg : j.at("generators")) {
        GenInfo g;
        g.name = jg.at("name").get<std::string>();
        g.ideg = jg.at("ideg").get<int>();
        g.jdeg = jg.at("jdeg").get<int>();
        g.integral = jg.value("integral", true);
        std::string action = jg.value("action", "none");
        if (action == "line") {
            g.action = GenAction::LineClass;
        } else if (action == "chern") {
            g.action = GenAction::ChernGroup;
            g.group = jg.at("group").get<int>();
            g.group_index = jg.at("index").get<int>();
            g.group_rank = jg.at("rank").get<int>();
        }
        b.add_gen(g);
    }
    // Relations refer to generator names; rebuild after all gens are present.
    // A temporary context is not available, so parse exponent maps by name.
    // (Monomials in relations never involve theta.)
    // Build a name->index map mirroring the builder's order.
    std::map<std::string, int> idx;
    int next = 0;
    for (const auto& jg : j.at("generators")) idx[jg.at("name").get<std::string>()] = next++;
    for (const auto& jr : j.at("relations")) {
        std::map<Mon, Fp> rel;
        for (const auto& t : jr) {
            Mon m;
            m.e.assign(idx.size(), 0);
            for (auto it = t.at("m").begin(); it != t.at("m").end(); ++it)
                m.e[idx.at(it.key())] = it.value().get<int>();
            rel[m] = Fp(j.at("l").get<uint32_t>(), t.at("c").get<int64_t>());
        }
        b.add_relation(std::move(rel));
    }
    return b.build();
}

// ---------------------------------------------------------------------------
// Space descriptors

inline json space_to_json(const SpacePtr& s) {
    json j{{"l", s->prime}, {"mode", mode_str(s->mode)}};
    switch (s->kind) {
        case SpaceKind::Point:
            j["kind"] = "point";
            break;
        case SpaceKind::Proj:
            j["kind"] = "proj";
            j["n"] = s->proj_n;
            break;
        case SpaceKind::Grassmannian:
            j["kind"] = "grassmannian";
            j["k"] = s->gr_k;
            j["N"] = s->gr_N;
            break;
        case SpaceKind::Product: {
            j["kind"] = "product";
            json factors = json::array();
            for (const auto& f : s->factors) factors.push_back(space_to_json(f));
            j["factors"] = factors;
            break;
        }
        case SpaceKind::ProjBundle:
            throw usage_error("projective bundle descriptors need explicit bundle data");
    }
    return j;
}

inline SpacePtr space_from_json(const json& j) {
    uint32_t l = j.at("l").get<uint32_t>();
    Mode mode = j.value("mode", "purepoint") == "weightunit" ? Mode::WeightUnit
                                                             : Mode::PurePoint;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "point") return point_space(l, mode);
    if (kind == "proj") return projective_space(j.at("n").get<int>(), l, mode);
    if (kind == "grassmannian")
        return grassmannian(j.at("k").get<int>(), j.at("N").get<int>(), l, mode);
    if (kind == "product") {
        const auto& factors = j.at("factors");
        if (factors.empty()) throw usage_error("empty product descriptor");
        SpacePtr acc = space_from_json(factors[0]);
        for (size_t i = 1; i < factors.size(); ++i)
            acc = product(acc, space_from_json(factors[i]));
        return acc;
    }
    throw usage_error("unknown space kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Bundles

inline json bundle_to_json(const Bundle& b) {
    return json{{"rank", b.rank()},
                {"name", b.name()},
                {"chern", elem_to_json(b.total_chern())}};
}

inline Bundle bundle_from_json(const RingPtr& ring, const json& j) {
    return Bundle(j.at("rank").get<int>(), elem_from_json(ring, j.at("chern")),
                  j.value("name", ""));
}

// ---------------------------------------------------------------------------
// Embeddings and maps

inline json embedding_to_json(const EmbeddingData& e) {
    json restrict = json::object();
    for (const auto& [k, v] : e.restrict_images) restrict[k] = elem_to_json(v);
    json lift = json::object();
    for (const auto& [k, v] : e.lift_images) lift[k] = elem_to_json(v);
    return json{{"name", e.name},
                {"source", space_to_json(e.source)},
                {"target", space_to_json(e.target)},
                {"restrict", restrict},
                {"lift", lift},
                {"codim", e.codim},
                {"normal", bundle_to_json(e.normal)},
                {"class", elem_to_json(e.forward_class)}};
}

inline EmbeddingData embedding_from_json(const json& j) {
    EmbeddingData e;
    e.source = space_from_json(j.at("source"));
    e.target = space_from_json(j.at("target"));
    e.name = j.value("name", "embedding");
    e.codim = j.at("codim").get<int>();
    for (auto it = j.at("restrict").begin(); it != j.at("restrict").end(); ++it)
        e.restrict_images.emplace(it.key(), elem_from_json(e.source->ring, it.value()));
    for (auto it = j.at("lift").begin(); it != j.at("lift").end(); ++it)
        e.lift_images.emplace(it.key(), elem_from_json(e.target->ring, it.value()));
    e.normal = bundle_from_json(e.source->ring, j.at("normal"));
    e.forward_class = elem_from_json(e.target->ring, j.at("class"));
    return e;
}

inline json map_to_json(const ProperMap& f) {
    json coeff = json::object();
    for (const auto& [k, v] : f.coeff_gens) coeff[k] = v;
    json j{{"name", f.name},
           {"source", space_to_json(f.source)},
           {"target", space_to_json(f.target)},
           {"ambient", space_to_json(f.ambient)},
           {"embedding", embedding_to_json(f.emb)},
           {"fiber_gen", f.fiber_gen},
           {"n", f.proj_n},
           {"coeff_gens", coeff},
           {"degree", f.degree}};
    return j;
}

inline ProperMap map_from_json(const json& j) {
    ProperMap f;
    f.name = j.value("name", "map");
    f.emb = embedding_from_json(j.at("embedding"));
    // The embedding's endpoint instances are canonical: the factorization
    // computes through their rings.
    f.source = f.emb.source;
    f.ambient = f.emb.target;
    f.target = space_from_json(j.at("target"));
    f.fiber_gen = j.value("fiber_gen", "");
    f.proj_n = j.at("n").get<int>();
    for (auto it = j.at("coeff_gens").begin(); it != j.at("coeff_gens").end(); ++it)
        f.coeff_gens[it.key()] = it.value().get<std::string>();
    f.degree = j.value("degree", 1);
    return f;
}

// ---------------------------------------------------------------------------
// Reports

inline json report_to_json(const Report& r) {
    json instance = json::object();
    for (const auto& [k, v] : r.instance) instance[k] = v;
    return json{{"identity", r.identity}, {"instance", instance},
                {"lhs", r.lhs},           {"rhs", r.rhs},
                {"pass", r.pass},         {"warnings", r.warnings},
                {"trace", r.trace}};
}

inline Report report_from_json(const json& j) {
    Report r;
    r.identity = j.at("identity").get<std::string>();
    for (auto it = j.at("instance").begin(); it != j.at("instance").end(); ++it)
        r.instance[it.key()] = it.value().get<std::string>();
    r.lhs = j.at("lhs").get<std::string>();
    r.rhs = j.at("rhs").get<std::string>();
    r.pass = j.at("pass").get<bool>();
    for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
    for (const auto& t : j.at("trace")) r.trace.push_back(t.get<std::string>());
    return r;
}

} // namespace ccalc
