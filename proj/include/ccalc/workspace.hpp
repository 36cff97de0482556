#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "ccalc/serialize.hpp"

namespace ccalc {

namespace detail {

inline bool parse_int_after(const std::string& s, size_t pos, int& out, size_t& end) {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
    out = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        out = out * 10 + (s[pos++] - '0');
    end = pos;
    return true;
}

} // namespace detail

/// Builtin space names: "pt", "P2", "P1xP2xP1", "Gr(2,4)".
inline SpacePtr builtin_space(const std::string& name, uint32_t prime, Mode mode) {
    if (name == "pt") return point_space(prime, mode);
    if (name.rfind("Gr(", 0) == 0 && name.back() == ')') {
        auto comma = name.find(',');
        if (comma == std::string::npos) throw usage_error("bad Grassmannian name: " + name);
        int k = std::stoi(name.substr(3, comma - 3));
        int N = std::stoi(name.substr(comma + 1, name.size() - comma - 2));
        return grassmannian(k, N, prime, mode);
    }
    // Product chains split on 'x'.
    if (name.find('x') != std::string::npos) {
        std::vector<SpacePtr> parts;
        size_t start = 0;
        while (start <= name.size()) {
            size_t cut = name.find('x', start);
            std::string piece =
                cut == std::string::npos ? name.substr(start) : name.substr(start, cut - start);
            parts.push_back(builtin_space(piece, prime, mode));
            if (cut == std::string::npos) break;
            start = cut + 1;
        }
        SpacePtr acc = parts.at(0);
        for (size_t i = 1; i < parts.size(); ++i) acc = product(acc, parts[i]);
        return acc;
    }
    if (name.size() >= 2 && name[0] == 'P') {
        int n;
        size_t end;
        if (detail::parse_int_after(name, 1, n, end) && end == name.size())
            return projective_space(n, prime, mode);
    }
    throw usage_error("unknown space '" + name + "'");
}

/// Builtin embedding names: "P1_in_P2".
inline EmbeddingData builtin_embedding(const std::string& name, uint32_t prime, Mode mode) {
    auto cut = name.find("_in_");
    if (cut != std::string::npos && name[0] == 'P' && name[cut + 4] == 'P') {
        int m = std::stoi(name.substr(1, cut - 1));
        int n = std::stoi(name.substr(cut + 5));
        return linear_embedding(m, n, prime, mode);
    }
    throw usage_error("unknown embedding '" + name + "'");
}

/// Builtin map names: "P2_to_pt", "P2xP1_to_P1", "P1_in_P2" (an embedding as
/// a map), "id(P2)".
inline ProperMap builtin_map(const std::string& name, uint32_t prime, Mode mode);

/// Named spaces, bundles, embeddings and maps persisted as one JSON document.
/// Parsing and dumping normalize key order, so save/load/save is stable.
class Workspace {
public:
    Workspace() : doc_(json::object()) {}

    static Workspace from_string(const std::string& text) {
        Workspace w;
        w.doc_ = json::parse(text);
        return w;
    }

    static Workspace load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw usage_error("cannot read workspace '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return from_string(ss.str());
    }

    static Workspace load_or_create(const std::string& path) {
        std::ifstream in(path);
        if (!in) return Workspace();
        std::stringstream ss;
        ss << in.rdbuf();
        return from_string(ss.str());
    }

    std::string save_string() const { return doc_.dump(2) + "\n"; }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw usage_error("cannot write workspace '" + path + "'");
        out << save_string();
    }

    const json& doc() const { return doc_; }

    uint32_t default_prime(uint32_t fallback) const {
        if (doc_.contains("defaults") && doc_["defaults"].contains("prime"))
            return doc_["defaults"]["prime"].get<uint32_t>();
        return fallback;
    }
    Mode default_mode(Mode fallback) const {
        if (doc_.contains("defaults") && doc_["defaults"].contains("mode"))
            return doc_["defaults"]["mode"].get<std::string>() == "weightunit"
                       ? Mode::WeightUnit
                       : Mode::PurePoint;
        return fallback;
    }
    void set_defaults(uint32_t prime, Mode mode) {
        doc_["defaults"] = json{{"prime", prime}, {"mode", mode_str(mode)}};
    }

    void add_space(const std::string& name, const SpacePtr& s) {
        doc_["spaces"][name] = space_to_json(s);
    }
    void add_bundle(const std::string& name, const SpacePtr& base, const Bundle& b) {
        doc_["bundles"][name] = json{{"space", space_to_json(base)},
                                     {"rank", b.rank()},
                                     {"chern", elem_to_json(b.total_chern())}};
    }
    void add_embedding(const std::string& name, const EmbeddingData& e) {
        doc_["embeddings"][name] = embedding_to_json(e);
    }
    void add_map(const std::string& name, const json& descriptor) {
        map_from_json(descriptor); // validate before storing
        doc_["maps"][name] = descriptor;
    }

    bool has_space(const std::string& name) const {
        return doc_.contains("spaces") && doc_["spaces"].contains(name);
    }
    bool has_bundle(const std::string& name) const {
        return doc_.contains("bundles") && doc_["bundles"].contains(name);
    }

    /// Resolve a space: workspace entry first, then builtin catalog names.
    SpacePtr space(const std::string& name, uint32_t prime, Mode mode) const {
        if (has_space(name)) return space_from_json(doc_["spaces"][name]);
        return builtin_space(name, prime, mode);
    }

    /// Resolve a bundle against a caller-supplied ring (generator names must
    /// exist there).
    Bundle bundle(const std::string& name, const RingPtr& ring) const {
        if (!has_bundle(name)) throw usage_error("unknown bundle '" + name + "'");
        const json& j = doc_["bundles"][name];
        return Bundle(j.at("rank").get<int>(), elem_from_json(ring, j.at("chern")), name);
    }

    /// The bundle together with its own declared base space.
    std::pair<SpacePtr, Bundle> bundle_with_space(const std::string& name) const {
        if (!has_bundle(name)) throw usage_error("unknown bundle '" + name + "'");
        const json& j = doc_["bundles"][name];
        SpacePtr base = space_from_json(j.at("space"));
        return {base, Bundle(j.at("rank").get<int>(),
                             elem_from_json(base->ring, j.at("chern")), name)};
    }

    EmbeddingData embedding(const std::string& name, uint32_t prime, Mode mode) const {
        if (doc_.contains("embeddings") && doc_["embeddings"].contains(name))
            return embedding_from_json(doc_["embeddings"][name]);
        return builtin_embedding(name, prime, mode);
    }

    ProperMap map(const std::string& name, uint32_t prime, Mode mode) const {
        if (doc_.contains("maps") && doc_["maps"].contains(name))
            return map_from_json(doc_["maps"][name]);
        return builtin_map(name, prime, mode);
    }

    /// Every stored entry must parse back into a live object.
    void validate() const {
        if (doc_.contains("spaces"))
            for (auto it = doc_["spaces"].begin(); it != doc_["spaces"].end(); ++it)
                space_from_json(it.value());
        if (doc_.contains("bundles"))
            for (auto it = doc_["bundles"].begin(); it != doc_["bundles"].end(); ++it)
                bundle_with_space(it.key());
        if (doc_.contains("embeddings"))
            for (auto it = doc_["embeddings"].begin(); it != doc_["embeddings"].end(); ++it)
                embedding_from_json(it.value());
        if (doc_.contains("maps"))
            for (auto it = doc_["maps"].begin(); it != doc_["maps"].end(); ++it)
                map_from_json(it.value());
    }

private:
    json doc_;
};

inline ProperMap builtin_map(const std::string& name, uint32_t prime, Mode mode) {
    if (name.rfind("id(", 0) == 0 && name.back() == ')')
        return identity_map(builtin_space(name.substr(3, name.size() - 4), prime, mode));
    auto cut = name.find("_to_");
    if (cut != std::string::npos) {
        std::string src = name.substr(0, cut);
        std::string dst = name.substr(cut + 4);
        if (dst == "pt" && src.size() >= 2 && src[0] == 'P' &&
            src.find('x') == std::string::npos)
            return proper_map_to_point(std::stoi(src.substr(1)), prime, mode);
        auto x = src.find('x');
        if (x != std::string::npos) {
            int n = std::stoi(src.substr(1, x - 1));
            int m = std::stoi(src.substr(x + 2));
            if (dst != src.substr(x + 1))
                throw usage_error("product projection must target the second factor");
            return proper_map_product_projection(n, m, prime, mode);
        }
    }
    if (name.find("_in_") != std::string::npos)
        return embedding_as_map(builtin_embedding(name, prime, mode));
    throw usage_error("unknown map '" + name + "'");
}

} // namespace ccalc
