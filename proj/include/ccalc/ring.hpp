#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccalc/fp.hpp"

namespace ccalc {

using Bidegree = std::pair<int, int>;

/// How a ring operation acts on a generator.  Line classes transform by the
/// operation's characteristic series; a Chern-group generator c_i transforms
/// through the splitting principle together with its siblings.
enum class GenAction { None, LineClass, ChernGroup };

struct GenInfo {
    std::string name;
    int ideg = 2;            // first (simplicial) degree, even
    int jdeg = 1;            // second (weight) degree
    bool integral = true;    // carries an integral lift (Bockstein kills it)
    GenAction action = GenAction::None;
    int group = -1;          // Chern-group id, generators c_1..c_r share one
    int group_index = 0;     // i in c_i, 1-based
    int group_rank = 0;      // r
};

/// Exponent vector over the ordinary generators plus a separate exponent for
/// the weight unit theta.  Ordered degree-lexicographically; the order is
/// internal bookkeeping only.
struct Mon {
    std::vector<int> e;
    int theta = 0;

    bool operator==(const Mon& o) const { return e == o.e && theta == o.theta; }
    bool operator<(const Mon& o) const {
        int a = total(), b = o.total();
        if (a != b) return a < b;
        if (theta != o.theta) return theta < o.theta;
        return e < o.e;
    }
    int total() const {
        int t = theta;
        for (int x : e) t += x;
        return t;
    }
    bool is_unit() const {
        if (theta != 0) return false;
        for (int x : e)
            if (x != 0) return false;
        return true;
    }
    Mon operator*(const Mon& o) const {
        Mon r = *this;
        r.theta += o.theta;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
};

class RingCtx;
using RingPtr = std::shared_ptr<const RingCtx>;

/// A finitely presented bigraded commutative ring over F_l, truncated above a
/// top first-degree D.  Relations must be bihomogeneous; the quotient is
/// resolved once at construction by row reduction within every bidegree, so
/// normal forms afterwards are table lookups.  Immutable once built.
class RingCtx : public std::enable_shared_from_this<RingCtx> {
public:
    using Row = std::vector<std::pair<Mon, Fp>>;

    uint32_t prime() const { return prime_; }
    int top_degree() const { return top_degree_; }
    bool has_theta() const { return has_theta_; }
    const std::vector<GenInfo>& gens() const { return gens_; }
    const std::vector<std::map<Mon, Fp>>& relations() const { return relations_; }

    int gen_index(const std::string& name) const {
        auto it = gen_index_.find(name);
        if (it == gen_index_.end())
            throw usage_error("unknown generator '" + name + "'");
        return it->second;
    }
    bool has_gen(const std::string& name) const { return gen_index_.count(name) > 0; }

    Bidegree mon_bidegree(const Mon& m) const {
        int i = 0, j = m.theta;
        for (size_t k = 0; k < gens_.size(); ++k) {
            i += m.e[k] * gens_[k].ideg;
            j += m.e[k] * gens_[k].jdeg;
        }
        return {i, j};
    }

    /// Basis monomials of the theta-free slice at a given bidegree.
    const std::vector<Mon>& basis(Bidegree bd) const {
        static const std::vector<Mon> empty;
        auto it = basis_.find(bd);
        return it == basis_.end() ? empty : it->second;
    }

    /// Dimension over F_l of the full bidegree (i,j); with a weight unit this
    /// sums the theta-free slices it can shift up from.
    int dim(Bidegree bd) const {
        if (!has_theta_) {
            auto it = basis_.find(bd);
            return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
        }
        int total = 0;
        for (const auto& [key, mons] : basis_)
            if (key.first == bd.first && key.second <= bd.second)
                total += static_cast<int>(mons.size());
        return total;
    }

    /// All theta-free bidegrees with a nonempty basis.
    std::vector<Bidegree> occupied_bidegrees() const {
        std::vector<Bidegree> out;
        for (const auto& [bd, mons] : basis_)
            if (!mons.empty()) out.push_back(bd);
        return out;
    }

    int total_dimension() const {
        int n = 0;
        for (const auto& [bd, mons] : basis_) n += static_cast<int>(mons.size());
        return n;
    }

    /// Normal form of a raw term map: drop everything above the top degree,
    /// rewrite pivot monomials against the stored reduction rows.
    std::map<Mon, Fp> normalize(const std::map<Mon, Fp>& terms) const {
        std::map<Mon, Fp> out;
        for (const auto& [m, c] : terms) {
            if (c.is_zero()) continue;
            Mon free = m;
            int th = free.theta;
            free.theta = 0;
            if (mon_bidegree(free).first > top_degree_) continue;
            auto it = rewrite_.find(free);
            if (it == rewrite_.end()) {
                accumulate(out, m, c);
            } else {
                for (const auto& [bm, bc] : it->second) {
                    Mon shifted = bm;
                    shifted.theta += th;
                    accumulate(out, shifted, c * bc);
                }
            }
        }
        return out;
    }

    friend class RingBuilder;

private:
    static void accumulate(std::map<Mon, Fp>& out, const Mon& m, const Fp& c) {
        auto [it, fresh] = out.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }

    uint32_t prime_ = 2;
    int top_degree_ = 0;
    bool has_theta_ = false;
    std::vector<GenInfo> gens_;
    std::map<std::string, int> gen_index_;
    std::vector<std::map<Mon, Fp>> relations_;
    std::map<Bidegree, std::vector<Mon>> basis_;
    std::map<Mon, Row> rewrite_;
};

/// Normal-form element of a RingCtx.
class Elem {
public:
    Elem() = default;
    Elem(RingPtr ring, std::map<Mon, Fp> terms)
        : ring_(std::move(ring)), terms_(ring_->normalize(terms)) {}

    static Elem zero(const RingPtr& ring) { return Elem(ring, {}); }
    static Elem scalar(const RingPtr& ring, int64_t v) {
        Mon one;
        one.e.assign(ring->gens().size(), 0);
        return Elem(ring, {{one, Fp(ring->prime(), v)}});
    }
    static Elem one(const RingPtr& ring) { return scalar(ring, 1); }
    static Elem generator(const RingPtr& ring, const std::string& name) {
        Mon m;
        m.e.assign(ring->gens().size(), 0);
        m.e[ring->gen_index(name)] = 1;
        return Elem(ring, {{m, Fp(ring->prime(), 1)}});
    }
    static Elem theta_power(const RingPtr& ring, int k) {
        if (!ring->has_theta()) throw usage_error("ring has no weight unit");
        Mon m;
        m.e.assign(ring->gens().size(), 0);
        m.theta = k;
        return Elem(ring, {{m, Fp(ring->prime(), 1)}});
    }
    static Elem monomial(const RingPtr& ring, Mon m, Fp c) {
        return Elem(ring, {{std::move(m), c}});
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<Mon, Fp>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_homogeneous() const { return bidegree().has_value(); }

    /// Bidegree if homogeneous (zero reports as homogeneous of no degree).
    std::optional<Bidegree> bidegree() const {
        std::optional<Bidegree> bd;
        for (const auto& [m, c] : terms_) {
            Bidegree d = ring_->mon_bidegree(m);
            if (!bd)
                bd = d;
            else if (*bd != d)
                return std::nullopt;
        }
        return bd;
    }

    /// The component of a given bidegree.
    Elem component(Bidegree bd) const {
        std::map<Mon, Fp> out;
        for (const auto& [m, c] : terms_)
            if (ring_->mon_bidegree(m) == bd) out.emplace(m, c);
        return Elem(ring_, out);
    }

    /// Components keyed by bidegree, in bidegree order.
    std::map<Bidegree, Elem> components() const {
        std::map<Bidegree, std::map<Mon, Fp>> split;
        for (const auto& [m, c] : terms_) split[ring_->mon_bidegree(m)].emplace(m, c);
        std::map<Bidegree, Elem> out;
        for (auto& [bd, t] : split) out.emplace(bd, Elem(ring_, t));
        return out;
    }

    Elem operator+(const Elem& o) const {
        check(o);
        std::map<Mon, Fp> t = terms_;
        for (const auto& [m, c] : o.terms_) {
            auto [it, fresh] = t.emplace(m, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) t.erase(it);
            }
        }
        return Elem(ring_, t);
    }

    Elem operator-(const Elem& o) const { return *this + (-o); }

    Elem operator-() const {
        std::map<Mon, Fp> t;
        for (const auto& [m, c] : terms_) t.emplace(m, -c);
        return Elem(ring_, t);
    }

    Elem operator*(const Elem& o) const {
        check(o);
        std::map<Mon, Fp> t;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                Mon m = m1 * m2;
                Fp c = c1 * c2;
                auto [it, fresh] = t.emplace(m, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) t.erase(it);
                }
            }
        return Elem(ring_, t);
    }

    Elem operator*(const Fp& c) const {
        std::map<Mon, Fp> t;
        if (!c.is_zero())
            for (const auto& [m, cc] : terms_) t.emplace(m, cc * c);
        return Elem(ring_, t);
    }

    Elem pow(int n) const {
        if (n < 0) throw usage_error("negative exponent");
        Elem r = Elem::one(ring_);
        Elem b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    bool operator==(const Elem& o) const {
        return ring_.get() == o.ring_.get() && terms_ == o.terms_;
    }
    bool operator!=(const Elem& o) const { return !(*this == o); }

    /// Equal after multiplying one side by a theta power; returns the power
    /// (positive: this * theta^k == o) when it exists.
    std::optional<int> theta_offset_to(const Elem& o) const {
        if (*this == o) return 0;
        if (!ring_->has_theta()) return std::nullopt;
        for (int k = 1; k <= ring_->top_degree() + 1; ++k) {
            if (*this * Elem::theta_power(ring_, k) == o) return k;
            if (o * Elem::theta_power(ring_, k) == *this) return -k;
        }
        return std::nullopt;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            const auto& [m, c] = *it;
            if (!out.empty()) out += " + ";
            std::string ms = mon_str(m);
            if (ms.empty())
                out += c.str();
            else if (c.is_one())
                out += ms;
            else
                out += c.str() + "*" + ms;
        }
        return out;
    }

private:
    std::string mon_str(const Mon& m) const {
        std::string out;
        auto append = [&out](const std::string& g, int e) {
            if (e == 0) return;
            if (!out.empty()) out += "*";
            out += g;
            if (e != 1) out += "^" + std::to_string(e);
        };
        for (size_t k = 0; k < m.e.size(); ++k) append(ring_->gens()[k].name, m.e[k]);
        append("th", m.theta);
        return out;
    }

    void check(const Elem& o) const {
        if (ring_.get() != o.ring_.get())
            throw usage_error("elements belong to different rings");
    }

    RingPtr ring_;
    std::map<Mon, Fp> terms_;
};

inline Elem normal_form(const Elem& x) {
    // Elements are stored normalized; renormalizing is the identity.
    return Elem(x.ring(), x.terms());
}

/// Builds a RingCtx: collect generators and bihomogeneous relations, then
/// resolve every bidegree up to the top degree by Gaussian elimination.
class RingBuilder {
public:
    RingBuilder(uint32_t prime, int top_degree, bool with_theta = false) {
        if (!is_prime(prime))
            throw arithmetic_error("modulus " + std::to_string(prime) + " is not prime");
        if (top_degree < 0 || top_degree % 2 != 0)
            throw presentation_error("top degree must be even and nonnegative");
        ctx_ = std::make_shared<RingCtx>();
        mutable_ctx()->prime_ = prime;
        mutable_ctx()->top_degree_ = top_degree;
        mutable_ctx()->has_theta_ = with_theta;
    }

    RingBuilder& add_gen(GenInfo g) {
        if (g.ideg <= 0 || g.ideg % 2 != 0)
            throw presentation_error("generator '" + g.name +
                                     "' must have positive even first degree");
        if (g.jdeg < 0) throw presentation_error("generator second degree must be >= 0");
        if (mutable_ctx()->gen_index_.count(g.name))
            throw presentation_error("duplicate generator '" + g.name + "'");
        if (g.ideg > mutable_ctx()->top_degree_)
            throw presentation_error("generator degree exceeds top degree bound");
        mutable_ctx()->gen_index_[g.name] = static_cast<int>(mutable_ctx()->gens_.size());
        mutable_ctx()->gens_.push_back(std::move(g));
        return *this;
    }

    /// Relation as a raw term map (exponent vectors aligned with generator
    /// declaration order, no theta).  Must be bihomogeneous.
    RingBuilder& add_relation(std::map<Mon, Fp> rel) {
        std::optional<Bidegree> bd;
        for (auto it = rel.begin(); it != rel.end();) {
            if (it->second.is_zero()) {
                it = rel.erase(it);
                continue;
            }
            if (it->first.theta != 0)
                throw presentation_error("relations may not involve the weight unit");
            Bidegree d = mutable_ctx()->mon_bidegree(it->first);
            if (!bd)
                bd = d;
            else if (*bd != d)
                throw presentation_error("relation is not bihomogeneous");
            ++it;
        }
        if (!rel.empty()) mutable_ctx()->relations_.push_back(std::move(rel));
        return *this;
    }

    RingPtr build() {
        RingCtx* r = mutable_ctx();
        // Enumerate theta-free monomials of first degree <= D, grouped by bidegree.
        std::map<Bidegree, std::vector<Mon>> mons;
        Mon cur;
        cur.e.assign(r->gens_.size(), 0);
        enumerate(r, 0, 0, cur, mons);

        for (auto& [bd, list] : mons) {
            // Largest monomial first so pivots are leading terms.
            std::sort(list.begin(), list.end(), [](const Mon& a, const Mon& b) { return b < a; });
            std::map<Mon, int> col;
            for (size_t k = 0; k < list.size(); ++k) col[list[k]] = static_cast<int>(k);

            // Rows: every relation times every monomial of complementary bidegree.
            std::vector<std::vector<Fp>> rows;
            for (const auto& rel : r->relations_) {
                Bidegree rd = r->mon_bidegree(rel.begin()->first);
                Bidegree need{bd.first - rd.first, bd.second - rd.second};
                if (need.first < 0 || need.second < 0) continue;
                auto mit = mons.find(need);
                if (mit == mons.end()) continue;
                for (const Mon& m : mit->second) {
                    std::vector<Fp> row(list.size(), Fp(r->prime_, 0));
                    for (const auto& [rm, rc] : rel) row[col.at(m * rm)] += rc;
                    rows.push_back(std::move(row));
                }
            }

            reduce(r, bd, list, rows);
        }

        // Sanity: every relation must normalize to zero.
        for (const auto& rel : r->relations_)
            if (!r->normalize(rel).empty())
                throw presentation_error("relation fails to normalize to zero");

        RingPtr out = ctx_;
        ctx_.reset();
        return out;
    }

private:
    RingCtx* mutable_ctx() { return const_cast<RingCtx*>(ctx_.get()); }

    static void enumerate(RingCtx* r, size_t k, int ideg, Mon& cur,
                          std::map<Bidegree, std::vector<Mon>>& out) {
        if (k == r->gens_.size()) {
            out[r->mon_bidegree(cur)].push_back(cur);
            return;
        }
        int step = r->gens_[k].ideg;
        for (int e = 0; ideg + e * step <= r->top_degree_; ++e) {
            cur.e[k] = e;
            enumerate(r, k + 1, ideg + e * step, cur, out);
        }
        cur.e[k] = 0;
    }

    static void reduce(RingCtx* r, Bidegree bd, const std::vector<Mon>& list,
                       std::vector<std::vector<Fp>>& rows) {
        const size_t ncols = list.size();
        std::vector<int> pivot_row(ncols, -1);
        size_t rank = 0;
        for (size_t c = 0; c < ncols && rank < rows.size(); ++c) {
            size_t sel = rows.size();
            for (size_t i = rank; i < rows.size(); ++i)
                if (!rows[i][c].is_zero()) {
                    sel = i;
                    break;
                }
            if (sel == rows.size()) continue;
            std::swap(rows[rank], rows[sel]);
            Fp inv = rows[rank][c].inv();
            for (size_t j = c; j < ncols; ++j) rows[rank][j] *= inv;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == rank || rows[i][c].is_zero()) continue;
                Fp f = rows[i][c];
                for (size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
            }
            pivot_row[c] = static_cast<int>(rank);
            ++rank;
        }

        std::vector<Mon>& basis = r->basis_[bd];
        for (size_t c = 0; c < ncols; ++c) {
            if (pivot_row[c] < 0) {
                basis.push_back(list[c]);
                continue;
            }
            RingCtx::Row row;
            const auto& rr = rows[pivot_row[c]];
            for (size_t j = c + 1; j < ncols; ++j)
                if (!rr[j].is_zero()) row.emplace_back(list[j], -rr[j]);
            r->rewrite_[list[c]] = std::move(row);
        }
        // Keep smaller monomials first in basis tables.
        std::sort(basis.begin(), basis.end());
    }

    RingPtr ctx_;
};

/// Convenience front end matching the quotient-ring contract: generators,
/// relations, prime, top degree.
inline RingPtr make_quotient_ring(uint32_t prime, int top_degree,
                                  std::vector<GenInfo> gens,
                                  std::vector<std::map<Mon, Fp>> relations,
                                  bool with_theta = false) {
    RingBuilder b(prime, top_degree, with_theta);
    for (auto& g : gens) b.add_gen(std::move(g));
    for (auto& rel : relations) b.add_relation(std::move(rel));
    return b.build();
}

} // namespace ccalc
