#pragma once

#include <string>
#include <utility>

#include "ccalc/ring.hpp"

namespace ccalc {

/// A formal vector bundle: a rank and a total Chern class in the base ring.
/// The class c_0 must be 1 and nothing may live above bidegree (2*rank, rank).
class Bundle {
public:
    Bundle() = default;
    Bundle(int rank, Elem total, std::string name = "")
        : rank_(rank), total_(std::move(total)), name_(std::move(name)) {
        if (rank_ < 0) throw usage_error("bundle rank must be >= 0");
        if (chern(0) != Elem::one(ring()))
            throw usage_error("total Chern class must start with 1");
        for (const auto& [m, c] : total_.terms()) {
            Bidegree bd = ring()->mon_bidegree(m);
            if (bd.first != 2 * bd.second)
                throw usage_error("Chern classes must sit in bidegrees (2i,i)");
            if (bd.second > rank_)
                throw usage_error("Chern class above the bundle rank");
        }
    }

    const RingPtr& ring() const { return total_.ring(); }
    int rank() const { return rank_; }
    const Elem& total_chern() const { return total_; }
    const std::string& name() const { return name_; }

    /// The bidegree-(2i,i) part of the total class.
    Elem chern(int i) const { return total_.component({2 * i, i}); }

    Elem top_chern() const { return chern(rank_); }

private:
    int rank_ = 0;
    Elem total_;
    std::string name_;
};

inline Bundle trivial_bundle(const RingPtr& ring) { return Bundle(0, Elem::one(ring)); }

/// O(d)-style line bundle: rank one, first Chern class given.
inline Bundle line_bundle(const Elem& c1, const std::string& name = "") {
    return Bundle(1, Elem::one(c1.ring()) + c1, name);
}

inline Bundle whitney_sum(const Bundle& a, const Bundle& b) {
    if (a.ring().get() != b.ring().get())
        throw usage_error("whitney sum of bundles over different bases");
    return Bundle(a.rank() + b.rank(), a.total_chern() * b.total_chern());
}

} // namespace ccalc
