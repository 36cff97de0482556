#include <catch2/catch_amalgamated.hpp>

#include "ccalc/chern.hpp"
#include "ccalc/operations.hpp"
#include "ccalc/spaces.hpp"
#include "test_helpers.hpp"

using namespace ccalc;

namespace {

// Test-local dense polynomial in root variables: exponent vector -> residue.
// Deliberately independent of RootPoly so the reduction has a second route.
using TPoly = std::map<std::vector<int>, int64_t>;

TPoly tp_mul(const TPoly& a, const TPoly& b, uint32_t l, int cap) {
    TPoly out;
    for (const auto& [e1, c1] : a)
        for (const auto& [e2, c2] : b) {
            std::vector<int> e(e1.size());
            int total = 0;
            for (size_t k = 0; k < e.size(); ++k) {
                e[k] = e1[k] + e2[k];
                total += e[k];
            }
            if (total > cap) continue;
            out[e] = (out[e] + c1 * c2) % l;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second % l == 0 ? out.erase(it) : std::next(it);
    return out;
}

TPoly tp_sigma(int n, int k, uint32_t l, int cap) {
    TPoly out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        out[std::vector<int>(n, 0)] = 1;
        return out;
    }
    while (true) {
        std::vector<int> e(n, 0);
        for (int i : idx) e[i] = 1;
        out[e] = 1;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    (void)l;
    (void)cap;
    return out;
}

TPoly tp_product_of_series(const Series& s, int n, int cap) {
    TPoly out;
    out[std::vector<int>(n, 0)] = 1;
    uint32_t l = s.prime();
    for (int v = 0; v < n; ++v) {
        TPoly f;
        for (int d = 0; d <= std::min(cap, s.order()); ++d) {
            if (s.coeff(d).is_zero()) continue;
            std::vector<int> e(n, 0);
            e[v] = d;
            f[e] = s.coeff(d).value();
        }
        out = tp_mul(out, f, l, cap);
    }
    return out;
}

// Inverse of a unit in a truncated ring via the geometric series.
Elem elem_inverse(const Elem& x) {
    Elem one = Elem::one(x.ring());
    Elem nil = one - x; // nilpotent part (constant term of x must be 1)
    Elem acc = one;
    Elem power = nil;
    for (int k = 0; k <= x.ring()->top_degree() / 2 + 1; ++k) {
        if (power.is_zero()) break;
        acc = acc + power;
        power = power * nil;
    }
    return acc;
}

} // namespace

TEST_CASE("whitney sums") {
    auto p2 = projective_space(2, 2, Mode::PurePoint);
    Elem u = p2->gen("u");
    Bundle o1 = line_bundle(u, "O(1)");
    Bundle sum = whitney_sum(o1, o1);
    CHECK(sum.rank() == 2);
    // (1+u)^2 = 1 + u^2 over F_2.
    CHECK(sum.total_chern() == p2->one() + u * u);

    // E + trivial rank-0 summand is E.
    Bundle e0 = whitney_sum(sum, trivial_bundle(p2->ring));
    CHECK(e0.rank() == sum.rank());
    CHECK(e0.total_chern() == sum.total_chern());

    auto q2 = projective_space(2, 3, Mode::PurePoint);
    CHECK_THROWS_AS(whitney_sum(o1, line_bundle(q2->gen("u"))), usage_error);
}

TEST_CASE("normal bundle of a linear embedding matches the Euler-sequence ratio") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 4}}) {
        for (uint32_t l : {2u, 3u, 5u}) {
            auto e = linear_embedding(m, n, l, Mode::PurePoint);
            // Oracle: c(N) = restrict(c(T P^n)) / c(T P^m).
            Elem restricted = e.restrict(e.target->tangent->total_chern());
            Elem ratio = restricted * elem_inverse(e.source->tangent->total_chern());
            CHECK(e.normal.total_chern() == ratio);
            // And as a Whitney power of O(1).
            Bundle acc = trivial_bundle(e.source->ring);
            Elem usrc = m > 0 ? e.source->gen("u") : e.source->zero();
            for (int i = 0; i < n - m; ++i) acc = whitney_sum(acc, line_bundle(usrc));
            CHECK(acc.total_chern() == e.normal.total_chern());
            CHECK(acc.rank() == e.normal.rank());
        }
    }
}

TEST_CASE("inverse Todd genus of the presets") {
    for (uint32_t l : {2u, 3u, 5u}) {
        Operation q = steenrod_total(OpMode::QmodL, l);
        Genus itd = inverse_todd_of_operation(q);
        Series s = itd.series(2 * static_cast<int>(l));
        // 1 + u^{l-1}
        for (int k = 0; k <= s.order(); ++k) {
            bool expect = (k == 0 || k == static_cast<int>(l) - 1);
            CHECK(s.coeff(k).is_one() == expect);
        }

        Operation qp = steenrod_total(OpMode::QmodP, l);
        Series sp = inverse_todd_of_operation(qp).series(2 * static_cast<int>(l));
        for (int k = 0; k <= sp.order(); ++k)
            CHECK(sp.coeff(k).is_one() == (k == static_cast<int>(l) - 1));
    }
    Operation id = steenrod_total(OpMode::Identity, 5);
    Series si = inverse_todd_of_operation(id).series(4);
    CHECK(si == Series::constant(5, 4, 1));
}

TEST_CASE("Todd genus well-definedness") {
    for (uint32_t l : {2u, 3u, 5u}) {
        CHECK(has_well_defined_todd_genus(steenrod_total(OpMode::QmodL, l)));
        CHECK(has_well_defined_todd_genus(steenrod_total(OpMode::Pmotivic, l)));
        CHECK_FALSE(has_well_defined_todd_genus(steenrod_total(OpMode::QmodP, l)));
        CHECK_THROWS_AS(todd_of_operation(steenrod_total(OpMode::QmodP, l)),
                        not_well_defined);
    }
    CHECK(has_well_defined_todd_genus(steenrod_total(OpMode::Identity, 3)));
}

TEST_CASE("Todd series of u + u^3 mod 3") {
    Operation q = steenrod_total(OpMode::QmodL, 3);
    Series td = todd_of_operation(q).series(6);
    // 1 - u^2 + u^4 - u^6
    CHECK(td.coeff(0) == Fp(3, 1));
    CHECK(td.coeff(1) == Fp(3, 0));
    CHECK(td.coeff(2) == Fp(3, 2));
    CHECK(td.coeff(4) == Fp(3, 1));
    CHECK(td.coeff(6) == Fp(3, 2));
    // Multiply-back oracle.
    Series itd = inverse_todd_of_operation(q).series(6);
    CHECK(td * itd == Series::constant(3, 6, 1));

    Series td_id = todd_of_operation(steenrod_total(OpMode::Identity, 3)).series(5);
    CHECK(td_id == Series::constant(3, 5, 1));
}

TEST_CASE("genus evaluation on line bundles") {
    for (uint32_t l : {2u, 3u, 5u}) {
        auto pn = projective_space(4, l, Mode::PurePoint);
        Elem u = pn->gen("u");
        Bundle L = line_bundle(u);
        Genus itd = inverse_todd_of_operation(steenrod_total(OpMode::QmodL, l));
        CHECK(evaluate_genus(itd, L) == pn->one() + u.pow(static_cast<int>(l) - 1));
        // Rank-1 consistency for a random polynomial genus.
        testutil::Rng rng(l);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Fp> coeffs;
            for (int k = 0; k <= 4; ++k) coeffs.emplace_back(l, rng.below(l));
            Genus g(l, coeffs, false, "random");
            Elem direct = pn->zero();
            for (int k = 0; k <= 4; ++k) direct = direct + u.pow(k) * coeffs[k];
            CHECK(evaluate_genus(g, L) == direct);
        }
    }
}

TEST_CASE("mod-p inverse Todd genus is the top Chern power") {
    for (uint32_t p : {2u, 3u, 5u}) {
        for (int n = 1; n <= 4; ++n) {
            // Gr(n, 2n): the tautological subbundle has n independent Chern
            // classes, the generic rank-n test bundle.
            auto gr = grassmannian(n, 2 * n, p);
            const Bundle& E = *gr->taut_sub;
            Genus itd = inverse_todd_of_operation(steenrod_total(OpMode::QmodP, p));
            Elem expect = E.chern(n).pow(static_cast<int>(p) - 1);
            CHECK(evaluate_genus(itd, E) == expect);
        }
    }
}

TEST_CASE("genus of the trivial series is 1") {
    auto gr = grassmannian(2, 4, 3);
    Genus one(3, {Fp(3, 1)}, false, "1");
    CHECK(evaluate_genus(one, *gr->taut_sub) == gr->one());
    CHECK(evaluate_genus(one, trivial_bundle(gr->ring)) == gr->one());
}

TEST_CASE("genus multiplicativity and td*itd = 1") {
    testutil::Rng rng(99);
    for (uint32_t l : {2u, 3u}) {
        auto gr = grassmannian(2, 4, l);
        std::vector<Bundle> bundles = {*gr->taut_sub, *gr->taut_quot,
                                       line_bundle(gr->gen("c1")),
                                       trivial_bundle(gr->ring)};
        Operation q = steenrod_total(OpMode::QmodL, l);
        Genus itd = inverse_todd_of_operation(q);
        Genus td = todd_of_operation(q);
        for (const Bundle& E : bundles) {
            for (const Bundle& F : bundles) {
                Bundle sum = whitney_sum(E, F);
                CHECK(evaluate_genus(itd, sum) ==
                      evaluate_genus(itd, E) * evaluate_genus(itd, F));
            }
            CHECK(evaluate_genus(td, E) * evaluate_genus(itd, E) == gr->one());
        }
    }
}

TEST_CASE("division-free symmetric reduction against the literal oracle") {
    // For each catalog genus series and n <= 4 roots: reduce prod g(t_i) to
    // the elementary basis with the library, then substitute the literal
    // sigma expansions back in an independent polynomial type and compare
    // with the literal product.
    for (uint32_t l : {2u, 3u, 5u}) {
        std::vector<Series> genera;
        genera.push_back(inverse_todd_of_operation(steenrod_total(OpMode::QmodL, l)).series(8));
        genera.push_back(inverse_todd_of_operation(steenrod_total(OpMode::QmodP, l)).series(8));
        genera.push_back(todd_of_operation(steenrod_total(OpMode::QmodL, l)).series(8));
        for (const Series& g : genera) {
            for (int n = 1; n <= 4; ++n) {
                const int cap = 8;
                RootPoly prod = RootPoly::constant(l, n, cap, 1);
                for (int v = 0; v < n; ++v)
                    prod = prod * RootPoly::from_series(g, n, v, cap);
                SigmaPoly sp = symmetric_to_elementary(prod);

                // Back-substitute in the independent representation.
                TPoly recon;
                for (const auto& [b, c] : sp) {
                    TPoly term;
                    term[std::vector<int>(n, 0)] = c.value();
                    for (int k = 0; k < n; ++k)
                        for (int rep = 0; rep < b[k]; ++rep)
                            term = tp_mul(term, tp_sigma(n, k + 1, l, cap), l, cap);
                    for (const auto& [e, cc] : term) recon[e] = (recon[e] + cc) % l;
                }
                for (auto it = recon.begin(); it != recon.end();)
                    it = it->second % l == 0 ? recon.erase(it) : std::next(it);

                TPoly literal = tp_product_of_series(g, n, cap);
                CHECK(recon == literal);
            }
        }
    }
}

TEST_CASE("genus truncation guard") {
    auto p4 = projective_space(4, 3, Mode::PurePoint);
    Series short_series(3, 1);
    short_series.set_coeff(0, Fp(3, 1));
    Genus g(short_series, "short");
    CHECK_THROWS_AS(evaluate_genus(g, *p4->tangent), usage_error);
}
