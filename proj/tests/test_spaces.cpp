#include <catch2/catch_amalgamated.hpp>

#include "ccalc/spaces.hpp"
#include "test_helpers.hpp"

using namespace ccalc;

TEST_CASE("projective space bidegrees, pure point mode") {
    auto p2 = projective_space(2, 3, Mode::PurePoint);
    CHECK(p2->dim == 2);
    auto occupied = p2->ring->occupied_bidegrees();
    REQUIRE(occupied.size() == 3);
    CHECK(occupied[0] == Bidegree{0, 0});
    CHECK(occupied[1] == Bidegree{2, 1});
    CHECK(occupied[2] == Bidegree{4, 2});
    for (auto bd : occupied) CHECK(p2->ring->dim(bd) == 1);
}

TEST_CASE("P0 is the point") {
    auto p0 = projective_space(0, 5, Mode::PurePoint);
    CHECK(p0->dim == 0);
    CHECK(p0->ring->total_dimension() == 1);
    CHECK(p0->tangent->rank() == 0);
}

TEST_CASE("tangent bundle of P1 over F_2 is trivial in cohomology") {
    auto p1 = projective_space(1, 2, Mode::PurePoint);
    REQUIRE(p1->tangent.has_value());
    CHECK(p1->tangent->rank() == 1);
    // (1+u)^2 = 1 + 2u + u^2 = 1 since 2u = 0 and u^2 = 0.
    CHECK(p1->tangent->total_chern() == p1->one());
}

TEST_CASE("tangent bundle of P2") {
    auto p2 = projective_space(2, 3, Mode::PurePoint);
    // (1+u)^3 = 1 + 3u + 3u^2 + u^3 = 1 mod 3 and u^3 = 0.
    CHECK(p2->tangent->total_chern() == p2->one());
    auto p2f2 = projective_space(2, 2, Mode::PurePoint);
    Elem v = p2f2->gen("u");
    // (1+u)^3 over F_2: 1 + u + u^2.
    CHECK(p2f2->tangent->total_chern() == p2f2->one() + v + v * v);
}

TEST_CASE("Gr(1,n+1) matches P^n") {
    for (int n = 1; n <= 3; ++n) {
        auto gr = grassmannian(1, n + 1, 3);
        auto pn = projective_space(n, 3, Mode::PurePoint);
        CHECK(gr->dim == pn->dim);
        for (auto bd : pn->ring->occupied_bidegrees())
            CHECK(gr->ring->dim(bd) == pn->ring->dim(bd));
        CHECK(gr->ring->total_dimension() == pn->ring->total_dimension());
    }
}

TEST_CASE("Gr(2,4) dimensions and Pieri-type identity") {
    auto gr = grassmannian(2, 4, 2);
    CHECK(gr->ring->total_dimension() == 6);
    Elem c1 = gr->gen("c1"), c2 = gr->gen("c2"), d2 = gr->gen("d2");
    CHECK(c1 * c1 == c2 + d2);
}

TEST_CASE("grassmannian evenness and dimension oracle") {
    for (uint32_t l : {2u, 3u, 5u}) {
        for (int N = 2; N <= 5; ++N) {
            for (int k = 1; k < N; ++k) {
                auto gr = grassmannian(k, N, l);
                long total = 0;
                for (auto bd : gr->ring->occupied_bidegrees()) {
                    CHECK(bd.first % 2 == 0);
                    CHECK(gr->ring->dim(bd) ==
                          testutil::partitions_in_box(k, N - k, bd.second));
                    total += gr->ring->dim(bd);
                }
                CHECK(total == testutil::binomial(N, k));
            }
        }
    }
}

TEST_CASE("grassmannian stabilization in fixed degree") {
    // For fixed k the bidegree (i, i/2) dimension is independent of N in the
    // stable range i <= 2(N-k).
    for (int k = 1; k <= 3; ++k) {
        std::map<int, long> stable;
        for (int N = k + 1; N <= 7; ++N) {
            auto gr = grassmannian(k, N, 2);
            for (int s = 0; s <= N - k; ++s) {
                long d = gr->ring->dim({2 * s, s});
                auto [it, fresh] = stable.emplace(s, d);
                if (!fresh) CHECK(it->second == d);
            }
        }
    }
}

TEST_CASE("Whitney soundness of the tautological bundles") {
    for (auto [k, N] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}, {2, 5}}) {
        auto gr = grassmannian(k, N, 3);
        REQUIRE(gr->taut_sub.has_value());
        REQUIRE(gr->taut_quot.has_value());
        CHECK(gr->taut_sub->total_chern() * gr->taut_quot->total_chern() == gr->one());
    }
}

TEST_CASE("products") {
    auto p1 = projective_space(1, 2, Mode::PurePoint);
    auto p1xp1 = product(p1, p1);
    CHECK(p1xp1->ring->total_dimension() == 4);
    CHECK(p1xp1->ring->has_gen("u"));
    CHECK(p1xp1->ring->has_gen("v"));
    Elem u = p1xp1->gen("u"), v = p1xp1->gen("v");
    CHECK(!(u * v).is_zero());
    CHECK((u * u).is_zero());
    CHECK((v * v).is_zero());

    auto p2 = projective_space(2, 2, Mode::PurePoint);
    auto p1xp2 = product(p1, p2);
    CHECK(p1xp2->ring->total_dimension() == 6);

    // Kunneth at the level of dimensions.
    for (auto bd : p1xp2->ring->occupied_bidegrees()) {
        int expect = 0;
        for (int s = 0; s <= bd.second; ++s)
            expect += p1->ring->dim({2 * s, s}) *
                      p2->ring->dim({bd.first - 2 * s, bd.second - s});
        CHECK(p1xp2->ring->dim(bd) == expect);
    }

    // X x pt has the presentation of X.
    auto pt = point_space(2, Mode::PurePoint);
    auto p1xpt = product(p1, pt);
    CHECK(p1xpt->ring->total_dimension() == p1->ring->total_dimension());
    CHECK(p1xpt->ring->gens().size() == p1->ring->gens().size());

    // Product tangent multiplies pullbacks.
    REQUIRE(p1xp1->tangent.has_value());
    CHECK(p1xp1->tangent->rank() == 2);
    Elem expect = (p1xp1->one() + u).pow(2) * (p1xp1->one() + v).pow(2);
    CHECK(p1xp1->tangent->total_chern() == expect);
}

TEST_CASE("product mode and prime mismatches") {
    auto a = projective_space(1, 2, Mode::PurePoint);
    auto b = projective_space(1, 3, Mode::PurePoint);
    auto c = projective_space(1, 2, Mode::WeightUnit);
    CHECK_THROWS_AS(product(a, b), usage_error);
    CHECK_THROWS_AS(product(a, c), usage_error);
}

TEST_CASE("projective bundle presentations") {
    auto p1 = projective_space(1, 2, Mode::PurePoint);
    Elem u = p1->gen("u");
    Bundle E = whitney_sum(line_bundle(p1->zero(), "O"), line_bundle(u, "O(1)"));
    auto pe = proj_bundle(p1, E);
    CHECK(pe->dim == 2);
    // Free module of rank 2 over A(P^1): total dimension 4.
    CHECK(pe->ring->total_dimension() == 4);
    Elem xi = pe->gen("xi");
    Elem ub = pe->gen("u");
    // Defining relation: xi^2 - c1 xi + c2 = xi^2 + u xi over F_2.
    CHECK((xi * xi + ub * xi).is_zero());

    // Rank-one bundle: P(E) is the base.
    Bundle L = line_bundle(u, "O(1)");
    auto pl = proj_bundle(p1, L);
    CHECK(pl->dim == p1->dim);
    CHECK(pl->ring->total_dimension() == p1->ring->total_dimension());
}

TEST_CASE("weight unit mode on P2") {
    auto p2 = projective_space(2, 3, Mode::WeightUnit);
    CHECK(p2->ring->has_theta());
    // (2m, j) realized for j >= m.
    CHECK(p2->ring->dim({2, 1}) == 1);
    CHECK(p2->ring->dim({2, 2}) == 1);
    CHECK(p2->ring->dim({4, 2}) == 1);
    CHECK(p2->ring->dim({4, 1}) == 0);
    CHECK(p2->ring->dim({0, 3}) == 1);
}

TEST_CASE("restriction along embeddings") {
    auto e = linear_embedding(1, 2, 3, Mode::PurePoint);
    Elem u2 = e.target->gen("u");
    CHECK(e.restrict(u2) == e.source->gen("u"));
    CHECK(e.restrict(e.target->one()) == e.source->one());

    auto e13 = linear_embedding(1, 3, 3, Mode::PurePoint);
    Elem u3 = e13.target->gen("u");
    CHECK(e13.restrict(u3 * u3).is_zero());

    // Restriction commutes with normal form: (u^2)| computed two ways.
    auto e23 = linear_embedding(2, 3, 5, Mode::PurePoint);
    Elem w = e23.target->gen("u");
    CHECK(e23.restrict(w * w) == e23.restrict(w) * e23.restrict(w));
}

TEST_CASE("thom modules") {
    // pt inside P^1: tau in bidegree (2,1).
    auto e01 = linear_embedding(0, 1, 5, Mode::PurePoint);
    auto m01 = thom_module(e01);
    CHECK(m01->tau_bidegree() == Bidegree{2, 1});

    // Identity embedding: c = 0, module is A(X) itself.
    auto p2 = projective_space(2, 5, Mode::PurePoint);
    auto mid = thom_module(identity_embedding(p2));
    CHECK(mid->tau_bidegree() == Bidegree{0, 0});

    // Freeness: tau*a = tau*b iff a = b; tau*a = 0 iff a = 0.
    auto e12 = linear_embedding(1, 2, 3, Mode::PurePoint);
    auto m12 = thom_module(e12);
    Elem u = e12.source->gen("u");
    SupportedElem ta(m12, u);
    SupportedElem tb(m12, u + u);
    CHECK(ta == ta);
    CHECK(!(ta == tb));
    CHECK(SupportedElem(m12, e12.source->zero()).is_zero());

    // Module action: restrict then multiply.
    Elem U = e12.target->gen("u");
    CHECK(SupportedElem::tau(m12).act(U) == SupportedElem(m12, u));

    // Rank mismatch is rejected.
    EmbeddingData bad = e12;
    bad.normal = trivial_bundle(e12.source->ring);
    CHECK_THROWS_AS(thom_module(bad), usage_error);
}
