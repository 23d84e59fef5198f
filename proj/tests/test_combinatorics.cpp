#include "generators.hpp"
#include "oracles.hpp"

#include "scribe/combinatorics.hpp"
#include "scribe/constructions.hpp"

#include <doctest.h>

#include <algorithm>

using namespace scribe;

namespace {

bool contains_facet(const std::vector<Mask>& facets, Mask set) {
    return std::any_of(facets.begin(), facets.end(), [&](Mask f) { return subset_of(f, set); });
}

std::set<Mask> facet_set(const FaceLattice& L) { return {L.facets().begin(), L.facets().end()}; }

std::vector<Vec> pts2(std::initializer_list<std::pair<double, double>> xy) {
    std::vector<Vec> out;
    for (auto [x, y] : xy) {
        Vec p(2);
        p << x, y;
        out.push_back(p);
    }
    return out;
}

} // namespace

TEST_SUITE("combinatorics") {

TEST_CASE("Gale evenness by hand") {
    CHECK(gale_is_facet(4, 7, {1, 2, 3, 4}));
    CHECK(gale_is_facet(4, 7, {2, 3, 5, 6}));
    CHECK_FALSE(gale_is_facet(4, 7, {1, 2, 4, 6}));
}

TEST_CASE("cyclic lattices") {
    GaleLattice c36 = cyclic_lattice(3, 6);
    CHECK(c36.facets.size() == 8);
    CHECK(c36.lattice.f_vector() == std::vector<long>{6, 12, 8});
    CHECK(cyclic_lattice(4, 7).facets.size() == 14);
    FaceLattice c48 = cyclic_lattice(4, 8).lattice;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) CHECK(c48.contains(bit(a) | bit(b)));
}

TEST_CASE("Gale facets agree with an independent evenness check and with exact hulls") {
    for (int d = 2; d <= 5; ++d)
        for (int n = d + 1; n <= 9; ++n) {
            const GaleLattice g = cyclic_lattice(d, n);
            std::set<Mask> lib(g.facets.begin(), g.facets.end());
            CHECK(lib == oracle::gale_facets(d, n));
        }
    for (auto [d, n] : {std::pair{3, 7}, {4, 8}, {5, 8}}) {
        std::vector<long> ts;
        for (int i = 1; i <= n; ++i) ts.push_back(i);
        CHECK(oracle::brute_facets_exact(oracle::moment_points(d, ts)) == oracle::gale_facets(d, n));
    }
}

TEST_CASE("cyclic realizations") {
    CHECK(cyclic_realization(4, 7).lattice == cyclic_lattice(4, 7).lattice);

    CurveOptions trig;
    trig.kind = Curve::Trigonometric;
    Polytope T = cyclic_realization(4, 8, trig);
    for (const Vec& v : T.vertices) CHECK(std::abs(v.norm() - 1) < 1e-12);
    CHECK(T.lattice == cyclic_lattice(4, 8).lattice);

    CurveOptions cl;
    cl.kind = Curve::Clustered;
    cl.eps = 1e-3;
    for (auto [d, n] : {std::pair{4, 8}, {5, 9}, {3, 7}}) {
        Polytope C = cyclic_realization(d, n, cl);
        CHECK(C.lattice.isomorphism_to(cyclic_lattice(d, n).lattice).has_value());
    }
}

TEST_CASE("k-sets of small polygons") {
    Polytope tri = hull(pts2({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(k_sets(tri, 1).size() == 3);

    Polytope sq = hull(pts2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    auto two = k_sets(sq, 2);
    CHECK(two.size() == 4);
    for (const KSet& s : two) {
        CHECK(sq.lattice.rank_of(s.set) == 1);
        CHECK(s.margin > 0);
        // The certificate separates.
        for (int i = 0; i < 4; ++i) {
            const double v = s.normal.dot(sq.vertices[i]) - s.offset;
            CHECK(((s.set & bit(i)) ? v > 0 : v < 0));
        }
    }
    CHECK_FALSE(separable_exact({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, bit(0) | bit(2)));
    CHECK(separable_exact({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, bit(0) | bit(1)));
}

TEST_CASE("5-sets of C(4,8) contain facets") {
    Polytope P = cyclic_realization(4, 8);
    auto facets = oracle::gale_facets(4, 8);
    std::vector<Mask> fl(facets.begin(), facets.end());
    auto ks = k_sets(P, 5, kDefaultTol, 4);
    CHECK(!ks.empty());
    for (const KSet& s : ks) CHECK(contains_facet(fl, s.set));
    // Output order and thread independence.
    CHECK(std::is_sorted(ks.begin(), ks.end(), [](const KSet& a, const KSet& b) { return a.set < b.set; }));
    auto serial = k_sets(P, 5, kDefaultTol, 1);
    REQUIRE(serial.size() == ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) CHECK(serial[i].set == ks[i].set);
}

TEST_CASE("missing faces") {
    Polytope sq = hull(pts2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    auto miss = missing_faces(sq.lattice, 2);
    REQUIRE(miss.size() == 2);
    CHECK(std::find(miss.begin(), miss.end(), bit(0) | bit(2)) != miss.end());
    CHECK(std::find(miss.begin(), miss.end(), bit(1) | bit(3)) != miss.end());
    CHECK(missing_faces(standard_simplex(4).lattice, 5).empty());
}

TEST_CASE("k-sets are never missing faces") {
    gen::Rng r(47);
    for (int t = 0; t < 25; ++t) {
        const int d = r.integer(2, 4);
        Polytope P = hull(r.gaussian_cloud(d, r.integer(d + 2, 10)));
        for (int k = 2; k <= std::min(4, P.n_vertices() - 1); ++k) {
            auto miss = missing_faces(P.lattice, k);
            for (const KSet& s : k_sets(P, k))
                CHECK(std::find(miss.begin(), miss.end(), s.set) == miss.end());
        }
    }
}

TEST_CASE("separable 3-sets of C(4,n) are triangles") {
    for (int n = 6; n <= 9; ++n) {
        Polytope P = cyclic_realization(4, n);
        for (const KSet& s : k_sets(P, 3)) CHECK(P.lattice.rank_of(s.set) == 2);
    }
}

TEST_CASE("neighborliness") {
    for (int n = 6; n <= 9; ++n) CHECK(neighborliness(cyclic_lattice(4, n).lattice) == 2);
    CHECK(neighborliness(cyclic_lattice(6, 10).lattice) == 3);
    for (int d = 2; d <= 5; ++d) CHECK(neighborliness(standard_simplex(d).lattice) == d);
    CHECK(neighborliness(cube(3).lattice) == 1);
}

TEST_CASE("end-vertex figures of cyclic polytopes are cyclic") {
    for (int d = 3; d <= 6; ++d)
        for (int n = d + 2; n <= 9; ++n) {
            FaceLattice L = cyclic_lattice(d, n).lattice;
            FaceLattice target = cyclic_lattice(d - 1, n - 1).lattice;
            CHECK(L.interval(bit(0)).isomorphism_to(target).has_value());
            CHECK(L.interval(bit(n - 1)).isomorphism_to(target).has_value());
        }
}

TEST_CASE("stacked analysis") {
    Polytope tri = named_fixture("triakis");
    StackedAnalysis a = stacked_analysis(tri.lattice);
    CHECK(a.tree.size() == 5);
    CHECK(a.max_degree == 4);
    CHECK_FALSE(a.inscribable);

    StackedAnalysis p = stacked_analysis(stacked_layout(StackingTree::path(3, 4)).lattice);
    CHECK(p.tree.size() == 4);
    CHECK(p.max_degree == 2);
    CHECK(p.inscribable);

    StackedAnalysis s = stacked_analysis(standard_simplex(3).lattice);
    CHECK(s.tree.size() == 1);
    CHECK(s.inscribable);

    CHECK_THROWS(stacked_analysis(cube(3).lattice));
}

TEST_CASE("random stacking trees round-trip through the lattice") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int d = 3 + static_cast<int>(seed % 2);
        StackingTree t = StackingTree::random(d, 1 + static_cast<int>(seed % 12), seed);
        CHECK(t.is_tree());
        CHECK(t.max_degree() <= d + 1);
        StackedLayout lay = stacked_layout(t);
        CHECK(lay.lattice.n_vertices() == d + t.size());
        StackedAnalysis a = stacked_analysis(lay.lattice);
        CHECK(a.tree.size() == t.size());
        CHECK(a.max_degree == t.max_degree());
        // Degree sequences match.
        std::vector<int> da, db;
        for (const auto& nb : t.adj) da.push_back(static_cast<int>(nb.size()));
        for (const auto& nb : a.tree.adj) db.push_back(static_cast<int>(nb.size()));
        std::sort(da.begin(), da.end());
        std::sort(db.begin(), db.end());
        CHECK(da == db);
    }
}

TEST_CASE("odd k-set counterexample") {
    OddKSetExample ex = odd_kset_counterexample(5, 10, 4);
    CHECK(popcount(ex.kset.set) == 4);
    CHECK(ex.realization.lattice.isomorphism_to(cyclic_lattice(5, 10).lattice).has_value());
    CHECK_FALSE(contains_facet(ex.realization.lattice.facets(), ex.kset.set));
    // Independently re-check separation of the reported set.
    CHECK(separate(ex.realization.vertices, ex.kset.set).has_value());
    CHECK_THROWS_AS(odd_kset_counterexample(4, 8, 3), std::invalid_argument);
}

} // TEST_SUITE
