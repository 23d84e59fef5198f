#include "generators.hpp"
#include "oracles.hpp"

#include "scribe/combinatorics.hpp"
#include "scribe/polytope.hpp"

#include <doctest.h>

#include <algorithm>

using namespace scribe;

namespace {

std::vector<long> fv(const Polytope& P) { return P.lattice.f_vector(); }

std::set<Mask> facet_set(const FaceLattice& L) { return {L.facets().begin(), L.facets().end()}; }

bool isomorphic(const FaceLattice& a, const FaceLattice& b) { return a.isomorphism_to(b).has_value(); }

std::vector<Vec> square() {
    std::vector<Vec> out;
    for (auto [x, y] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
        Vec p(2);
        p << x, y;
        out.push_back(p);
    }
    return out;
}

} // namespace

TEST_SUITE("polytope") {

TEST_CASE("hull of simple solids") {
    CHECK(fv(standard_simplex(3)) == std::vector<long>{4, 6, 4});
    CHECK(fv(cube(3)) == std::vector<long>{8, 12, 6});
    CHECK(fv(cube(4)) == std::vector<long>{16, 32, 24, 8});
    CHECK(fv(regular_simplex(5)) == std::vector<long>{6, 15, 20, 15, 6});
}

TEST_CASE("hull drops interior points and keeps input order") {
    std::vector<Vec> pts = square();
    pts.insert(pts.begin() + 1, Vec::Zero(2));
    Polytope P = hull(pts);
    CHECK(P.n_vertices() == 4);
    CHECK(P.source == std::vector<int>{0, 2, 3, 4});
    CHECK_THROWS_AS(hull({pts[0], pts[3], Vec::Zero(2)}), LowerDimensionalError);
}

TEST_CASE("moment curve t = 1..7 in R^4 matches brute-force facets") {
    auto exact = oracle::moment_points(4, {1, 2, 3, 4, 5, 6, 7});
    Polytope P = hull_exact(exact);
    auto brute = oracle::brute_facets_exact(exact);
    CHECK(brute.size() == 14);
    CHECK(facet_set(P.lattice) == brute);

    std::vector<Vec> flt;
    for (const auto& p : exact) {
        Vec v(4);
        for (int k = 0; k < 4; ++k) v(k) = to_double(p[k]);
        flt.push_back(v);
    }
    CHECK(facet_set(hull(flt).lattice) == brute);
}

TEST_CASE("facet normals support the polytope") {
    gen::Rng r(3);
    for (int t = 0; t < 40; ++t) {
        const int d = r.integer(2, 4);
        Polytope P = hull(r.gaussian_cloud(d, r.integer(d + 1, 14)));
        REQUIRE(P.facet_normals.size() == P.lattice.facets().size());
        for (std::size_t k = 0; k < P.facet_normals.size(); ++k) {
            const Vec& h = P.facet_normals[k];
            CHECK(std::abs(h.tail(d).norm() - 1) < 1e-12);
            for (int i = 0; i < P.n_vertices(); ++i) {
                const double s = h.dot(P.generator(i));
                if (P.lattice.facets()[k] & bit(i)) CHECK(std::abs(s) < 1e-9);
                else CHECK(s < -1e-9);
            }
        }
    }
}

TEST_CASE("hull lattices are closed under facet intersection and satisfy Euler") {
    gen::Rng r(23);
    for (int t = 0; t < 40; ++t) {
        const int d = r.integer(2, 5);
        Polytope P = hull(r.gaussian_cloud(d, r.integer(d + 1, 13)));
        CHECK(P.lattice.euler_holds());
        CHECK(P.lattice.intersection_property_holds());
        for (int k = 0; k < d - 1; ++k)
            for (Mask F : P.lattice.faces(k)) CHECK(P.lattice.closure(F) == F);
    }
}

TEST_CASE("hull lattice is invariant under affine maps") {
    gen::Rng r(29);
    for (int t = 0; t < 30; ++t) {
        const int d = r.integer(2, 4);
        auto pts = r.gaussian_cloud(d, r.integer(d + 2, 12));
        Mat A = Mat::Identity(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) A(i, j) += r.uniform(-0.5, 0.5);
        Vec b = r.gaussian(d);
        std::vector<Vec> img;
        for (const Vec& p : pts) img.push_back(A * p + b);
        Polytope P = hull(pts), Q = hull(img);
        CHECK(P.source == Q.source);
        CHECK(P.lattice == Q.lattice);
    }
}

TEST_CASE("polar duality") {
    Polytope C = cube(3);
    Polytope O = polar_dual(C);
    CHECK(O.form == Form::Euclidean);
    CHECK(fv(O) == std::vector<long>{6, 12, 8});

    Polytope S = polar_dual(regular_simplex(4));
    CHECK(fv(S) == std::vector<long>{5, 10, 10, 5});

    // Off-center cube: the polar is a cone.
    Polytope shifted = affine_image(C, Mat::Identity(3, 3), Vec::Constant(3, 2.0));
    Polytope K = polar_dual(shifted);
    CHECK(K.form == Form::Cone);
    CHECK(fv(K) == std::vector<long>{6, 12, 8});
}

TEST_CASE("polar dual twice is the identity on lattices") {
    gen::Rng r(31);
    for (int t = 0; t < 30; ++t) {
        const int d = r.integer(2, 4);
        std::vector<Vec> pts;
        for (int k = 0; k < r.integer(d + 2, 12); ++k) pts.push_back(r.shell(d, 0.6, 1.4));
        Polytope P = hull(pts);
        Polytope Q = polar_dual(polar_dual(P));
        // Match the double polar's generators to the originals by direction.
        REQUIRE(Q.n_vertices() == P.n_vertices());
        std::vector<int> perm(Q.n_vertices(), -1);
        for (int i = 0; i < Q.n_vertices(); ++i)
            for (int j = 0; j < P.n_vertices(); ++j)
                if ((Q.generator(i).normalized() - P.generator(j).normalized()).norm() < 1e-9) perm[i] = j;
        REQUIRE(std::count(perm.begin(), perm.end(), -1) == 0);
        CHECK(Q.lattice.relabeled(perm) == P.lattice);
        // Rank r faces correspond to rank d-1-r faces.
        Polytope D = polar_dual(P);
        for (int k = 0; k < d; ++k) {
            CHECK(P.lattice.faces(k).size() == D.lattice.faces(d - 1 - k).size());
            for (Mask F : P.lattice.faces(k)) CHECK(D.lattice.rank_of(P.lattice.dual_face(F)) == d - 1 - k);
        }
    }
}

TEST_CASE("face figures") {
    Polytope C = cube(3);
    for (Mask v : C.lattice.faces(0)) CHECK(face_figure(C, v).f_vector() == std::vector<long>{3, 3});
    for (Mask F : C.lattice.facets()) CHECK(face_figure(C, F).n_vertices() == 1);

    // Vertex figure of C(4,7) at an end vertex is C(3,6).
    FaceLattice L = cyclic_lattice(4, 7).lattice;
    CHECK(isomorphic(L.interval(bit(0)), cyclic_lattice(3, 6).lattice));
}

TEST_CASE("face figure is dual to the associated face of the polar") {
    gen::Rng r(37);
    for (int t = 0; t < 20; ++t) {
        const int d = r.integer(3, 4);
        std::vector<Vec> pts;
        for (int k = 0; k < r.integer(d + 2, 11); ++k) pts.push_back(r.shell(d, 0.7, 1.3));
        Polytope P = hull(pts);
        Polytope D = polar_dual(P);
        for (int k = 0; k < d - 1; ++k)
            for (Mask F : P.lattice.faces(k)) {
                const Mask G = P.lattice.dual_face(F);
                FaceLattice fig = face_figure(P, F);
                // The associated face, as a polytope in its own right.
                std::vector<Mask> sub;
                const auto idx = indices(G);
                for (Mask H : D.lattice.faces(D.dim - 1 - k - 1)) {
                    if (!subset_of(H, G)) continue;
                    Mask m = 0;
                    for (std::size_t a = 0; a < idx.size(); ++a)
                        if (H & bit(idx[a])) m |= bit(static_cast<int>(a));
                    sub.push_back(m);
                }
                if (idx.size() == 1) {
                    CHECK(fig.dim() == 0);
                    continue;
                }
                FaceLattice face = FaceLattice::from_facets(static_cast<int>(idx.size()), sub);
                CHECK(isomorphic(fig, face.dual()));
            }
    }
}

TEST_CASE("stacking") {
    Polytope S = standard_simplex(3);
    Polytope one = stack(S, S.lattice.facets()[0]);
    CHECK(fv(one) == std::vector<long>{5, 9, 6});

    Polytope all = S;
    for (Mask F : S.lattice.facets()) all = stack(all, F);
    CHECK(fv(all) == std::vector<long>{8, 18, 12});

    // Two stackings along a path: the new apex sits on a facet of the first cap.
    Polytope two = one;
    for (Mask F : one.lattice.facets())
        if (F & bit(4)) {
            two = stack(one, F);
            break;
        }
    StackedAnalysis a = stacked_analysis(two.lattice);
    CHECK(a.tree.size() == 3);
    CHECK(a.max_degree == 2);
}

TEST_CASE("truncation") {
    Polytope C = truncate(cube(3), 0, 0.3);
    CHECK(fv(C) == std::vector<long>{10, 15, 7});

    Polytope T = standard_simplex(3);
    for (int k = 0; k < 4; ++k) {
        // The original vertex k keeps its position among the survivors.
        int idx = -1;
        for (int i = 0; i < T.n_vertices(); ++i)
            if ((T.vertices[i] - standard_simplex(3).vertices[k]).norm() < 1e-12) idx = i;
        REQUIRE(idx >= 0);
        T = truncate(T, idx, 0.25);
    }
    CHECK(fv(T) == std::vector<long>{12, 18, 8});
}

TEST_CASE("truncation is polar to stacking") {
    gen::Rng r(41);
    for (int t = 0; t < 20; ++t) {
        const int d = r.integer(3, 4);
        // Polars of random simplicial polytopes are simple.
        std::vector<Vec> pts;
        for (int k = 0; k < r.integer(d + 3, 10); ++k) pts.push_back(r.shell(d, 0.7, 1.3));
        Polytope P = polar_dual(hull(pts));
        if (P.form != Form::Euclidean) continue;
        const int v = r.integer(0, P.n_vertices() - 1);
        FaceLattice lhs = truncate_lattice(P.lattice, v);
        FaceLattice dual = P.lattice.dual();
        FaceLattice rhs = stack_lattice(dual, dual.facets()[0]);
        // Facet of the dual polar to vertex v.
        for (Mask F : dual.facets())
            if (F == P.lattice.dual_face(bit(v))) rhs = stack_lattice(dual, F);
        CHECK(isomorphic(lhs, rhs.dual()));
        CHECK(isomorphic(truncate(P, v, 0.2).lattice, lhs));
    }
}

TEST_CASE("stack then truncate the apex keeps the old faces away from the facet") {
    gen::Rng r(43);
    for (int t = 0; t < 15; ++t) {
        const int d = 3;
        std::vector<Vec> pts;
        for (int k = 0; k < r.integer(5, 9); ++k) pts.push_back(r.shell(d, 0.7, 1.3));
        Polytope P = hull(pts);
        const Mask F = P.lattice.facets()[0];
        Polytope Q = truncate(stack(P, F), P.n_vertices(), 0.1);
        // Old vertices are unchanged by index, so every face of P not inside F
        // is still a face.
        for (int k = 0; k < d; ++k)
            for (Mask G : P.lattice.faces(k))
                if (!subset_of(G, F)) CHECK(Q.lattice.contains(G));
    }
}

TEST_CASE("pyramids") {
    Polytope sq = hull(square());
    Polytope pyr = pyramid(sq);
    CHECK(fv(pyr) == std::vector<long>{5, 8, 5});

    const Polytope S = standard_simplex(3);
    Polytope T = S;
    for (Mask F : S.lattice.facets()) T = stack(T, F);
    Polytope PT = pyramid(T);
    CHECK(PT.dim == 4);
    CHECK(PT.n_vertices() == 9);
    CHECK(isomorphic(face_figure(PT, bit(8)), T.lattice));
}

TEST_CASE("face geometry") {
    Vec a(2), b(2), c(2);
    a << -1, 0;
    b << 1, 0;
    c << 0, 1;
    Polytope tri = hull({a, b, c});
    FaceGeometry g = face_geometry(tri, bit(0) | bit(1));
    CHECK(g.relint_point.norm() < 1e-15);
    REQUIRE(g.span.cols() == 1);
    CHECK(std::abs(std::abs(g.span(0, 0)) - 1) < 1e-12);

    Polytope S = regular_simplex(3);
    for (Mask F : S.lattice.facets()) {
        Vec centroid = Vec::Zero(3);
        for (int i : indices(F)) centroid += S.vertices[i] / 3;
        CHECK((face_geometry(S, F).relint_point - centroid).norm() < 1e-12);
        CHECK(face_geometry(S, F).span.cols() == 2);
    }
    FaceGeometry pt = face_geometry(S, bit(2));
    CHECK(pt.span.cols() == 0);
    CHECK((pt.relint_point - S.vertices[2]).norm() < 1e-15);
}

TEST_CASE("exact hull and lattice tools") {
    auto exact = oracle::moment_points(3, {0, 1, 2, 3, 4, 5});
    Polytope P = hull_exact(exact);
    CHECK(P.is_exact());
    CHECK(fv(P) == std::vector<long>{6, 12, 8});
    CHECK(facet_set(P.lattice) == oracle::brute_facets_exact(exact));
    auto perm = P.lattice.isomorphism_to(cyclic_lattice(3, 6).lattice);
    REQUIRE(perm);
    CHECK(P.lattice.relabeled(*perm) == cyclic_lattice(3, 6).lattice);
}

} // TEST_SUITE
