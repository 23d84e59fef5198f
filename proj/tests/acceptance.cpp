// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "generators.hpp"
#include "oracles.hpp"

#include "scribe/caps.hpp"
#include "scribe/combinatorics.hpp"
#include "scribe/constructions.hpp"
#include "scribe/hyperbolic.hpp"
#include "scribe/scribability.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace scribe;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s (%.2fs) %s\n", out.pass ? "PASS" : "FAIL", id, name, secs, out.detail.str().c_str());
    std::fflush(stdout);
    failures += !out.pass;
}

std::string pair_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

StackingTree acceptance_tree(std::uint64_t s) {
    return StackingTree::random(3 + static_cast<int>(s % 2), 1 + static_cast<int>(s % 15), s);
}

// Polygon cut out by half-planes {s_k <u_k, x> <= s_k} with every line
// carrying an edge; nullopt when the region is empty, unbounded, or some
// line is redundant.
std::optional<Polytope> tangent_line_polygon(const std::vector<double>& angles, const std::vector<int>& signs) {
    const int m = static_cast<int>(angles.size());
    std::vector<double> dirs;
    for (int k = 0; k < m; ++k) dirs.push_back(std::fmod(angles[k] + (signs[k] < 0 ? pi : 0), 2 * pi));
    std::sort(dirs.begin(), dirs.end());
    for (int k = 0; k < m; ++k) {
        const double gap = (k + 1 < m ? dirs[k + 1] : dirs[0] + 2 * pi) - dirs[k];
        if (gap >= pi - 1e-9) return std::nullopt; // recession cone is nontrivial
    }
    auto u = [&](int k) {
        Vec v(2);
        v << std::cos(angles[k]), std::sin(angles[k]);
        return v;
    };
    std::vector<Vec> pts;
    std::vector<int> on_line(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            Mat M(2, 2);
            M << u(a).transpose(), u(b).transpose();
            if (std::abs(M.determinant()) < 1e-9) continue;
            Vec x = M.inverse() * Vec::Ones(2);
            bool inside = true;
            for (int k = 0; k < m; ++k) inside = inside && signs[k] * (u(k).dot(x) - 1) <= 1e-9;
            if (!inside) continue;
            pts.push_back(x);
            ++on_line[a];
            ++on_line[b];
        }
    if (pts.size() < 3) return std::nullopt;
    for (int k = 0; k < m; ++k)
        if (on_line[k] < 2) return std::nullopt;
    Polytope P = hull(pts);
    if (P.n_vertices() != m) return std::nullopt;
    return P;
}

} // namespace

int main() {
    criterion(1, "triakis fixture", [](Outcome& o) {
        Polytope T = triakis_weak_inscribed();
        for (int i = 0; i < T.n_vertices(); ++i)
            o.require(std::abs(lorentz_product(T.generator(i), T.generator(i))) <= 1e-12, "null generator");
        o.require(scribed_verdict(T, 0, 0, Mode::Weak) == Verdict::True, "weak (0,0)");
        o.require(scribed_verdict(T, 0, 0, Mode::Strong) == Verdict::False, "strong (0,0) false");
    });

    criterion(2, "Gale evenness vs exact hulls, d<=6, n<=10", [](Outcome& o) {
        int cases = 0;
        for (int d = 2; d <= 6; ++d)
            for (int n = d + 1; n <= 10; ++n) {
                std::vector<long> ts;
                for (int t = 1; t <= n; ++t) ts.push_back(t);
                Polytope P = hull_exact(oracle::moment_points(d, ts));
                const auto& lib = cyclic_lattice(d, n).facets;
                std::set<Mask> gale(lib.begin(), lib.end());
                std::set<Mask> hullf(P.lattice.facets().begin(), P.lattice.facets().end());
                o.require(gale == hullf, "C" + pair_str(d, n));
                ++cases;
            }
        o.detail << cases << " (d,n) pairs";
    });

    criterion(3, "every (3d/2-1)-set of C(d,n) contains a facet, d in {4,6}, n<=10", [](Outcome& o) {
        long checked = 0;
        for (int d : {4, 6}) {
            const int k = 3 * d / 2 - 1;
            for (int n = std::max(d + 1, k + 1); n <= 10; ++n) {
                Polytope P = cyclic_realization(d, n);
                const auto& facets = P.lattice.facets();
                for (const KSet& s : k_sets(P, k)) {
                    bool has = false;
                    for (Mask f : facets) has = has || subset_of(f, s.set);
                    o.require(has, "k-set without facet in C" + pair_str(d, n));
                    ++checked;
                }
            }
        }
        o.detail << checked << " k-sets";
    });

    criterion(4, "odd-dimensional 4-set without a facet in C(5,10)", [](Outcome& o) {
        OddKSetExample ex = odd_kset_counterexample(5, 10, 4);
        o.require(popcount(ex.kset.set) == 4, "size");
        o.require(ex.realization.lattice.isomorphism_to(cyclic_lattice(5, 10).lattice).has_value(), "cyclic type");
        o.require(separate(ex.realization.vertices, ex.kset.set).has_value(), "separable");
        for (Mask f : ex.realization.lattice.facets()) o.require(!subset_of(f, ex.kset.set), "contains a facet");
    });

    criterion(5, "inscribed truncated polytopes, 50 random programs", [](Outcome& o) {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const int d = 3 + static_cast<int>(s % 2);
            TruncationProgram prog = random_truncation_program(d, 3, 30, s);
            InscribedTruncation r = inscribe_truncated(prog, Body::sphere(d));
            double err = 0;
            for (const Vec& v : r.polytope.vertices) err = std::max(err, std::abs(v.norm() - 1));
            o.require(err <= 1e-9, "sphere residual, seed " + std::to_string(s));
            o.require(r.polytope.lattice == run_truncation(prog).lattice, "lattice, seed " + std::to_string(s));
            o.require(scribed_verdict(polar_dual(r.polytope), d - 1, d - 1, Mode::Strong) == Verdict::True,
                      "polar circumscribed, seed " + std::to_string(s));
            if (s % 5 == 0) {
                Body E{Vec(Vec::LinSpaced(d, 1, d)).asDiagonal()};
                InscribedTruncation e = inscribe_truncated(prog, E);
                for (const Vec& v : e.polytope.vertices)
                    o.require(std::abs(E.value(v) - 1) <= 1e-9, "ellipsoid residual, seed " + std::to_string(s));
                o.require(e.polytope.lattice == run_truncation(prog).lattice, "ellipsoid lattice");
            }
        }
    });

    criterion(6, "ridge-scribed stacked polytopes, random trees", [](Outcome& o) {
        for (std::uint64_t s = 0; s < 30; ++s) {
            StackingTree t = acceptance_tree(s);
            Polytope P = ridge_scribed_stacked(t);
            o.require(P.lattice == stacked_layout(t).lattice, "lattice, seed " + std::to_string(s));
            for (Mask R : P.lattice.faces(t.d - 2)) {
                FaceClass fc = classify_face(P, R);
                o.require(fc.tangent && std::abs(fc.min_norm - 1) <= 1e-9, "ridge tangency, seed " + std::to_string(s));
            }
        }
    });

    criterion(7, "ball packings of truncated polytopes", [](Outcome& o) {
        for (std::uint64_t s = 0; s < 30; ++s) {
            TruncationProgram prog = program_from_tree(acceptance_tree(s));
            BallPacking bp = ball_packing_truncated(prog);
            FaceLattice L = run_truncation(prog).lattice;
            std::vector<Mask> edges = L.faces(1), touching;
            for (auto [a, b] : bp.tangencies) touching.push_back(bit(a) | bit(b));
            o.require(set_system_isomorphism(L.n_vertices(), edges, touching).has_value(),
                      "tangency graph, seed " + std::to_string(s));
            o.require(bp.max_tangency_residual() <= 1e-9, "residual, seed " + std::to_string(s));
            o.require(bp.min_separation() > 0, "overlap, seed " + std::to_string(s));
        }
    });

    criterion(8, "odd cyclic polytopes (1,d-1)-scribed", [](Outcome& o) {
        for (auto [d, n] : {std::pair{3, 6}, {5, 10}, {5, 12}}) {
            OddCyclic oc = odd_cyclic_scribed(d, n);
            o.require(scribed_verdict(oc.polytope, 1, d - 1, Mode::Strong) == Verdict::True, "verdict C" + pair_str(d, n));
            o.require(oc.polytope.lattice.relabeled(oc.relabel) == cyclic_lattice(d, n).lattice, "lattice C" + pair_str(d, n));
        }
    });

    criterion(9, "weak (i,i+1) realizations of 30 random polytopes", [](Outcome& o) {
        int cases = 0;
        for (int s = 0; s < 30; ++s) {
            const int d = 2 + s % 4;
            gen::Rng r(1000 + s);
            Polytope P = hull(r.gaussian_cloud(d, d + 1 + s % (12 - d)));
            for (int i = 0; i <= d - 2; ++i) {
                Polytope Q = weak_ij_realization(P, i, s);
                o.require(scribed_verdict(Q, i, i + 1, Mode::Weak) == Verdict::True,
                          "seed " + std::to_string(s) + " i " + std::to_string(i));
                o.require(Q.lattice == P.lattice, "lattice");
                ++cases;
            }
        }
        o.detail << cases << " (P,i) cases";
    });

    criterion(10, "polarity law on 100 scribed instances", [](Outcome& o) {
        gen::Rng r(2024);
        std::vector<Polytope> inst;
        for (std::uint64_t s = 0; inst.size() < 100; ++s) {
            Polytope P;
            const int d = 2 + static_cast<int>(s % 3);
            switch (s % 4) {
            case 0: {
                std::vector<Vec> pts;
                for (int k = 0; k < d + 2 + static_cast<int>(s % 5); ++k) pts.push_back(r.shell(d, 0.7, 1.5));
                P = hull(pts);
                break;
            }
            case 1:
                P = inscribe_truncated(random_truncation_program(3 + static_cast<int>(s % 2), 2, 16, s), Body::sphere(3 + static_cast<int>(s % 2))).polytope;
                break;
            case 2:
                P = ridge_scribed_stacked(StackingTree::random(3 + static_cast<int>(s % 2), 1 + static_cast<int>(s % 5), s));
                break;
            default:
                P = transform(cube(d, r.uniform(0.6, 1.2)), gen::sphere_map(r, d, 0.3));
            }
            if (P.form != Form::Euclidean) continue;
            bool inside = true;
            for (const Vec& h : P.facet_normals) inside = inside && h(0) < 0;
            if (inside) inst.push_back(P);
        }
        int compared = 0, skipped = 0;
        for (const Polytope& P : inst) {
            const int d = P.dim;
            Polytope D = polar_dual(P);
            for (Mode mode : {Mode::Strong, Mode::Weak})
                for (int i = 0; i < d; ++i)
                    for (int j = i; j < d; ++j) {
                        Verdict a = scribed_verdict(P, i, j, mode), b = scribed_verdict(D, d - 1 - j, d - 1 - i, mode);
                        if (a == Verdict::Indeterminate || b == Verdict::Indeterminate) {
                            ++skipped;
                            continue;
                        }
                        o.require(a == b, "disagreement at " + pair_str(i, j));
                        ++compared;
                    }
        }
        o.detail << compared << " verdict pairs, " << skipped << " indeterminate";
    });

    criterion(11, "weakly circumscribed polygons with 5-8 edges have no separating edge", [](Outcome& o) {
        gen::Rng r(77);
        int accepted = 0, mixed_sign_draws = 0;
        while (accepted < 1000) {
            const int m = r.integer(5, 8);
            std::vector<double> angles;
            for (int k = 0; k < m; ++k) angles.push_back(r.uniform(0, 2 * pi));
            std::vector<int> signs;
            for (int k = 0; k < m; ++k) signs.push_back(r.uniform() < 0.15 ? -1 : 1);
            mixed_sign_draws += std::count(signs.begin(), signs.end(), -1) > 0;
            auto P = tangent_line_polygon(angles, signs);
            if (!P) continue;
            ++accepted;
            for (EdgeKind k : polygon_edge_classes(*P)) o.require(k == EdgeKind::NonSeparating, "separating edge");
        }
        o.detail << accepted << " polygons, " << mixed_sign_draws << " draws with reversed sides";
    });

    criterion(12, "quadric through 7 vertices of a projective cube vanishes on the 8th", [](Outcome& o) {
        gen::Rng r(12);
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            const Mat M = gen::projective_matrix(r, 3);
            std::vector<Vec> img;
            for (int k = 0; k < 8; ++k) {
                Vec x(4);
                x << 1, k & 1 ? 1.0 : -1.0, k & 2 ? 1.0 : -1.0, k & 4 ? 1.0 : -1.0;
                img.push_back(dehomogenize(Vec(M * x)));
            }
            for (int skip = 0; skip < 8; ++skip) {
                std::vector<Vec> seven;
                for (int k = 0; k < 8; ++k)
                    if (k != skip) seven.push_back(img[k]);
                QuadricSpace Q = quadric_space_through(seven);
                o.require(Q.dimension() == 3, "quadric space dimension");
                worst = std::max(worst, Q.max_relative_residual(img[skip]));
            }
        }
        o.require(worst <= 1e-8, "residual");
        o.detail << "max residual " << worst;
    });

    criterion(13, "cap/segment and k-ply/k-set equivalences", [](Outcome& o) {
        gen::Rng r(13);
        int near = 0;
        for (int t = 0; t < 10000; ++t) {
            const int d = r.integer(2, 4);
            Vec v = r.shell(d, 1.001, 3), w = r.shell(d, 1.001, 3);
            Mat V(d, 2);
            V << v, w;
            const CutTest cut = strong_cut_test(V);
            if (std::abs(cut.min_norm - 1) <= kDefaultTol) {
                ++near;
                continue;
            }
            o.require(caps_disjoint(cap_from_point(v), cap_from_point(w)) == cut.strong_cut, "cap/segment");
        }
        for (int t = 0; t < 1000; ++t) {
            const int n = r.integer(5, 8);
            std::vector<Vec> pts;
            for (int k = 0; k < n; ++k) pts.push_back(r.shell(3, 1.05, 1.6));
            o.require(kply_equivalence_check(pts, r.integer(2, 4)).agree(), "k-ply/k-set");
        }
        o.detail << near << " segments too close to tangent to call";
    });

    criterion(14, "angle certificates", [](Outcome& o) {
        std::mt19937_64 rng(14);
        int sampled = 0;
        double low = 10;
        while (sampled < 500) {
            auto S = sample_scribed_simplex(4, rng);
            if (!S) continue;
            ++sampled;
            for (Mask F : S->lattice.facets()) {
                const double sum = facet_ridge_angle_sum(*S, F).sum;
                low = std::min(low, sum);
                o.require(sum >= pi - 1e-9, "facet ridge sum below pi");
            }
        }
        gen::Rng r(15);
        double high = 0;
        for (AngleModel model : {AngleModel::Euclidean, AngleModel::Hyperbolic}) {
            for (int done = 0; done < 500;) {
                std::vector<Vec> v;
                for (int k = 0; k < 4; ++k) v.push_back(model == AngleModel::Euclidean ? r.gaussian(3) : r.in_ball(3, 0.99));
                Polytope T = hull(v);
                if (T.n_vertices() != 4) continue;
                ++done;
                const double sum = simplex_angle_sum(T, model).sum;
                high = std::max(high, sum);
                o.require(sum <= 3 * pi + 1e-9, "tetrahedron angle sum");
            }
        }
        Polytope E = ridge_tangent_simplex(3);
        double worst = 0;
        for (Mask e : E.lattice.faces(1)) {
            DihedralAngle a = dihedral_angle(E, e);
            o.require(a.defined, "edge-tangent angle defined");
            worst = std::max(worst, a.angle);
        }
        o.require(worst <= 1e-9, "edge-tangent tetrahedron angle");
        o.detail << "min facet sum - pi = " << low - pi << ", max tetra sum - 3pi = " << high - 3 * pi;
    });

    criterion(15, "threshold arithmetic, d<=8", [](Outcome& o) {
        auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        for (int d = 2; d <= 8; ++d) {
            Thresholds t = thresholds(d);
            o.require(rel(t.c_d, oracle::c_const(d)) <= 1e-12, "c_" + std::to_string(d));
            if (d < 3) continue;
            const double base = std::pow(oracle::c_const(d - 1) * (d + 1), d - 1);
            o.require(rel(t.even_bound, base * (1.5 * d - 1)) <= 1e-12, "even bound d=" + std::to_string(d));
            o.require(rel(t.odd_bound, base * (3 * d / 2 - 1)) <= 1e-12, "odd bound d=" + std::to_string(d));
            for (int k = 1; k <= d / 2; ++k)
                o.require(rel(neighborly_bound(d, k), base * (k + 1)) <= 1e-12, "neighborly bound");
        }
    });

    std::printf("%d of 15 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
