#include "scribe/hyperbolic.hpp"

#include "scribe/combinatorics.hpp"
#include "scribe/optim.hpp"
#include "scribe/scribability.hpp"

#include <Eigen/QR>

#include <cmath>
#include <map>
#include <numbers>

namespace scribe {

std::optional<Vec> lorentz_facet_normal(const Polytope& P, int facet, double tol) {
    Vec e = lorentz_J(P.dim + 1) * P.facet_normals[facet];
    const double q = lorentz_product(e, e);
    if (q <= tol * e.squaredNorm()) return std::nullopt;
    return Vec(e / std::sqrt(q));
}

DihedralAngle dihedral_between(const Vec& e1, const Vec& e2, double tol) {
    DihedralAngle a;
    a.product = lorentz_product(e1, e2);
    if (a.product < -1 - tol || a.product > 1 + tol) {
        a.note = "facet planes do not meet in the ball";
        a.distance = std::acosh(std::abs(a.product));
        return a;
    }
    a.defined = true;
    a.angle = a.product <= -1 + tol ? 0.0 : std::acos(std::clamp(-a.product, -1.0, 1.0));
    return a;
}

DihedralAngle dihedral_angle(const Polytope& P, Mask ridge, double tol) {
    auto rank = P.lattice.rank_of(ridge);
    if (!rank || *rank != P.dim - 2) throw std::invalid_argument("dihedral_angle: not a ridge");
    auto fs = P.lattice.facets_containing(ridge);
    auto e1 = lorentz_facet_normal(P, fs[0], tol);
    auto e2 = lorentz_facet_normal(P, fs[1], tol);
    if (!e1 || !e2) {
        DihedralAngle a;
        a.note = "a facet plane misses the ball";
        return a;
    }
    return dihedral_between(*e1, *e2, tol);
}

SimplexAngles simplex_dihedral_angles(const std::vector<Vec>& vertices, AngleModel model, double tol) {
    const int m = static_cast<int>(vertices.size()) - 1;
    if (m < 1 || vertices[0].size() != m) throw std::invalid_argument("simplex_dihedral_angles: need m+1 points in R^m");
    const Mat J = lorentz_J(m + 1);
    std::vector<std::optional<Vec>> normal(m + 1);
    for (int a = 0; a <= m; ++a) {
        const int base = a == 0 ? 1 : 0;
        if (model == AngleModel::Euclidean) {
            Mat D(m - 1, m);
            int r = 0;
            for (int b = 0; b <= m; ++b)
                if (b != a && b != base) D.row(r++) = (vertices[b] - vertices[base]).transpose();
            Mat N = null_space(D, 1e-12);
            if (N.cols() != 1) throw GeometryError("simplex_dihedral_angles: degenerate simplex");
            Vec n = N.col(0);
            if (n.dot(vertices[a] - vertices[base]) > 0) n = -n;
            normal[a] = n.normalized();
        } else {
            Mat G(m, m + 1);
            int r = 0;
            for (int b = 0; b <= m; ++b)
                if (b != a) G.row(r++) = (J * homogenize(vertices[b])).transpose();
            Mat N = null_space(G, 1e-12);
            if (N.cols() != 1) throw GeometryError("simplex_dihedral_angles: degenerate simplex");
            Vec e = N.col(0);
            if (lorentz_product(e, homogenize(vertices[a])) > 0) e = -e;
            const double q = lorentz_product(e, e);
            if (q > tol * e.squaredNorm()) normal[a] = Vec(e / std::sqrt(q));
        }
    }
    SimplexAngles out;
    for (int a = 0; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) {
            out.omitted.emplace_back(a, b);
            if (!normal[a] || !normal[b]) {
                DihedralAngle x;
                x.note = "a facet plane misses the ball";
                out.angles.push_back(x);
            } else if (model == AngleModel::Euclidean) {
                DihedralAngle x;
                x.defined = true;
                x.product = normal[a]->dot(*normal[b]);
                x.angle = std::acos(std::clamp(-x.product, -1.0, 1.0));
                out.angles.push_back(x);
            } else {
                out.angles.push_back(dihedral_between(*normal[a], *normal[b], tol));
            }
        }
    return out;
}

namespace {

std::vector<Vec> simplex_vertices(const Polytope& S) {
    Polytope E = to_euclidean_if_possible(S);
    if (E.form != Form::Euclidean) throw std::invalid_argument("simplex: realization not in an affine chart");
    if (E.n_vertices() != E.dim + 1) throw std::invalid_argument("simplex: polytope is not a simplex");
    return E.vertices;
}

} // namespace

AngleSum facet_ridge_angle_sum(const Polytope& S, Mask facet, double tol) {
    const auto vs = simplex_vertices(S);
    const int d = S.dim;
    if (d < 3) throw std::invalid_argument("facet_ridge_angle_sum: need d >= 3");
    if (popcount(facet) != d || !S.lattice.contains(facet)) throw std::invalid_argument("facet_ridge_angle_sum: not a facet");
    if (scribed_verdict(S, 0, d - 3, Mode::Strong, tol) != Verdict::True)
        throw GeometryError("facet_ridge_angle_sum: simplex is not strongly (0, d-3)-scribed");
    const int apex = indices(full_mask(d + 1) & ~facet)[0];
    SimplexAngles sa = simplex_dihedral_angles(vs, AngleModel::Hyperbolic, tol);
    AngleSum out;
    for (std::size_t k = 0; k < sa.omitted.size(); ++k) {
        auto [a, b] = sa.omitted[k];
        if (a != apex && b != apex) continue;
        if (!sa.angles[k].defined) throw GeometryError("facet_ridge_angle_sum: " + sa.angles[k].note);
        out.sum += sa.angles[k].angle;
    }
    out.verdict = out.sum >= std::numbers::pi - tol;
    return out;
}

AngleSum simplex_angle_sum(const Polytope& S, AngleModel model, double tol) {
    const auto vs = simplex_vertices(S);
    const int m = S.dim;
    SimplexAngles sa = simplex_dihedral_angles(vs, model, tol);
    AngleSum out;
    for (const auto& a : sa.angles) {
        if (!a.defined) throw GeometryError("simplex_angle_sum: " + a.note);
        out.sum += a.angle;
    }
    out.verdict = out.sum <= m * (m - 1) / 2.0 * std::numbers::pi + tol;
    return out;
}

AngleAudit stack01_audit(const Polytope& P_in, double tol) {
    Polytope P = to_euclidean_if_possible(P_in, tol);
    if (P.form != Form::Euclidean || P.dim != 4) throw std::invalid_argument("stack01_audit: Euclidean 4-polytope expected");
    StackedAnalysis sa = stacked_analysis(P.lattice);
    int leaves = 0, hubs = 0;
    for (const auto& a : sa.tree.adj) {
        leaves += a.size() == 1;
        hubs += a.size() == 5;
    }
    if (sa.simplices.size() != 26 || leaves != 20 || hubs != 6)
        throw std::invalid_argument("stack01_audit: not the twice-stacked 4-simplex");

    AngleAudit out;
    for (Mask v : P.lattice.faces(0)) {
        FaceClass fc = classify_face(P, v, tol);
        if (!fc.strong_avoid || fc.indeterminate) out.violations.push_back(v);
    }
    for (Mask e : P.lattice.faces(1)) {
        FaceClass fc = classify_face(P, e, tol);
        if (!fc.strong_cut || fc.indeterminate) out.violations.push_back(e);
    }
    out.preconditions_hold = out.violations.empty();

    std::map<Mask, int> facet_count;
    for (Mask s : sa.simplices)
        for (int v : indices(s)) ++facet_count[s & ~bit(v)];
    for (Mask s : sa.simplices) {
        bool interior = true;
        for (int v : indices(s)) interior = interior && facet_count[s & ~bit(v)] == 2;
        out.interior_simplices += interior;
    }
    std::map<Mask, double> totals;
    std::map<Mask, bool> undefined;
    for (const auto& [f, c] : facet_count)
        if (c == 2)
            for (int v : indices(f)) totals[f & ~bit(v)] = 0;

    for (Mask s : sa.simplices) {
        auto idx = indices(s);
        std::vector<Vec> vs;
        for (int i : idx) vs.push_back(P.vertices[i]);
        SimplexAngles ang = simplex_dihedral_angles(vs, AngleModel::Hyperbolic, tol);
        for (std::size_t k = 0; k < ang.omitted.size(); ++k) {
            Mask ridge = s & ~bit(idx[ang.omitted[k].first]) & ~bit(idx[ang.omitted[k].second]);
            auto it = totals.find(ridge);
            if (it == totals.end()) continue;
            if (ang.angles[k].defined)
                it->second += ang.angles[k].angle;
            else
                undefined[ridge] = true;
        }
    }
    for (const auto& [r, t] : totals) {
        out.ridges.push_back(r);
        out.totals.push_back(t);
        out.total += t;
        if (undefined.count(r))
            out.undefined.push_back(r);
        else if (t >= std::numbers::pi - tol)
            out.flagged.push_back(r);
    }
    return out;
}

std::optional<Polytope> sample_scribed_simplex(int d, std::mt19937_64& rng, int max_tries, double tol) {
    if (d < 4) throw std::invalid_argument("sample_scribed_simplex: need d >= 4");
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> radius(1.0, 1.5);
    const auto dirs = regular_simplex_points(d, 1.0);
    for (int t = 0; t < max_tries; ++t) {
        Mat G(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) G(a, b) = gauss(rng);
        Mat Qm = Eigen::HouseholderQR<Mat>(G).householderQ();
        std::vector<Vec> pts;
        for (const Vec& u : dirs) {
            Vec v = Qm * u;
            for (int a = 0; a < d; ++a) v(a) += 0.3 * gauss(rng);
            pts.push_back(v.normalized() * radius(rng));
        }
        Polytope S;
        try {
            S = hull(pts, Form::Euclidean, tol);
        } catch (const GeometryError&) {
            continue;
        }
        if (S.n_vertices() != d + 1) continue;
        if (scribed_verdict(S, 0, d - 3, Mode::Strong, tol) == Verdict::True) return S;
    }
    return std::nullopt;
}

} // namespace scribe
