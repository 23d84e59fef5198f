#include "scribe/scribability.hpp"

#include "scribe/optim.hpp"

#include <cmath>
#include <limits>

namespace scribe {

const char* to_string(Mode m) { return m == Mode::Strong ? "strong" : "weak"; }

namespace {

constexpr double kRelintMargin = 1e-10;

bool upper_sheet(const Polytope& P, double tol) {
    if (P.form == Form::Euclidean) return true;
    for (const Vec& g : P.vertices)
        if (g(0) <= tol * g.norm()) return false;
    return true;
}

// Largest s such that some convex combination of the columns of V equal to
// z = V lambda0 has every weight >= s.
double relint_margin(const Mat& V, const Vec& lambda0) {
    const int k = static_cast<int>(V.cols());
    if (k == 1) return 1.0;
    Mat M(V.rows() + 1, k);
    M << V, Mat::Ones(1, k);
    Mat N = null_space(M, 1e-10);
    if (N.cols() == 0) return lambda0.minCoeff();
    const int c = static_cast<int>(N.cols());
    // variables (nu, s): maximize s with lambda0 + N nu >= s, s <= 1, |nu| <= 10
    Mat A(k + 1 + 2 * c, c + 1);
    Vec b(A.rows());
    A.setZero();
    A.topLeftCorner(k, c) = -N;
    A.block(0, c, k, 1).setOnes();
    b.head(k) = lambda0;
    A(k, c) = 1;
    b(k) = 1;
    A.block(k + 1, 0, c, c) = Mat::Identity(c, c);
    A.block(k + 1 + c, 0, c, c) = -Mat::Identity(c, c);
    b.tail(2 * c).setConstant(10);
    Vec obj = Vec::Zero(c + 1);
    obj(c) = 1;
    auto lp = solve_lp(A, b, Mat(0, c + 1), Vec(0), obj);
    if (lp.status != LpStatus::Optimal) return lambda0.minCoeff();
    return lp.value;
}

struct AvoidOutcome {
    bool ok = false;
    bool ambiguous = false;
    Vec plane;
    std::string note;
};

// Hyperplane {a . xbar = x_0} through the face generators with every other
// generator strictly below it and the ball (|a| <= 1) on the same side.
AvoidOutcome strong_avoid_qp(const std::vector<Vec>& on, const std::vector<Vec>& off, double tol) {
    const int d = static_cast<int>(on[0].size()) - 1;
    auto solve = [&](double delta) {
        // Generators are scaled to unit length; far vertices otherwise
        // dominate the conditioning of the active sets.
        Mat E(on.size(), d);
        Vec f(on.size());
        for (std::size_t r = 0; r < on.size(); ++r) {
            const Vec g = on[r].normalized();
            E.row(r) = g.tail(d).transpose();
            f(r) = g(0);
        }
        Mat A(off.size(), d);
        Vec b(off.size());
        for (std::size_t r = 0; r < off.size(); ++r) {
            const Vec g = off[r].normalized();
            A.row(r) = g.tail(d).transpose();
            b(r) = g(0) - delta;
        }
        return min_norm_qp(E, f, A, b);
    };
    auto accept = [&](const QpResult& q) {
        if (!q.feasible) return false;
        // Equalities are met to working precision.
        for (const Vec& v : on)
            if (std::abs(v.tail(d).dot(q.x) - v(0)) > 1e-8 * v.norm()) return false;
        return q.x.norm() <= 1 + tol;
    };

    AvoidOutcome out;
    QpResult q0 = solve(0);
    if (!q0.converged) {
        out.ambiguous = true;
        out.note = "avoidance program did not converge";
        return out;
    }
    if (!accept(q0)) return out;
    bool tight = false;
    for (const Vec& w : off) tight = tight || w.tail(d).dot(q0.x) - w(0) >= -1e-9 * w.norm();
    if (!tight) {
        out.ok = true;
        out.plane = q0.x;
        return out;
    }
    QpResult q1 = solve(tol);
    if (q1.converged && accept(q1)) {
        out.ok = true;
        out.plane = q1.x;
        return out;
    }
    out.ambiguous = true;
    out.note = "supporting hyperplane only found with a non-face vertex on it";
    return out;
}

} // namespace

CutTest strong_cut_test(const Mat& V, double tol) {
    MinNormResult mn = min_norm_point(V);
    CutTest ct;
    ct.converged = mn.converged;
    ct.point = mn.point;
    ct.min_norm = mn.point.norm();
    const bool near_sphere = std::abs(ct.min_norm - 1) <= tol;
    const bool relint = near_sphere && relint_margin(V, mn.weights) >= kRelintMargin;
    ct.strong_cut = ct.min_norm < 1 - tol || (near_sphere && relint);
    ct.tangent = near_sphere && relint;
    return ct;
}

namespace {

FaceClass classify_euclidean(const Polytope& P, Mask face, double tol) {
    FaceClass fc;
    fc.face = face;
    fc.rank = *P.lattice.rank_of(face);
    auto idx = indices(face);
    const int d = P.dim;

    Mat V(d, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) V.col(k) = P.vertices[idx[k]];
    CutTest ct = strong_cut_test(V, tol);
    if (!ct.converged) {
        fc.indeterminate = true;
        fc.note = "min-norm iteration did not converge";
    }
    fc.min_norm = ct.min_norm;
    fc.witness_point = ct.point;
    fc.strong_cut = ct.strong_cut;
    fc.tangent = ct.tangent;

    FaceGeometry g = face_geometry(P, face);
    Vec perp = g.base - g.span * (g.span.transpose() * g.base);
    fc.span_distance = perp.norm();
    fc.weak_cut = fc.span_distance <= 1 + tol;
    fc.weak_avoid = fc.span_distance >= 1 - tol;
    fc.weak_tangent = std::abs(fc.span_distance - 1) <= tol;

    std::vector<Vec> on, off;
    for (int i = 0; i < P.n_vertices(); ++i)
        ((face & bit(i)) ? on : off).push_back(P.generator(i));
    AvoidOutcome av = strong_avoid_qp(on, off, tol);
    fc.strong_avoid = av.ok;
    if (av.ok) fc.witness_plane = av.plane;
    if (av.ambiguous) {
        fc.indeterminate = true;
        fc.note = av.note;
    }
    return fc;
}

FaceClass classify_cone(const Polytope& P, Mask face, double tol) {
    FaceClass fc;
    fc.face = face;
    fc.rank = *P.lattice.rank_of(face);
    const int d = P.dim;
    const auto& facets = P.lattice.facets();

    // Face cone sliced at x_0 = 1: equalities on the facets through F.
    std::vector<int> eq, ineq;
    for (std::size_t k = 0; k < facets.size(); ++k)
        (subset_of(face, facets[k]) ? eq : ineq).push_back(static_cast<int>(k));
    Mat E(eq.size(), d), A(ineq.size(), d);
    Vec f(eq.size()), b(ineq.size());
    for (std::size_t r = 0; r < eq.size(); ++r) {
        const Vec& h = P.facet_normals[eq[r]];
        E.row(r) = h.tail(d).transpose();
        f(r) = -h(0);
    }
    for (std::size_t r = 0; r < ineq.size(); ++r) {
        const Vec& h = P.facet_normals[ineq[r]];
        A.row(r) = h.tail(d).transpose();
        b(r) = -h(0);
    }
    QpResult q = min_norm_qp(E, f, A, b);
    if (!q.converged) {
        fc.indeterminate = true;
        fc.note = "cut program did not converge";
    }
    bool feasible = q.feasible;
    if (feasible)
        for (std::size_t r = 0; r < eq.size(); ++r)
            feasible = feasible && std::abs(E.row(r).dot(q.x) - f(r)) <= 1e-8 * (1 + q.x.norm());
    if (feasible) {
        fc.min_norm = q.x.norm();
        fc.witness_point = q.x;
        const bool near_sphere = std::abs(fc.min_norm - 1) <= tol;
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < ineq.size(); ++r)
            margin = std::min(margin, (b(r) - A.row(r).dot(q.x)) / std::sqrt(1 + q.x.squaredNorm()));
        const bool relint = margin >= kRelintMargin;
        fc.strong_cut = fc.min_norm < 1 - tol || (near_sphere && relint);
        fc.tangent = near_sphere && relint;
    } else {
        fc.min_norm = std::numeric_limits<double>::infinity();
    }

    // Lorentz Gram matrix of an orthonormal basis of the linear span.
    FaceGeometry g = face_geometry(P, face);
    Mat Gram = g.span.transpose() * lorentz_J(d + 1) * g.span;
    Eigen::SelfAdjointEigenSolver<Mat> es(Gram);
    double lmin = es.eigenvalues().minCoeff();
    fc.weak_avoid = lmin >= -tol;
    fc.weak_cut = lmin <= tol;
    fc.weak_tangent = std::abs(lmin) <= tol;
    fc.span_distance = std::numeric_limits<double>::quiet_NaN();

    std::vector<Vec> on, off;
    for (int i = 0; i < P.n_vertices(); ++i)
        ((face & bit(i)) ? on : off).push_back(P.vertices[i].normalized());
    AvoidOutcome av = strong_avoid_qp(on, off, tol);
    fc.strong_avoid = av.ok;
    if (av.ok) fc.witness_plane = av.plane;
    if (av.ambiguous) {
        fc.indeterminate = true;
        fc.note = av.note;
    }
    return fc;
}

} // namespace

FaceClass classify_face(const Polytope& P, Mask face, double tol) {
    auto r = P.lattice.rank_of(face);
    if (!r || *r < 0 || *r >= P.dim) throw std::invalid_argument("classify_face: not a proper face");
    FaceClass fc = upper_sheet(P, tol) ? classify_euclidean(to_euclidean_if_possible(P, tol), face, tol)
                                       : classify_cone(P, face, tol);
    if (!fc.indeterminate && fc.tangent != (fc.strong_cut && fc.strong_avoid)) {
        fc.indeterminate = true;
        fc.note = "tangency disagrees with cut-and-avoid";
    }
    return fc;
}

ScribedReport scribed_report(const Polytope& P, int i, int j, Mode mode, double tol) {
    if (i < 0 || i > j || j > P.dim - 1) throw std::invalid_argument("scribed_report: need 0 <= i <= j <= d-1");
    ScribedReport rep;
    rep.i = i;
    rep.j = j;
    rep.mode = mode;
    rep.tol = tol;
    std::vector<int> ranks{i};
    if (j != i) ranks.push_back(j);
    for (int r : ranks)
        for (Mask f : P.lattice.faces(r)) rep.faces.push_back(classify_face(P, f, tol));
    for (const FaceClass& fc : rep.faces) {
        RankTally& t = rep.tallies[fc.rank];
        ++t.faces;
        t.strong_cut += fc.strong_cut;
        t.weak_cut += fc.weak_cut;
        t.strong_avoid += fc.strong_avoid;
        t.weak_avoid += fc.weak_avoid;
        t.tangent += fc.tangent;
        t.weak_tangent += fc.weak_tangent;
        t.indeterminate += fc.indeterminate;

        const bool undecided = mode == Mode::Strong && fc.indeterminate;
        const bool avoid = mode == Mode::Strong ? fc.strong_avoid : fc.weak_avoid;
        const bool cut = mode == Mode::Strong ? fc.strong_cut : fc.weak_cut;
        bool bad = false;
        if (!undecided && fc.rank == i && !avoid) {
            rep.avoid_violations.push_back(fc.face);
            bad = true;
        }
        if (!undecided && fc.rank == j && !cut) {
            rep.cut_violations.push_back(fc.face);
            bad = true;
        }
        if (undecided && !bad) rep.undecided.push_back(fc.face);
    }
    if (!rep.avoid_violations.empty() || !rep.cut_violations.empty()) rep.verdict = Verdict::False;
    else if (!rep.undecided.empty()) rep.verdict = Verdict::Indeterminate;
    else rep.verdict = Verdict::True;
    return rep;
}

Verdict scribed_verdict(const Polytope& P, int i, int j, Mode mode, double tol) {
    return scribed_report(P, i, j, mode, tol).verdict;
}

std::vector<EdgeKind> polygon_edge_classes(const Polytope& polygon, double tol) {
    if (polygon.dim != 2 || polygon.form != Form::Euclidean)
        throw std::invalid_argument("polygon_edge_classes: Euclidean polygon expected");
    std::vector<EdgeKind> out;
    for (const Vec& h : polygon.facet_normals) {
        double b = -h(0); // edge line {n . x = b} with |n| = 1
        if (std::abs(std::abs(b) - 1) > tol) throw GeometryError("polygon_edge_classes: edge line not tangent");
        out.push_back(b < 0 ? EdgeKind::Separating : EdgeKind::NonSeparating);
    }
    return out;
}

std::optional<Vec> closest_ball_point(const Polytope& P, Mask face) {
    if (upper_sheet(P, kDefaultTol)) {
        Polytope E = to_euclidean_if_possible(P);
        auto idx = indices(face);
        Mat V(P.dim, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) V.col(k) = E.vertices[idx[k]];
        return min_norm_point(V).point;
    }
    FaceClass fc = classify_cone(P, face, kDefaultTol);
    if (!fc.witness_point) return std::nullopt;
    return fc.witness_point;
}

namespace {

Polytope center_inside(const Polytope& P, double tol) {
    Vec c = Vec::Zero(P.dim);
    for (Mask f : P.lattice.facets()) {
        auto p = closest_ball_point(P, f);
        if (!p || p->norm() > 1 + tol) throw GeometryError("bounded_realization: a facet misses the ball");
        c += *p;
    }
    c /= static_cast<double>(P.lattice.facets().size());
    return to_euclidean_if_possible(transform(P, hyperbolic_translation(c, tol), tol), tol);
}

} // namespace

Polytope bounded_realization(const Polytope& P, int i, int j, BoundedMode mode, double tol) {
    if (scribed_verdict(P, i, j, Mode::Strong, tol) != Verdict::True)
        throw GeometryError("bounded_realization: input is not strongly scribed");
    if (mode == BoundedMode::ContainsCenter) return center_inside(P, tol);
    Polytope polar = polar_dual(P, tol);
    Polytope centered = center_inside(polar, tol);
    return to_euclidean_if_possible(polar_dual(to_euclidean_if_possible(centered, tol), tol), tol);
}

} // namespace scribe
