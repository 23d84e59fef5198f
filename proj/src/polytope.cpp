#include "scribe/polytope.hpp"

#include "scribe/optim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace scribe {

const char* to_string(Form f) { return f == Form::Euclidean ? "euclidean" : "cone"; }

Vec Polytope::generator(int i) const {
    return form == Form::Euclidean ? homogenize(vertices[i]) : vertices[i];
}

Mat Polytope::generator_matrix() const {
    Mat G(dim + 1, n_vertices());
    for (int i = 0; i < n_vertices(); ++i) G.col(i) = generator(i);
    return G;
}

namespace {

struct RawFacet {
    Mask mask;
    Vec normal;
};

// Calls visit(subset) for every k-subset of [n] in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool inside_known(Mask m, const std::vector<RawFacet>& facets) {
    for (const auto& f : facets)
        if (subset_of(m, f.mask)) return true;
    return false;
}

// Shared tail of both hull engines: extract vertices, reindex, grade.
Polytope assemble(int d, Form form, const std::vector<Vec>& points, const std::vector<int>& kept,
                  std::vector<RawFacet> raw) {
    const int n = static_cast<int>(kept.size());
    std::vector<int> vertex_ids;
    for (int i = 0; i < n; ++i) {
        Mask cl = full_mask(n);
        for (const auto& f : raw)
            if (f.mask & bit(i)) cl &= f.mask;
        if (cl == bit(i)) vertex_ids.push_back(i);
    }
    std::vector<int> new_index(n, -1);
    for (std::size_t k = 0; k < vertex_ids.size(); ++k) new_index[vertex_ids[k]] = static_cast<int>(k);

    std::vector<std::pair<Mask, Vec>> facets;
    for (const auto& f : raw) {
        Mask m = 0;
        for (int i : indices(f.mask))
            if (new_index[i] >= 0) m |= bit(new_index[i]);
        facets.push_back({m, f.normal});
    }
    std::sort(facets.begin(), facets.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    Polytope P;
    P.dim = d;
    P.form = form;
    std::vector<Mask> masks;
    for (const auto& f : facets) {
        masks.push_back(f.first);
        P.facet_normals.push_back(f.second);
    }
    P.lattice = FaceLattice::from_facets(static_cast<int>(vertex_ids.size()), masks);
    for (int i : vertex_ids) {
        P.vertices.push_back(points[kept[i]]);
        P.source.push_back(kept[i]);
    }
    if (P.lattice.dim() != d) throw GeometryError("hull: face lattice has wrong rank");
    return P;
}

void check_pointed(const Mat& G) {
    const int D = static_cast<int>(G.rows());
    Mat A(G.cols() + 2 * D, D);
    A << -G.transpose(), Mat::Identity(D, D), -Mat::Identity(D, D);
    Vec b(A.rows());
    b << -Vec::Ones(G.cols()), Vec::Constant(2 * D, 1e6);
    auto lp = solve_lp(A, b, Mat(0, D), Vec(0), Vec::Zero(D));
    if (lp.status != LpStatus::Optimal) throw GeometryError("hull: cone is not pointed");
}

} // namespace

Polytope hull(const std::vector<Vec>& points, Form form, double tol) {
    if (points.empty()) throw std::invalid_argument("hull: no points");
    const int dim_in = static_cast<int>(points[0].size());
    const int d = form == Form::Euclidean ? dim_in : dim_in - 1;
    const int D = d + 1;
    if (static_cast<int>(points.size()) > kMaxVertices) throw std::invalid_argument("hull: too many points");
    for (const Vec& p : points)
        if (p.size() != dim_in) throw std::invalid_argument("hull: inconsistent dimensions");

    // Normalized homogeneous generators: Euclidean input is centered and
    // scaled to unit radius, cone generators to unit length.
    Vec center = Vec::Zero(dim_in);
    double scale = 1.0;
    if (form == Form::Euclidean) {
        for (const Vec& p : points) center += p;
        center /= static_cast<double>(points.size());
        scale = 0;
        for (const Vec& p : points) scale = std::max(scale, (p - center).norm());
        if (scale == 0) throw LowerDimensionalError(0, d);
    }
    std::vector<Vec> gens;
    std::vector<int> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Vec g;
        if (form == Form::Euclidean) {
            g = homogenize(Vec((points[i] - center) / scale));
        } else {
            double nrm = points[i].norm();
            if (nrm == 0) throw GeometryError("hull: zero generator");
            g = points[i] / nrm;
        }
        bool dup = false;
        for (const Vec& h : gens) dup = dup || (g - h).norm() <= 1e-12;
        if (dup) continue;
        gens.push_back(g);
        kept.push_back(static_cast<int>(i));
    }
    const int n = static_cast<int>(gens.size());
    Mat G(D, n);
    for (int i = 0; i < n; ++i) G.col(i) = gens[i];
    int rank = numeric_rank(G, 1e-9);
    if (rank < D) throw LowerDimensionalError(rank - 1, d);
    if (form == Form::Cone) check_pointed(G);

    std::vector<RawFacet> raw;
    for_each_subset(n, D - 1, [&](const std::vector<int>& sub) {
        Mask m = 0;
        for (int i : sub) m |= bit(i);
        if (inside_known(m, raw)) return;
        Mat S(D - 1, D);
        for (int r = 0; r < D - 1; ++r) S.row(r) = gens[sub[r]].transpose();
        Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        if (sv(D - 2) <= 1e-9 * sv(0)) return;
        Vec h = svd.matrixV().col(D - 1);
        bool pos = false, neg = false;
        Mask on = 0;
        for (int i = 0; i < n; ++i) {
            double s = h.dot(gens[i]);
            if (s > tol) pos = true;
            else if (s < -tol) neg = true;
            else on |= bit(i);
            if (pos && neg) return;
        }
        if (pos) h = -h;
        // Refit the plane through every point found on it.
        if (popcount(on) > D - 1) {
            Mat T(popcount(on), D);
            int r = 0;
            for (int i : indices(on)) T.row(r++) = gens[i].transpose();
            Eigen::JacobiSVD<Mat> fit(T, Eigen::ComputeFullV);
            Vec h2 = fit.matrixV().col(D - 1);
            if (h2.dot(h) < 0) h2 = -h2;
            h = h2;
        }
        raw.push_back({on, h});
    });

    // Back to the caller's coordinates.
    for (auto& f : raw) {
        Vec h = f.normal;
        if (form == Form::Euclidean) {
            Vec hbar = h.tail(d) / scale;
            double h0 = h(0) - hbar.dot(center);
            h(0) = h0;
            h.tail(d) = hbar;
            h /= hbar.norm();
        }
        f.normal = h;
    }
    return assemble(d, form, points, kept, std::move(raw));
}

Polytope hull_exact(const std::vector<RVec>& points, Form form) {
    if (points.empty()) throw std::invalid_argument("hull_exact: no points");
    const int dim_in = static_cast<int>(points[0].size());
    const int d = form == Form::Euclidean ? dim_in : dim_in - 1;
    const int D = d + 1;
    if (static_cast<int>(points.size()) > kMaxVertices) throw std::invalid_argument("hull: too many points");

    std::vector<RVec> gens;
    std::vector<int> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (static_cast<int>(points[i].size()) != dim_in) throw std::invalid_argument("hull: inconsistent dimensions");
        RVec g;
        if (form == Form::Euclidean) {
            g.push_back(Rational(1));
            g.insert(g.end(), points[i].begin(), points[i].end());
        } else {
            g = points[i];
        }
        // Cone generators are compared up to positive scaling.
        bool dup = false;
        for (const RVec& h : gens) {
            auto basis = exact_null_space({g, h}, D);
            if (static_cast<int>(basis.size()) == D - 1) {
                Rational dot = 0;
                for (int k = 0; k < D; ++k) dot += g[k] * h[k];
                if (sgn(dot) > 0) dup = true;
            }
        }
        if (dup) continue;
        gens.push_back(g);
        kept.push_back(static_cast<int>(i));
    }
    const int n = static_cast<int>(gens.size());
    int rank = exact_rank(gens, D);
    if (rank < D) throw LowerDimensionalError(rank - 1, d);

    std::vector<Vec> dpoints;
    for (const RVec& p : points) {
        Vec v(dim_in);
        for (int k = 0; k < dim_in; ++k) v(k) = p[k].get_d();
        dpoints.push_back(v);
    }
    if (form == Form::Cone) {
        Mat G(D, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < D; ++k) G(k, i) = gens[i][k].get_d();
        for (int i = 0; i < n; ++i) G.col(i).normalize();
        check_pointed(G);
    }

    std::vector<RawFacet> raw;
    for_each_subset(n, D - 1, [&](const std::vector<int>& sub) {
        Mask m = 0;
        for (int i : sub) m |= bit(i);
        if (inside_known(m, raw)) return;
        std::vector<RVec> rows;
        for (int i : sub) rows.push_back(gens[i]);
        auto ns = exact_null_space(rows, D);
        if (ns.size() != 1) return;
        RVec h = ns[0];
        bool pos = false, neg = false;
        Mask on = 0;
        for (int i = 0; i < n; ++i) {
            Rational s = 0;
            for (int k = 0; k < D; ++k) s += h[k] * gens[i][k];
            int sg = sgn(s);
            if (sg > 0) pos = true;
            else if (sg < 0) neg = true;
            else on |= bit(i);
            if (pos && neg) return;
        }
        Vec hd(D);
        for (int k = 0; k < D; ++k) hd(k) = (pos ? -1 : 1) * h[k].get_d();
        if (form == Form::Euclidean) hd /= hd.tail(d).norm();
        else hd.normalize();
        raw.push_back({on, hd});
    });

    Polytope P = assemble(d, form, dpoints, kept, std::move(raw));
    for (int s : P.source) P.exact.push_back(points[s]);
    return P;
}

Polytope to_cone(const Polytope& P) {
    if (P.form == Form::Cone) return P;
    Polytope C = P;
    C.form = Form::Cone;
    C.exact.clear();
    for (auto& v : C.vertices) v = homogenize(v);
    for (auto& h : C.facet_normals) h.normalize();
    return C;
}

Polytope to_euclidean_if_possible(const Polytope& P, double tol) {
    if (P.form == Form::Euclidean) return P;
    for (const Vec& g : P.vertices)
        if (g(0) <= tol * g.norm()) return P;
    Polytope E = P;
    E.form = Form::Euclidean;
    E.exact.clear();
    for (auto& v : E.vertices) v = dehomogenize(v, 0.0);
    for (auto& h : E.facet_normals) h /= h.tail(P.dim).norm();
    return E;
}

Polytope polar_dual(const Polytope& P, double tol) {
    const int D = P.dim + 1;
    const Mat J = lorentz_J(D);
    const auto& facets = P.lattice.facets();
    Polytope Q;
    Q.dim = P.dim;
    Q.lattice = P.lattice.dual();

    bool euclid = P.form == Form::Euclidean;
    if (euclid)
        for (const Vec& h : P.facet_normals) euclid = euclid && h(0) < -tol;

    for (std::size_t k = 0; k < facets.size(); ++k) {
        Vec y = J * P.facet_normals[k];
        Q.vertices.push_back(euclid ? Vec(y.tail(P.dim) / y(0)) : y);
        Q.source.push_back(static_cast<int>(k));
    }
    // Facets of the polar are indexed by the vertices of P.
    std::vector<Mask> vertex_images;
    for (int i = 0; i < P.n_vertices(); ++i) vertex_images.push_back(P.lattice.dual_face(bit(i)));
    for (Mask f : Q.lattice.facets()) {
        int i = static_cast<int>(std::find(vertex_images.begin(), vertex_images.end(), f) - vertex_images.begin());
        Vec h = J * P.generator(i);
        if (euclid) h /= h.tail(P.dim).norm();
        else h.normalize();
        Q.facet_normals.push_back(h);
    }
    Q.form = euclid ? Form::Euclidean : Form::Cone;
    return Q;
}

Polytope transform(const Polytope& P, const ProjMap& M, double tol) {
    Polytope Q = to_cone(P);
    Mat Minv_t = M.matrix.inverse().transpose();
    for (auto& g : Q.vertices) g = M.matrix * g;
    for (auto& h : Q.facet_normals) h = (Minv_t * h).normalized();
    return P.form == Form::Euclidean ? to_euclidean_if_possible(Q, tol) : Q;
}

Polytope affine_image(const Polytope& P, const Mat& A, const Vec& t) {
    if (P.form != Form::Euclidean) throw std::invalid_argument("affine_image: Euclidean polytope expected");
    Polytope Q = P;
    Q.exact.clear();
    for (auto& v : Q.vertices) v = A * v + t;
    Mat Ait = A.inverse().transpose();
    for (auto& h : Q.facet_normals) {
        Vec hbar = Ait * h.tail(P.dim);
        double b = -h(0) + hbar.dot(t);
        h(0) = -b;
        h.tail(P.dim) = hbar;
        h /= hbar.norm();
    }
    return Q;
}

FaceLattice face_figure(const Polytope& P, Mask face) {
    if (!P.lattice.contains(face)) throw std::invalid_argument("face_figure: not a face");
    return P.lattice.interval(face);
}

FaceGeometry face_geometry(const Polytope& P, Mask face) {
    auto idx = indices(face);
    if (idx.empty()) throw std::invalid_argument("face_geometry: empty face");
    FaceGeometry g;
    if (P.form == Form::Euclidean) {
        Vec c = Vec::Zero(P.dim);
        for (int i : idx) c += P.vertices[i];
        c /= static_cast<double>(idx.size());
        Mat diffs(P.dim, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) diffs.col(k) = P.vertices[idx[k]] - c;
        g.relint_point = c;
        g.base = c;
        g.span = column_basis(diffs, 1e-9);
    } else {
        Vec c = Vec::Zero(P.dim + 1);
        Mat cols(P.dim + 1, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            cols.col(k) = P.vertices[idx[k]].normalized();
            c += cols.col(k);
        }
        g.relint_point = c / static_cast<double>(idx.size());
        g.base = Vec::Zero(P.dim + 1);
        g.span = column_basis(cols, 1e-9);
    }
    return g;
}

FaceLattice stack_lattice(const FaceLattice& L, Mask facet) {
    const auto& fs = L.facets();
    if (std::find(fs.begin(), fs.end(), facet) == fs.end()) throw std::invalid_argument("stack: not a facet");
    if (popcount(facet) != L.dim()) throw std::invalid_argument("stack: facet is not a simplex");
    const int apex = L.n_vertices();
    std::vector<Mask> out;
    for (Mask f : fs)
        if (f != facet) out.push_back(f);
    for (int v : indices(facet)) out.push_back((facet & ~bit(v)) | bit(apex));
    return FaceLattice::from_facets(apex + 1, out);
}

FaceLattice truncate_lattice(const FaceLattice& L, int v) {
    auto nbrs = L.vertex_adjacency()[v];
    if (static_cast<int>(nbrs.size()) != L.dim()) throw std::invalid_argument("truncate: vertex is not simple");
    const int n = L.n_vertices();
    auto old_index = [&](int i) { return i < v ? i : i - 1; };
    std::vector<int> new_of(n, -1);
    for (std::size_t k = 0; k < nbrs.size(); ++k) new_of[nbrs[k]] = n - 1 + static_cast<int>(k);
    std::vector<Mask> out;
    Mask cap = 0;
    for (int u : nbrs) cap |= bit(new_of[u]);
    for (Mask f : L.facets()) {
        Mask m = 0;
        for (int i : indices(f))
            if (i != v) m |= bit(old_index(i));
        if (f & bit(v))
            for (int u : nbrs)
                if (f & bit(u)) m |= bit(new_of[u]);
        out.push_back(m);
    }
    out.push_back(cap);
    return FaceLattice::from_facets(n - 1 + static_cast<int>(nbrs.size()), out);
}

FaceLattice pyramid_lattice(const FaceLattice& L) {
    const int apex = L.n_vertices();
    std::vector<Mask> out{full_mask(apex)};
    for (Mask f : L.facets()) out.push_back(f | bit(apex));
    return FaceLattice::from_facets(apex + 1, out);
}

Polytope stack(const Polytope& P, Mask facet, std::optional<Vec> apex, double tol) {
    if (P.form != Form::Euclidean) throw std::invalid_argument("stack: Euclidean polytope expected");
    FaceLattice target = stack_lattice(P.lattice, facet);
    const auto& fs = P.lattice.facets();
    const int k = static_cast<int>(std::find(fs.begin(), fs.end(), facet) - fs.begin());
    if (!apex) {
        Vec c = face_geometry(P, facet).relint_point;
        Vec nrm = P.facet_normals[k].tail(P.dim);
        double diam = 0;
        for (const Vec& a : P.vertices)
            for (const Vec& b : P.vertices) diam = std::max(diam, (a - b).norm());
        double tmin = 2 * diam;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (static_cast<int>(j) == k) continue;
            Vec nj = P.facet_normals[j].tail(P.dim);
            double bj = -P.facet_normals[j](0);
            double rate = nj.dot(nrm);
            if (rate <= 1e-12) continue;
            double t = (bj - nj.dot(c)) / rate;
            if (t > 0) tmin = std::min(tmin, t);
        }
        apex = c + 0.5 * tmin * nrm;
    }
    std::vector<Vec> pts = P.vertices;
    pts.push_back(*apex);
    Polytope Q = hull(pts, Form::Euclidean, tol);
    if (Q.n_vertices() != P.n_vertices() + 1 || Q.lattice != target)
        throw GeometryError("stack: apex lies beyond more than one facet");
    return Q;
}

Polytope truncate(const Polytope& P, int v, double depth, double tol) {
    if (P.form != Form::Euclidean) throw std::invalid_argument("truncate: Euclidean polytope expected");
    if (!(depth > 0 && depth < 1)) throw std::invalid_argument("truncate: depth must lie in (0,1)");
    FaceLattice target = truncate_lattice(P.lattice, v);
    auto nbrs = P.lattice.vertex_adjacency()[v];
    std::vector<Vec> pts;
    for (int i = 0; i < P.n_vertices(); ++i)
        if (i != v) pts.push_back(P.vertices[i]);
    for (int u : nbrs) pts.push_back(P.vertices[v] + depth * (P.vertices[u] - P.vertices[v]));
    Polytope Q = hull(pts, Form::Euclidean, tol);
    if (Q.n_vertices() != static_cast<int>(pts.size()) || Q.lattice != target)
        throw GeometryError("truncate: cut is too deep for a vertex truncation");
    return Q;
}

Polytope pyramid(const Polytope& P, double tol) {
    if (P.form != Form::Euclidean) throw std::invalid_argument("pyramid: Euclidean polytope expected");
    std::vector<Vec> pts;
    Vec c = Vec::Zero(P.dim + 1);
    for (const Vec& v : P.vertices) {
        Vec w = Vec::Zero(P.dim + 1);
        w.head(P.dim) = v;
        pts.push_back(w);
        c.head(P.dim) += v;
    }
    c /= static_cast<double>(P.n_vertices());
    c(P.dim) = 1;
    pts.push_back(c);
    Polytope Q = hull(pts, Form::Euclidean, tol);
    if (Q.lattice != pyramid_lattice(P.lattice)) throw GeometryError("pyramid: unexpected lattice");
    return Q;
}

Polytope standard_simplex(int d) {
    std::vector<Vec> pts{Vec::Zero(d)};
    for (int i = 0; i < d; ++i) pts.push_back(Vec::Unit(d, i));
    return hull(pts);
}

std::vector<Vec> regular_simplex_points(int d, double circumradius) {
    const double a = (1 - std::sqrt(d + 1.0)) / d;
    std::vector<Vec> pts{Vec::Constant(d, a)};
    for (int i = 0; i < d; ++i) pts.push_back(Vec::Unit(d, i));
    Vec c = Vec::Constant(d, (1 + a) / (d + 1));
    double r = (pts[1] - c).norm();
    for (auto& p : pts) p = (p - c) * (circumradius / r);
    return pts;
}

Polytope regular_simplex(int d, double circumradius) { return hull(regular_simplex_points(d, circumradius)); }

Polytope cube(int d, double half_edge) {
    std::vector<Vec> pts;
    for (int i = 0; i < (1 << d); ++i) {
        Vec v(d);
        for (int j = 0; j < d; ++j) v(j) = (i >> j & 1) ? half_edge : -half_edge;
        pts.push_back(v);
    }
    return hull(pts);
}

} // namespace scribe
