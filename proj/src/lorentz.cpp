#include "scribe/lorentz.hpp"

#include "scribe/optim.hpp"
#include "scribe/polytope.hpp"

#include <cmath>

namespace scribe {

Mat lorentz_J(int size) {
    Mat J = Mat::Identity(size, size);
    J(0, 0) = -1;
    return J;
}

double lorentz_product(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("lorentz_product: dimension mismatch");
    if (x.size() == 0) return 0;
    return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

Rational lorentz_product(const RVec& x, const RVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("lorentz_product: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i == 0 ? -1 : 1) * x[i] * y[i];
    return s;
}

ConePosition cone_position(const Vec& x, double tol) {
    double n2 = x.squaredNorm();
    if (n2 == 0) throw std::invalid_argument("cone_position: zero vector");
    double q = lorentz_product(x, x);
    ConeRegion r = std::abs(q) <= tol * n2 ? ConeRegion::Boundary
                   : q < 0                 ? ConeRegion::Interior
                                           : ConeRegion::Exterior;
    return {r, (x(0) > 0) - (x(0) < 0)};
}

ConePosition cone_position(const RVec& x) {
    bool zero = true;
    for (const auto& v : x) zero = zero && sgn(v) == 0;
    if (zero) throw std::invalid_argument("cone_position: zero vector");
    int s = sgn(lorentz_product(x, x));
    ConeRegion r = s == 0 ? ConeRegion::Boundary : s < 0 ? ConeRegion::Interior : ConeRegion::Exterior;
    return {r, sgn(x[0])};
}

const char* to_string(ConeRegion r) {
    switch (r) {
    case ConeRegion::Interior: return "interior";
    case ConeRegion::Boundary: return "boundary";
    default: return "exterior";
    }
}

std::vector<Vec> polar_cone(const std::vector<Vec>& generators, double tol) {
    if (generators.empty()) throw std::invalid_argument("polar_cone: no generators");
    const int D = static_cast<int>(generators[0].size());
    Mat G(D, generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != D) throw std::invalid_argument("polar_cone: dimension mismatch");
        G.col(i) = generators[i].normalized();
    }

    // Pointed iff some functional is positive on every generator.
    {
        Mat A = -G.transpose();
        Vec b = -Vec::Ones(G.cols());
        Mat box(2 * D, D);
        box << Mat::Identity(D, D), -Mat::Identity(D, D);
        Mat AA(A.rows() + box.rows(), D);
        AA << A, box;
        Vec bb(AA.rows());
        bb << b, Vec::Constant(2 * D, 1e6);
        auto lp = solve_lp(AA, bb, Mat(0, D), Vec(0), Vec::Zero(D));
        if (lp.status != LpStatus::Optimal) throw GeometryError("polar_cone: input cone is not pointed");
    }

    const Mat J = lorentz_J(D);
    const Mat W = column_basis(G, 1e-9);
    const int r = static_cast<int>(W.cols());
    std::vector<Vec> dual; // Euclidean dual cone {z : z.g <= 0}
    if (r == D) {
        Polytope P = hull(generators, Form::Cone, tol);
        dual = P.facet_normals;
    } else {
        if (r == 1) {
            dual.push_back(-W.col(0));
        } else {
            std::vector<Vec> proj;
            for (int i = 0; i < G.cols(); ++i) proj.push_back(W.transpose() * G.col(i));
            Polytope P = hull(proj, Form::Cone, tol);
            for (const Vec& h : P.facet_normals) dual.push_back(W * h);
        }
        const Mat comp = null_space(W.transpose());
        for (int k = 0; k < comp.cols(); ++k) {
            dual.push_back(comp.col(k));
            dual.push_back(-comp.col(k));
        }
    }
    std::vector<Vec> out;
    for (const Vec& h : dual) out.push_back(J * h);
    return out;
}

Vec homogenize(const Vec& p) {
    Vec x(p.size() + 1);
    x(0) = 1;
    x.tail(p.size()) = p;
    return x;
}

std::vector<Vec> homogenize(const std::vector<Vec>& points) {
    std::vector<Vec> out;
    out.reserve(points.size());
    for (const Vec& p : points) out.push_back(homogenize(p));
    return out;
}

Vec dehomogenize(const Vec& ray, double tol) {
    if (ray.size() < 1 || ray(0) <= tol * std::max(1.0, ray.norm()))
        throw GeometryError("dehomogenize: ray with x_0 <= 0");
    return ray.tail(ray.size() - 1) / ray(0);
}

std::vector<Vec> dehomogenize(const std::vector<Vec>& rays, double tol) {
    std::vector<Vec> out;
    out.reserve(rays.size());
    for (const Vec& r : rays) out.push_back(dehomogenize(r, tol));
    return out;
}

Vec ProjMap::apply_point(const Vec& p) const { return dehomogenize(Vec(matrix * homogenize(p)), 0.0); }

bool ProjMap::sphere_preserving(double tol) const {
    const int D = static_cast<int>(matrix.rows());
    const Mat J = lorentz_J(D);
    Mat G = matrix.transpose() * J * matrix;
    double lambda = G(1, 1);
    if (lambda <= 0) return false;
    return (G - lambda * J).norm() <= tol * lambda * D;
}

ProjMap hyperbolic_translation(const Vec& c, double tol) {
    const int d = static_cast<int>(c.size());
    const double r = c.norm();
    if (r >= 1 - tol) throw GeometryError("hyperbolic_translation: center not inside the unit ball");
    Mat M = Mat::Identity(d + 1, d + 1);
    if (r == 0) return {M};
    const double phi = std::atanh(r);
    Vec e0 = Vec::Zero(d + 1);
    e0(0) = 1;
    Vec u = Vec::Zero(d + 1);
    u.tail(d) = c / r;
    M += (std::cosh(phi) - 1) * (e0 * e0.transpose() + u * u.transpose()) -
         std::sinh(phi) * (e0 * u.transpose() + u * e0.transpose());
    return {M};
}

ProjMap lorentz_reflection(const Vec& e, double tol) {
    const double q = lorentz_product(e, e);
    if (q <= tol * e.squaredNorm()) throw GeometryError("lorentz_reflection: normal is not space-like");
    const int D = static_cast<int>(e.size());
    Mat M = Mat::Identity(D, D) - 2.0 / q * e * (lorentz_J(D) * e).transpose();
    return {M};
}

double QuadricSpace::max_relative_residual(const Vec& point) const {
    Vec p = homogenize(point);
    double worst = 0;
    for (const Mat& Q : basis) worst = std::max(worst, std::abs(p.dot(Q * p)) / p.squaredNorm());
    return worst;
}

QuadricSpace quadric_space_through(const std::vector<Vec>& points, double rel_tol) {
    if (points.empty()) throw std::invalid_argument("quadric_space_through: no points");
    const int D = static_cast<int>(points[0].size()) + 1;
    const int unknowns = D * (D + 1) / 2;
    Mat rows(points.size(), unknowns);
    for (std::size_t k = 0; k < points.size(); ++k) {
        Vec p = homogenize(points[k]);
        p /= p.norm();
        int c = 0;
        for (int i = 0; i < D; ++i)
            for (int j = i; j < D; ++j) rows(k, c++) = (i == j ? 1.0 : 2.0) * p(i) * p(j);
    }
    Mat N = null_space(rows, rel_tol);
    QuadricSpace out;
    out.ambient = D - 1;
    for (int k = 0; k < N.cols(); ++k) {
        Mat Q(D, D);
        int c = 0;
        for (int i = 0; i < D; ++i)
            for (int j = i; j < D; ++j) Q(i, j) = Q(j, i) = N(c++, k);
        out.basis.push_back(Q / Q.norm());
    }
    return out;
}

} // namespace scribe
