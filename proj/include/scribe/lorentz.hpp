#pragma once

#include "scribe/types.hpp"

#include <vector>

namespace scribe {

// Vectors of Lorentzian space L^{1,d} with coordinates (x_0, ..., x_d).
using LVec = Vec;

// J = diag(-1, 1, ..., 1) of size d+1.
Mat lorentz_J(int size);

double lorentz_product(const Vec& x, const Vec& y);
Rational lorentz_product(const RVec& x, const RVec& y);

enum class ConeRegion { Interior, Boundary, Exterior };

struct ConePosition {
    ConeRegion region;
    int time_sign; // sign of x_0
};

// Position relative to the light cone <x,x> <= 0. Boundary means
// |<x,x>| <= tol * |x|^2.
ConePosition cone_position(const Vec& x, double tol = kDefaultTol);
ConePosition cone_position(const RVec& x);

const char* to_string(ConeRegion r);

// Generators of {x : <x,g> <= 0 for all g}. Lower-dimensional pointed cones
// produce a non-pointed polar, returned with both signs of each lineality
// direction.
std::vector<Vec> polar_cone(const std::vector<Vec>& generators, double tol = kDefaultTol);

std::vector<Vec> homogenize(const std::vector<Vec>& points);
Vec homogenize(const Vec& p);
std::vector<Vec> dehomogenize(const std::vector<Vec>& rays, double tol = kDefaultTol);
Vec dehomogenize(const Vec& ray, double tol = kDefaultTol);

// Linear map of L^{1,d}, defined up to positive scaling.
struct ProjMap {
    Mat matrix;

    Vec apply(const Vec& x) const { return matrix * x; }
    // Acts on a Euclidean point through its homogenization.
    Vec apply_point(const Vec& p) const;
    ProjMap then(const ProjMap& next) const { return {next.matrix * matrix}; }
    ProjMap inverse() const { return {matrix.inverse()}; }

    // M^T J M = lambda J for some lambda > 0.
    bool sphere_preserving(double tol = 1e-9) const;
    bool orthochronous() const { return matrix(0, 0) > 0; }
};

// Lorentz boost that moves c to the origin and fixes the line through 0 and c.
ProjMap hyperbolic_translation(const Vec& c, double tol = kDefaultTol);

// Reflection x -> x - 2 <x,e>/<e,e> e in the hyperplane e^perp.
ProjMap lorentz_reflection(const Vec& e, double tol = kDefaultTol);

// Space of symmetric (d+1)x(d+1) matrices Q with p^T Q p = 0 at every
// homogenized input point. Each basis matrix has unit Frobenius norm.
struct QuadricSpace {
    int ambient = 0;
    std::vector<Mat> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
    // max_k |p^T Q_k p| / |p|^2 for the homogenized point p.
    double max_relative_residual(const Vec& point) const;
};

QuadricSpace quadric_space_through(const std::vector<Vec>& points, double rel_tol = 1e-9);

} // namespace scribe
