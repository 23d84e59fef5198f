#pragma once

#include "scribe/lattice.hpp"
#include "scribe/lorentz.hpp"
#include "scribe/types.hpp"

#include <optional>
#include <vector>

namespace scribe {

enum class Form { Euclidean, Cone };

const char* to_string(Form f);

// A realization together with its face lattice.
//
// Euclidean vertices live in R^d, cone generators in L^{1,d}. Facet k of the
// lattice carries a normal h_k with h_k . g <= 0 for every generator g, where
// g = (1, x) for Euclidean vertices. Euclidean normals are scaled so that the
// spatial part has unit length, cone normals to unit length overall.
struct Polytope {
    int dim = 0;
    Form form = Form::Euclidean;
    std::vector<Vec> vertices;
    std::vector<RVec> exact; // rational coordinates, empty for float realizations
    FaceLattice lattice;
    std::vector<Vec> facet_normals;
    std::vector<int> source; // input index of each vertex

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    Vec generator(int i) const;
    Mat generator_matrix() const; // generators as columns
    bool is_exact() const { return !exact.empty(); }
};

// Convex (conical) hull. Extreme points keep their input order.
Polytope hull(const std::vector<Vec>& points, Form form = Form::Euclidean, double tol = kDefaultTol);
Polytope hull_exact(const std::vector<RVec>& points, Form form = Form::Euclidean);

// Lorentz polar. Vertex k of the result is facet k of P, and the face
// associated to F is P.lattice.dual_face(F). A Euclidean P with the origin
// strictly inside yields a Euclidean polar, anything else a cone.
Polytope polar_dual(const Polytope& P, double tol = kDefaultTol);

// Cone form of P; Euclidean vertices become (1, x).
Polytope to_cone(const Polytope& P);
// Euclidean form when every generator has x_0 > 0, otherwise P unchanged.
Polytope to_euclidean_if_possible(const Polytope& P, double tol = kDefaultTol);

// Image under a linear map of L^{1,d}; the result is re-expressed in
// Euclidean form when possible.
Polytope transform(const Polytope& P, const ProjMap& M, double tol = kDefaultTol);
// Image of a Euclidean polytope under x -> A x + t.
Polytope affine_image(const Polytope& P, const Mat& A, const Vec& t);

FaceLattice face_figure(const Polytope& P, Mask face);

struct FaceGeometry {
    Vec relint_point; // barycenter of the vertices
    Vec base;
    Mat span; // orthonormal columns spanning the direction space
};

// Euclidean: affine hull of the vertices. Cone: linear span of the
// normalized generators, with base = 0.
FaceGeometry face_geometry(const Polytope& P, Mask face);

// Combinatorial operations; new vertices are appended after the old ones.
FaceLattice stack_lattice(const FaceLattice& L, Mask facet);
// Old vertices except v keep their order, the new ones follow in the order of
// v's neighbors.
FaceLattice truncate_lattice(const FaceLattice& L, int v);
FaceLattice pyramid_lattice(const FaceLattice& L);

Polytope stack(const Polytope& P, Mask facet, std::optional<Vec> apex = std::nullopt,
               double tol = kDefaultTol);
Polytope truncate(const Polytope& P, int v, double depth, double tol = kDefaultTol);
Polytope pyramid(const Polytope& P, double tol = kDefaultTol);

// Standard simplex (0, e_1, ..., e_d) and the cube [-1,1]^d.
Polytope standard_simplex(int d);
Polytope regular_simplex(int d, double circumradius = 1.0);
Polytope cube(int d, double half_edge = 1.0);
std::vector<Vec> regular_simplex_points(int d, double circumradius = 1.0);

} // namespace scribe
