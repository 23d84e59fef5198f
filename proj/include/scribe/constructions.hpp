#pragma once

#include "scribe/combinatorics.hpp"
#include "scribe/polytope.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scribe {

// Eight light-like generators of L^{1,3} spanning a triakis tetrahedron.
Polytope triakis_weak_inscribed();

// Vertex labels of an evolving truncated simplex. The simplex vertices are
// {0, i}; truncating vertices in round r creates {r, 0}, {r, 1}, ... in
// execution order, each batch following the neighbor order of the truncated
// vertex.
struct VertexLabel {
    int round = 0;
    int index = 0;
    auto operator<=>(const VertexLabel&) const = default;
};
std::string to_string(const VertexLabel& l);

struct TruncationProgram {
    int d = 3;
    std::vector<std::vector<VertexLabel>> rounds;
};

// Lattice bookkeeping while a program runs.
struct TruncationState {
    FaceLattice lattice;
    std::vector<VertexLabel> labels;     // per current vertex
    std::vector<int> batch;              // creation batch, -1 for simplex vertices
    int batches = 0;

    static TruncationState simplex(int d);
    int index_of(const VertexLabel& l) const; // -1 if absent
    // Truncates one vertex; returns the indices of the new vertices.
    std::vector<int> truncate(const VertexLabel& l, int round, int& counter);
};

// Throws std::invalid_argument if a round names a missing or repeated label.
TruncationState run_truncation(const TruncationProgram& prog);

// Random program: each round truncates a random nonempty subset of the
// current vertices, stopping before the vertex count exceeds max_vertices.
TruncationProgram random_truncation_program(int d, int rounds, int max_vertices, std::uint64_t seed);

// Program whose result is polar to the stacked polytope of the tree.
TruncationProgram program_from_tree(const StackingTree& tree);

// Ellipsoid {x : x^T A x = 1}; the identity is the unit sphere.
struct Body {
    Mat A;
    static Body sphere(int d) { return {Mat::Identity(d, d)}; }
    double value(const Vec& x) const { return x.dot(A * x); }
};

struct InscribedTruncation {
    Polytope polytope;
    std::vector<VertexLabel> labels;
    std::vector<double> pull_fraction; // final pull per round, relative to edge length
};

// Vertices on the body boundary, lattice equal to run_truncation(prog).
InscribedTruncation inscribe_truncated(const TruncationProgram& prog, const Body& body, double tol = kDefaultTol);

// Hull of the reflected simplices along the tree; every ridge is tangent to
// the unit sphere. Vertex labels follow stacked_layout(tree).
Polytope ridge_scribed_stacked(const StackingTree& tree, double tol = kDefaultTol);

// Regular d-simplex with every ridge tangent to the unit sphere.
Polytope ridge_tangent_simplex(int d);

// Glues Q onto P along simplex facets by a sphere-preserving map sending
// facet_q onto facet_p, with Q on the far side. Vertices: P's, then Q's off
// the facet.
Polytope moebius_connected_sum(const Polytope& P, Mask facet_p, const Polytope& Q, Mask facet_q,
                               double tol = kDefaultTol);

struct Ball {
    Vec center;
    double curvature = 1; // negative for the closed complement of a ball
    double radius() const { return 1.0 / std::abs(curvature); }
};

struct BallPacking {
    int dim = 2;
    std::vector<Ball> balls;
    std::vector<std::pair<int, int>> tangencies;
    std::vector<VertexLabel> labels;

    // max over tangent pairs of | |c_i - c_j| - (r_i + r_j) | / (r_i + r_j)
    double max_tangency_residual() const;
    // min over non-tangent pairs of (|c_i - c_j| - (r_i + r_j)) / (r_i + r_j)
    double min_separation() const;
};

// d+1 pairwise tangent balls in R^{d-1}: d unit balls on a regular simplex
// with edge 2 and the ball inscribed between them.
BallPacking initial_packing(int d);
BallPacking ball_packing_truncated(const TruncationProgram& prog, double tol = kDefaultTol);

// Tangent pairs at relative tolerance tol.
std::vector<std::pair<int, int>> tangency_graph(const std::vector<Ball>& balls, double tol = kDefaultTol);

struct OddCyclic {
    Polytope polytope;
    double h = 0;
    int v_plus = -1, v_minus = -1;
    std::vector<int> relabel; // vertex -> label in cyclic_lattice(d, n)
};

// Strongly (1, d-1)-scribed realization of C(d, n) for odd d.
OddCyclic odd_cyclic_scribed(int d, int n, double tol = kDefaultTol);

// Affine image of P with weak (i, i+1) verdict true.
Polytope weak_ij_realization(const Polytope& P, int i, std::uint64_t seed = 1, double tol = kDefaultTol);

// triakis, truncated-cube, twice-stacked-truncated-tetrahedron,
// twice-stacked-simplex-4d, pyramid-over-truncated-cube.
Polytope named_fixture(const std::string& name);
std::vector<std::string> fixture_names();

} // namespace scribe
