#pragma once

#include "scribe/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace scribe {

// Closed cap of the unit sphere around a unit center, angular radius in
// (0, pi/2].
struct SphericalCap {
    Vec center;
    double radius = 0;
};

// Part of the sphere visible from x: center x/|x|, radius arccos(1/|x|).
SphericalCap cap_from_point(const Vec& x, double tol = kDefaultTol);

double angular_distance(const Vec& u, const Vec& v);

// Interiors are disjoint iff the centers are at least r1 + r2 - tol apart.
bool caps_disjoint(const SphericalCap& a, const SphericalCap& b, double tol = kDefaultTol);

// Pairs of caps whose interiors overlap.
std::vector<std::pair<int, int>> intersection_graph(const std::vector<SphericalCap>& caps, double tol = kDefaultTol);

struct KPlyResult {
    bool holds = true;
    Mask subset = 0;              // first k-subset whose open caps share a point
    std::optional<Vec> witness;   // a sphere point inside all of them
};

// Largest t with <u, c_i> >= cos r_i + t for all i in the set, |u| <= 1,
// solved exactly over active sets; the open caps meet iff t > tol.
struct CapDepth {
    double t = -1;
    Vec u;
};
CapDepth common_cap_depth(const std::vector<SphericalCap>& caps, Mask set);

// No sphere point lies in the interiors of k caps. Subsets are scanned in
// lexicographic order.
KPlyResult is_k_ply(const std::vector<SphericalCap>& caps, int k, double tol = kDefaultTol);

struct KPlyEquivalence {
    bool caps_k_ply = false;
    bool ksets_meet_ball = false;
    Mask offending_kset = 0; // a k-set whose hull misses the ball, if any
    bool agree() const { return caps_k_ply == ksets_meet_ball; }
};

// Both sides of the k-ply / k-set correspondence, computed independently.
KPlyEquivalence kply_equivalence_check(const std::vector<Vec>& points, int k, double tol = kDefaultTol);

// Unit ball volume and unit sphere area indexed so that V_d is the
// volume of the d-ball, A_d the area of the d-sphere in R^{d+1}.
double ball_volume(int d);
double sphere_area(int d);

// Leading-order separator constants (the o(1) terms are dropped).
double separator_constant(int d);
double separator_constant_planar(double k);

struct Thresholds {
    int d = 0;
    double c_d = 0;
    double even_bound = 0;  // (c_{d-1}(d+1))^{d-1} (3d/2 - 1)
    double odd_bound = 0;   // (c_{d-1}(d+1))^{d-1} (floor(3d/2) - 1)
};

Thresholds thresholds(int d);
// (c_{d-1}(d+1))^{d-1} (k+1) for k-neighborly d-polytopes.
double neighborly_bound(int d, int k);
// c_{d-1} ply^{1/(d-1)} n^{(d-2)/(d-1)}
double separator_size(int d, double n, double ply);

} // namespace scribe
