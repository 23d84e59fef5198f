#pragma once

#include "scribe/polytope.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace scribe {

// Klein-model dihedral angle between two facets, read off their unit
// space-like outward Lorentz normals as arccos(-<e1, e2>).
struct DihedralAngle {
    bool defined = false;
    double angle = 0;    // radians, when defined
    double product = 0;  // <e1, e2>
    double distance = 0; // arccosh|<e1, e2>| for ultraparallel planes
    std::string note;
};

// Unit outward Lorentz normal of a facet plane; nullopt when the plane
// misses the open ball.
std::optional<Vec> lorentz_facet_normal(const Polytope& P, int facet, double tol = kDefaultTol);

DihedralAngle dihedral_between(const Vec& e1, const Vec& e2, double tol = kDefaultTol);
DihedralAngle dihedral_angle(const Polytope& P, Mask ridge, double tol = kDefaultTol);

struct AngleSum {
    double sum = 0;
    bool verdict = false;
};

// Sum over the ridges of a simplex facet; requires every vertex to avoid and
// every (d-3)-face to cut strongly, else throws GeometryError.
AngleSum facet_ridge_angle_sum(const Polytope& S, Mask facet, double tol = kDefaultTol);

enum class AngleModel { Euclidean, Hyperbolic };

// Sum of all dihedral angles of a simplex; verdict is sum <= C(m,2) pi + tol.
AngleSum simplex_angle_sum(const Polytope& S, AngleModel model, double tol = kDefaultTol);

// Dihedral angles of a simplex given by its vertices (Euclidean coordinates),
// indexed by the ridge omitting vertices a < b.
struct SimplexAngles {
    std::vector<std::pair<int, int>> omitted;
    std::vector<DihedralAngle> angles;
};
SimplexAngles simplex_dihedral_angles(const std::vector<Vec>& vertices, AngleModel model,
                                      double tol = kDefaultTol);

struct AngleAudit {
    bool preconditions_hold = false;
    std::vector<Mask> violations; // vertices that do not avoid, edges that do not cut
    std::vector<Mask> ridges;     // ridges of the interior facets of the triangulation
    std::vector<double> totals;   // summed simplex angles per ridge
    std::vector<Mask> flagged;    // totals >= pi - tol
    std::vector<Mask> undefined;  // some simplex angle undefined
    double total = 0;
    int interior_simplices = 0;
    // Nothing to certify, or a reflex ridge / violation was found.
    bool consistent() const { return !preconditions_hold || !flagged.empty(); }
};

// Angle audit of a realization of the twice-stacked 4-simplex.
AngleAudit stack01_audit(const Polytope& P, double tol = kDefaultTol);

// Simplex with vertices strongly avoiding and (d-3)-faces strongly cutting
// the unit sphere, by rejection; nullopt after max_tries.
std::optional<Polytope> sample_scribed_simplex(int d, std::mt19937_64& rng, int max_tries = 10000,
                                               double tol = kDefaultTol);

} // namespace scribe
