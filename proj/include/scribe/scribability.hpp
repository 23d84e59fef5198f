#pragma once

#include "scribe/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scribe {

// Flags of one face against the unit sphere S = dB.
struct FaceClass {
    Mask face = 0;
    int rank = -1;
    bool strong_cut = false;
    bool weak_cut = false;
    bool strong_avoid = false;
    bool weak_avoid = false;
    bool tangent = false;
    bool weak_tangent = false;

    // Strong flags could not be certified at the working tolerance.
    bool indeterminate = false;
    std::string note;

    // Norm of the point of F closest to the center (infinite when F misses
    // the upper sheet), and distance from the center to aff(F) for
    // Euclidean realizations.
    double min_norm = 0;
    double span_distance = 0;
    std::optional<Vec> witness_point;
    // Supporting hyperplane {a . x = 1} (Euclidean) or {a . xbar = x_0}
    // (cone) certifying strong_avoid, |a| <= 1.
    std::optional<Vec> witness_plane;
};

// Strong cut test for conv(columns of V) in Euclidean coordinates: the
// min-norm point is inside the open ball, or on the sphere and in the
// relative interior.
struct CutTest {
    double min_norm = 0;
    Vec point;
    bool strong_cut = false;
    bool tangent = false;
    bool converged = true;
};
CutTest strong_cut_test(const Mat& V, double tol = kDefaultTol);

FaceClass classify_face(const Polytope& P, Mask face, double tol = kDefaultTol);

enum class Mode { Strong, Weak };
const char* to_string(Mode m);

struct RankTally {
    int faces = 0;
    int strong_cut = 0, weak_cut = 0, strong_avoid = 0, weak_avoid = 0;
    int tangent = 0, weak_tangent = 0, indeterminate = 0;
};

struct ScribedReport {
    int i = 0, j = 0;
    Mode mode = Mode::Strong;
    double tol = kDefaultTol;
    Verdict verdict = Verdict::Indeterminate;
    std::vector<FaceClass> faces; // ranks i and j, lattice order
    std::vector<Mask> avoid_violations;
    std::vector<Mask> cut_violations;
    std::vector<Mask> undecided;
    std::map<int, RankTally> tallies;
};

// Every i-face avoids and every j-face cuts, in the requested sense. A definite
// violation gives False even when other faces are undecided.
ScribedReport scribed_report(const Polytope& P, int i, int j, Mode mode, double tol = kDefaultTol);
Verdict scribed_verdict(const Polytope& P, int i, int j, Mode mode, double tol = kDefaultTol);

enum class EdgeKind { Separating, NonSeparating };

// Edges of a polygon whose edge lines are tangent to the unit circle, in the
// order of the lattice facets.
std::vector<EdgeKind> polygon_edge_classes(const Polytope& polygon, double tol = kDefaultTol);

enum class BoundedMode { ContainsCenter, Bounded };

// Sphere-preserving image of a strongly (i,j)-scribed realization that
// contains the center (or is bounded, via the polar).
Polytope bounded_realization(const Polytope& P, int i, int j, BoundedMode mode, double tol = kDefaultTol);

// Point of the face closest to the center within the upper sheet, if any.
std::optional<Vec> closest_ball_point(const Polytope& P, Mask face);

} // namespace scribe
