#pragma once

#include "scribe/polytope.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace scribe {

// Gale's evenness condition: every pair j < k outside I is separated by an
// even number of members of I. Labels run over base, ..., base + n - 1.
bool gale_is_facet(int d, int n, const std::vector<int>& I, int base = 1);

struct GaleLattice {
    int d = 0, n = 0;
    std::vector<Mask> facets; // 0-based vertex labels
    FaceLattice lattice;
};

GaleLattice cyclic_lattice(int d, int n);

enum class Curve { Moment, Trigonometric, Clustered };

struct CurveOptions {
    Curve kind = Curve::Moment;
    // Explicit parameters; empty means the default for the curve.
    std::vector<double> params;
    // Clustered: n-1 parameters in [-eps, eps] around 0, one more at pi.
    double eps = 1e-3;
};

Vec moment_point(int d, double t);
// (cos t, sin t, ..., cos(d/2 t), sin(d/2 t)) scaled onto the unit sphere.
Vec trigonometric_point(int d, double t);
std::vector<double> curve_parameters(int n, const CurveOptions& opt);
std::vector<RVec> moment_points_exact(int d, const std::vector<long>& params);

// Realization on the chosen curve; throws GeometryError if the hull is not
// cyclic_lattice(d, n).
Polytope cyclic_realization(int d, int n, const CurveOptions& opt = {}, double tol = kDefaultTol);

struct KSet {
    Mask set = 0;
    Vec normal;    // <normal, v> > offset exactly on the set
    double offset = 0;
    double margin = 0;
};

// Strict separation of `set` from the other vertices, maximising the margin
// with |normal|_inf <= 1.
std::optional<KSet> separate(const std::vector<Vec>& points, Mask set, double tol = kDefaultTol);
bool separable_exact(const std::vector<RVec>& points, Mask set);

// Every k-subset is tested; subsets are split into batches evaluated on
// `threads` workers. Output in increasing mask order.
std::vector<KSet> k_sets(const Polytope& P, int k, double tol = kDefaultTol, int threads = 0);

std::vector<Mask> missing_faces(const FaceLattice& L, int max_size);
int neighborliness(const FaceLattice& L);
bool is_face(const FaceLattice& L, Mask set);

struct StackingTree {
    int d = 0;
    std::vector<std::vector<int>> adj;

    int size() const { return static_cast<int>(adj.size()); }
    int max_degree() const;
    bool is_tree() const;
    static StackingTree path(int d, int nodes);
    static StackingTree star(int d, int leaves);
    // Uniform attachment to nodes with a free facet.
    static StackingTree random(int d, int nodes, std::uint64_t seed);
};

// Stacked polytope of a tree: node 0 is the simplex on vertices 0..d, every
// other node m adds vertex d+m. Children of a node use its facets in order of
// the omitted vertex, skipping the facet shared with its parent.
struct StackedLayout {
    FaceLattice lattice;
    std::vector<std::vector<int>> simplices; // vertex labels per node
    std::vector<int> parent;                 // -1 for the root
    std::vector<int> glued_facet_omits;      // vertex of the parent left out by the glued facet
};
StackedLayout stacked_layout(const StackingTree& tree);

struct StackedAnalysis {
    StackingTree tree;
    std::vector<Mask> simplices;
    int max_degree = 0;
    bool inscribable = false; // every node of degree <= 3
};

// Peels degree-d vertices to recover the stacked triangulation; throws if the
// lattice is not stacked.
StackedAnalysis stacked_analysis(const FaceLattice& L);

struct OddKSetExample {
    Polytope realization;
    KSet kset;
    double eps = 0;
};

// Realization of C(d, n), d odd, with a k-set containing no facet.
OddKSetExample odd_kset_counterexample(int d, int n, int k, double tol = kDefaultTol);

} // namespace scribe
