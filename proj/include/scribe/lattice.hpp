#pragma once

#include "scribe/types.hpp"

#include <optional>
#include <vector>

namespace scribe {

// Graded face lattice of a polytope, stored as vertex bitmasks per rank.
// Rank -1 holds the empty face and rank `dim` the polytope itself.
class FaceLattice {
public:
    FaceLattice() = default;

    // Closes the facet list under intersection and grades the result.
    static FaceLattice from_facets(int n_vertices, std::vector<Mask> facets);

    int dim() const { return dim_; }
    int n_vertices() const { return n_; }

    const std::vector<Mask>& faces(int rank) const;
    const std::vector<Mask>& facets() const { return faces(dim_ - 1); }
    std::vector<long> f_vector() const;
    std::size_t size() const;

    bool contains(Mask face) const;
    std::optional<int> rank_of(Mask face) const;

    // Intersection of the facets containing `set`.
    Mask closure(Mask set) const;
    std::vector<int> facets_containing(Mask face) const;
    std::vector<std::vector<int>> vertex_adjacency() const;

    // Order-reversed lattice; vertex k of the result is facet k of this one.
    FaceLattice dual() const;
    Mask dual_face(Mask face) const;

    // Interval [F, P], re-indexed so that the new atoms are the faces covering F.
    FaceLattice interval(Mask face) const;

    bool euler_holds() const;
    bool intersection_property_holds() const;

    bool operator==(const FaceLattice& other) const;
    bool operator!=(const FaceLattice& other) const { return !(*this == other); }

    // Vertex permutation p with facets(other) = p(facets(this)), if one exists.
    std::optional<std::vector<int>> isomorphism_to(const FaceLattice& other) const;

    // Lattice after relabeling vertex i as perm[i].
    FaceLattice relabeled(const std::vector<int>& perm) const;

private:
    int dim_ = -1;
    int n_ = 0;
    std::vector<std::vector<Mask>> by_rank_; // index rank+1
};

// Isomorphism of two set systems on the same number of points; used for
// facet lists and graphs alike.
std::optional<std::vector<int>> set_system_isomorphism(int n, const std::vector<Mask>& a,
                                                       const std::vector<Mask>& b);

} // namespace scribe
