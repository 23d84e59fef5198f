#include "scribe/lattice.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

namespace scribe {

std::vector<int> indices(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(__builtin_ctzll(m));
        m &= m - 1;
    }
    return out;
}

Mask to_mask(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) {
        if (i < 0 || i >= kMaxVertices) throw std::out_of_range("vertex index out of range");
        m |= bit(i);
    }
    return m;
}

double to_double(const Rational& q) { return q.get_d(); }

FaceLattice FaceLattice::from_facets(int n_vertices, std::vector<Mask> facets) {
    if (n_vertices > kMaxVertices) throw std::invalid_argument("too many vertices for a face lattice");
    FaceLattice L;
    L.n_ = n_vertices;
    const Mask full = full_mask(n_vertices);

    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

    std::unordered_set<Mask> seen{full, Mask{0}};
    std::vector<Mask> all{full, Mask{0}};
    std::vector<Mask> queue;
    for (Mask f : facets) {
        if (seen.insert(f).second) {
            all.push_back(f);
            queue.push_back(f);
        }
    }
    while (!queue.empty()) {
        Mask f = queue.back();
        queue.pop_back();
        for (Mask g : facets) {
            Mask h = f & g;
            if (seen.insert(h).second) {
                all.push_back(h);
                queue.push_back(h);
            }
        }
    }

    std::sort(all.begin(), all.end(), [](Mask a, Mask b) {
        int pa = popcount(a), pb = popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<int> rank(all.size(), -1);
    int top = -1;
    for (std::size_t i = 1; i < all.size(); ++i) {
        int r = -1;
        for (std::size_t j = 0; j < i; ++j)
            if (all[j] != all[i] && subset_of(all[j], all[i])) r = std::max(r, rank[j]);
        rank[i] = r + 1;
        top = std::max(top, rank[i]);
    }
    L.dim_ = top;
    L.by_rank_.assign(top + 2, {});
    for (std::size_t i = 0; i < all.size(); ++i) L.by_rank_[rank[i] + 1].push_back(all[i]);
    for (auto& layer : L.by_rank_) std::sort(layer.begin(), layer.end());
    return L;
}

const std::vector<Mask>& FaceLattice::faces(int rank) const {
    static const std::vector<Mask> empty;
    if (rank < -1 || rank > dim_) return empty;
    return by_rank_[rank + 1];
}

std::vector<long> FaceLattice::f_vector() const {
    std::vector<long> f;
    for (int r = 0; r < dim_; ++r) f.push_back(static_cast<long>(faces(r).size()));
    return f;
}

std::size_t FaceLattice::size() const {
    std::size_t s = 0;
    for (const auto& layer : by_rank_) s += layer.size();
    return s;
}

std::optional<int> FaceLattice::rank_of(Mask face) const {
    for (int r = -1; r <= dim_; ++r) {
        const auto& layer = faces(r);
        if (std::binary_search(layer.begin(), layer.end(), face)) return r;
    }
    return std::nullopt;
}

bool FaceLattice::contains(Mask face) const { return rank_of(face).has_value(); }

Mask FaceLattice::closure(Mask set) const {
    Mask out = full_mask(n_);
    for (Mask f : facets())
        if (subset_of(set, f)) out &= f;
    return out;
}

std::vector<int> FaceLattice::facets_containing(Mask face) const {
    std::vector<int> out;
    const auto& fs = facets();
    for (std::size_t k = 0; k < fs.size(); ++k)
        if (subset_of(face, fs[k])) out.push_back(static_cast<int>(k));
    return out;
}

std::vector<std::vector<int>> FaceLattice::vertex_adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    if (dim_ < 1) return adj;
    for (Mask e : faces(1)) {
        auto ij = indices(e);
        if (ij.size() != 2) continue;
        adj[ij[0]].push_back(ij[1]);
        adj[ij[1]].push_back(ij[0]);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

Mask FaceLattice::dual_face(Mask face) const {
    Mask out = 0;
    const auto& fs = facets();
    for (std::size_t k = 0; k < fs.size(); ++k)
        if (subset_of(face, fs[k])) out |= bit(static_cast<int>(k));
    return out;
}

FaceLattice FaceLattice::dual() const {
    std::vector<Mask> dual_facets;
    for (Mask v : faces(0)) dual_facets.push_back(dual_face(v));
    return from_facets(static_cast<int>(facets().size()), dual_facets);
}

FaceLattice FaceLattice::interval(Mask face) const {
    auto r = rank_of(face);
    if (!r) throw std::invalid_argument("face not in lattice");
    if (*r == dim_) throw std::invalid_argument("interval above the improper face");
    std::vector<Mask> atoms;
    for (Mask g : faces(*r + 1))
        if (subset_of(face, g)) atoms.push_back(g);
    auto image = [&](Mask g) {
        Mask m = 0;
        for (std::size_t a = 0; a < atoms.size(); ++a)
            if (subset_of(atoms[a], g)) m |= bit(static_cast<int>(a));
        return m;
    };
    std::vector<Mask> new_facets;
    if (*r == dim_ - 1) {
        new_facets.push_back(0);
    } else {
        for (Mask f : facets())
            if (subset_of(face, f)) new_facets.push_back(image(f));
    }
    return from_facets(static_cast<int>(atoms.size()), new_facets);
}

bool FaceLattice::euler_holds() const {
    long s = 0;
    for (int r = -1; r <= dim_; ++r) s += ((r + 2) % 2 == 0 ? 1 : -1) * static_cast<long>(faces(r).size());
    return s == 0;
}

bool FaceLattice::intersection_property_holds() const {
    for (int r = -1; r < dim_ - 1; ++r)
        for (Mask f : faces(r))
            if (closure(f) != f) return false;
    return true;
}

bool FaceLattice::operator==(const FaceLattice& other) const {
    return n_ == other.n_ && dim_ == other.dim_ && by_rank_ == other.by_rank_;
}

FaceLattice FaceLattice::relabeled(const std::vector<int>& perm) const {
    std::vector<Mask> fs;
    for (Mask f : facets()) {
        Mask m = 0;
        for (int i : indices(f)) m |= bit(perm[i]);
        fs.push_back(m);
    }
    if (dim_ == 0) return *this;
    return from_facets(n_, fs);
}

std::optional<std::vector<int>> FaceLattice::isomorphism_to(const FaceLattice& other) const {
    if (n_ != other.n_ || dim_ != other.dim_ || f_vector() != other.f_vector()) return std::nullopt;
    return set_system_isomorphism(n_, facets(), other.facets());
}

namespace {

struct IsoSearch {
    int n;
    std::vector<Mask> a, b;
    std::vector<std::vector<int>> co_a, co_b;
    std::vector<std::vector<int>> sig_a, sig_b;
    std::vector<int> order, map, used;

    static std::vector<std::vector<int>> cooccurrence(int n, const std::vector<Mask>& sets) {
        std::vector<std::vector<int>> co(n, std::vector<int>(n, 0));
        for (Mask s : sets) {
            auto idx = indices(s);
            for (int i : idx)
                for (int j : idx) ++co[i][j];
        }
        return co;
    }

    static std::vector<std::vector<int>> signatures(int n, const std::vector<Mask>& sets) {
        std::vector<std::vector<int>> sig(n);
        for (Mask s : sets)
            for (int i : indices(s)) sig[i].push_back(popcount(s));
        for (auto& v : sig) std::sort(v.begin(), v.end());
        return sig;
    }

    bool verify() const {
        std::vector<Mask> img;
        for (Mask s : a) {
            Mask m = 0;
            for (int i : indices(s)) m |= bit(map[i]);
            img.push_back(m);
        }
        std::sort(img.begin(), img.end());
        return img == b;
    }

    bool search(std::size_t pos) {
        if (pos == order.size()) return verify();
        int i = order[pos];
        for (int j = 0; j < n; ++j) {
            if (used[j] || sig_a[i] != sig_b[j] || co_a[i][i] != co_b[j][j]) continue;
            bool ok = true;
            for (std::size_t q = 0; q < pos && ok; ++q) {
                int k = order[q];
                ok = co_a[i][k] == co_b[j][map[k]];
            }
            if (!ok) continue;
            map[i] = j;
            used[j] = 1;
            if (search(pos + 1)) return true;
            used[j] = 0;
            map[i] = -1;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> set_system_isomorphism(int n, const std::vector<Mask>& a,
                                                       const std::vector<Mask>& b) {
    if (a.size() != b.size()) return std::nullopt;
    IsoSearch s;
    s.n = n;
    s.a = a;
    s.b = b;
    std::sort(s.b.begin(), s.b.end());
    s.co_a = IsoSearch::cooccurrence(n, a);
    s.co_b = IsoSearch::cooccurrence(n, s.b);
    s.sig_a = IsoSearch::signatures(n, a);
    s.sig_b = IsoSearch::signatures(n, s.b);

    std::map<std::vector<int>, int> count_a, count_b;
    for (auto& v : s.sig_a) ++count_a[v];
    for (auto& v : s.sig_b) ++count_b[v];
    if (count_a != count_b) return std::nullopt;

    // Rare signatures first, then grow along co-occurrence so that later
    // choices are pinned by earlier ones.
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    while (static_cast<int>(order.size()) < n) {
        int best = -1;
        long best_key = std::numeric_limits<long>::min();
        for (int i = 0; i < n; ++i) {
            if (placed[i]) continue;
            long links = 0;
            for (int k : order) links += s.co_a[i][k] > 0;
            long key = links * 1000 - count_a[s.sig_a[i]];
            if (key > best_key) {
                best_key = key;
                best = i;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    s.order = order;
    s.map.assign(n, -1);
    s.used.assign(n, 0);
    if (!s.search(0)) return std::nullopt;
    return s.map;
}

} // namespace scribe
