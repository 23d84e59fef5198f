#include "scribe/combinatorics.hpp"

#include "scribe/constructions.hpp"
#include "scribe/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <thread>

namespace scribe {

bool gale_is_facet(int d, int n, const std::vector<int>& I, int base) {
    if (static_cast<int>(I.size()) != d) throw std::invalid_argument("gale_is_facet: |I| must equal d");
    std::vector<int> s = I;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("gale_is_facet: repeated label");
    if (s.front() < base || s.back() >= base + n) throw std::invalid_argument("gale_is_facet: label out of range");
    std::vector<int> outside;
    for (int j = base; j < base + n; ++j)
        if (!std::binary_search(s.begin(), s.end(), j)) outside.push_back(j);
    for (std::size_t a = 0; a + 1 < outside.size(); ++a) {
        // Consecutive non-members suffice: parities add up across gaps.
        int count = 0;
        for (int i : s) count += outside[a] < i && i < outside[a + 1];
        if (count % 2) return false;
    }
    return true;
}

GaleLattice cyclic_lattice(int d, int n) {
    if (n < d + 1) throw std::invalid_argument("cyclic_lattice: need n >= d+1");
    GaleLattice G;
    G.d = d;
    G.n = n;
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == d) {
            if (gale_is_facet(d, n, idx, 0)) G.facets.push_back(to_mask(idx));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    G.lattice = FaceLattice::from_facets(n, G.facets);
    std::sort(G.facets.begin(), G.facets.end());
    return G;
}

Vec moment_point(int d, double t) {
    Vec v(d);
    double p = 1;
    for (int k = 0; k < d; ++k) v(k) = (p *= t);
    return v;
}

Vec trigonometric_point(int d, double t) {
    if (d % 2) throw std::invalid_argument("trigonometric_point: dimension must be even");
    Vec v(d);
    for (int k = 0; k < d / 2; ++k) {
        v(2 * k) = std::cos((k + 1) * t);
        v(2 * k + 1) = std::sin((k + 1) * t);
    }
    return v / std::sqrt(d / 2.0);
}

std::vector<double> curve_parameters(int n, const CurveOptions& opt) {
    if (!opt.params.empty()) {
        if (static_cast<int>(opt.params.size()) != n) throw std::invalid_argument("curve_parameters: wrong count");
        return opt.params;
    }
    std::vector<double> t;
    switch (opt.kind) {
    case Curve::Moment:
        // Equally spaced in [-1, 1]; t = 1..n loses the hull to roundoff
        // from C(6,10) on.
        for (int i = 0; i < n; ++i) t.push_back(-1 + 2.0 * i / (n - 1));
        break;
    case Curve::Trigonometric:
        for (int i = 0; i < n; ++i) t.push_back(2 * std::numbers::pi * i / n);
        break;
    case Curve::Clustered: {
        // Gaps grow geometrically (ratio 1.5) across [-eps, eps].
        t.push_back(-std::numbers::pi);
        const int m = n - 1;
        const double r = 1.5;
        const double total = std::pow(r, m - 1) - 1;
        for (int k = 0; k < m; ++k) t.push_back(opt.eps * (-1 + 2 * (std::pow(r, k) - 1) / total));
        break;
    }
    }
    return t;
}

std::vector<RVec> moment_points_exact(int d, const std::vector<long>& params) {
    std::vector<RVec> out;
    for (long t : params) {
        RVec v;
        Rational p = 1;
        for (int k = 0; k < d; ++k) v.push_back(p *= t);
        out.push_back(v);
    }
    return out;
}

namespace {

// Coordinates of a clustered curve point in which the cluster around
// parameter 0 has unit size: (1, s/eps, ..., (s/eps)^d) on the moment curve,
// and for the trigonometric curve the monomials u^j, sigma u^j in
// u = 1 - cos s, sigma = sin s, scaled by eps^-(order). Both are linear
// images of the homogenized point, so the cone over them has the same
// lattice; the pivot becomes a far ray.
Vec clustered_local(int d, double s, double eps) {
    Vec g(d + 1);
    g(0) = 1;
    if (d % 2) {
        for (int k = 1; k <= d; ++k) g(k) = std::pow(s / eps, k);
        return g;
    }
    const int m = d / 2;
    const double u = 2 * std::pow(std::sin(s / 2), 2), sigma = std::sin(s);
    for (int j = 1; j <= m; ++j) g(j) = std::pow(u / (eps * eps), j);
    for (int j = 0; j < m; ++j) g(m + 1 + j) = sigma / eps * std::pow(u / (eps * eps), j);
    return g;
}

Vec clustered_point(int d, double s, bool pivot) {
    return d % 2 == 0 ? trigonometric_point(d, s) : moment_point(d, pivot ? -1.0 : s);
}

// Hull of a clustered curve computed in local coordinates; normals are
// pulled back through the linear map local = M (1, x).
Polytope clustered_hull(int d, const std::vector<double>& t, double eps, double tol) {
    const int n = static_cast<int>(t.size());
    std::vector<Vec> pts, local;
    for (int i = 0; i < n; ++i) {
        pts.push_back(clustered_point(d, t[i], i == 0));
        local.push_back(clustered_local(d, d % 2 ? (i == 0 ? -1.0 : t[i]) : t[i], eps));
    }
    // M from d+1 well spread samples; the relation is exactly linear.
    Mat X(d + 1, d + 1), L(d + 1, d + 1);
    for (int k = 0; k <= d; ++k) {
        const double s = -0.9 + 1.8 * k / d;
        X.col(k) = homogenize(clustered_point(d, s, false));
        L.col(k) = clustered_local(d, s, eps);
    }
    const Mat M = L * X.inverse();

    Polytope C = hull(local, Form::Cone, tol);
    if (C.n_vertices() != n) throw GeometryError("cyclic_realization: parameters too degenerate, lattice is not cyclic");
    Polytope P;
    P.dim = d;
    P.form = Form::Euclidean;
    P.vertices = pts;
    P.lattice = C.lattice;
    P.source = C.source;
    for (const Vec& h : C.facet_normals) {
        Vec g = M.transpose() * h;
        P.facet_normals.push_back(g / g.tail(d).norm());
    }
    return P;
}

} // namespace

Polytope cyclic_realization(int d, int n, const CurveOptions& opt, double tol) {
    auto t = curve_parameters(n, opt);
    Polytope P;
    if (opt.kind == Curve::Clustered) {
        P = clustered_hull(d, t, opt.eps, tol);
    } else {
        std::vector<Vec> pts;
        for (double s : t) pts.push_back(opt.kind == Curve::Moment ? moment_point(d, s) : trigonometric_point(d, s));
        P = hull(pts, Form::Euclidean, tol);
    }
    if (P.n_vertices() != n || P.lattice != cyclic_lattice(d, n).lattice)
        throw GeometryError("cyclic_realization: parameters too degenerate, lattice is not cyclic");
    return P;
}

std::optional<KSet> separate(const std::vector<Vec>& points, Mask set, double tol) {
    const int d = static_cast<int>(points[0].size());
    const int n = static_cast<int>(points.size());
    // variables (a, b, t)
    Mat A = Mat::Zero(n + 2 * d + 1, d + 2);
    Vec rhs = Vec::Zero(A.rows());
    for (int i = 0; i < n; ++i) {
        const double s = (set & bit(i)) ? -1.0 : 1.0;
        A.block(i, 0, 1, d) = s * points[i].transpose();
        A(i, d) = -s;
        A(i, d + 1) = 1;
    }
    for (int k = 0; k < d; ++k) {
        A(n + k, k) = 1;
        A(n + d + k, k) = -1;
        rhs(n + k) = rhs(n + d + k) = 1;
    }
    A(n + 2 * d, d + 1) = 1;
    rhs(n + 2 * d) = 1;
    Vec c = Vec::Zero(d + 2);
    c(d + 1) = 1;
    auto lp = solve_lp(A, rhs, Mat(0, d + 2), Vec(0), c);
    if (lp.status != LpStatus::Optimal || lp.value <= tol) return std::nullopt;
    KSet k;
    k.set = set;
    k.normal = Eigen::Map<const Vec>(lp.x.data(), d);
    k.offset = lp.x[d];
    k.margin = lp.value;
    return k;
}

bool separable_exact(const std::vector<RVec>& points, Mask set) {
    const int d = static_cast<int>(points[0].size());
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (int i = 0; i < n; ++i) {
        const int s = (set & bit(i)) ? -1 : 1;
        std::vector<Rational> row(d + 2, Rational(0));
        for (int k = 0; k < d; ++k) row[k] = s * points[i][k];
        row[d] = -s;
        row[d + 1] = 1;
        A.push_back(row);
        b.push_back(0);
    }
    for (int k = 0; k < d; ++k)
        for (int s : {1, -1}) {
            std::vector<Rational> row(d + 2, Rational(0));
            row[k] = s;
            A.push_back(row);
            b.push_back(1);
        }
    std::vector<Rational> top(d + 2, Rational(0));
    top[d + 1] = 1;
    A.push_back(top);
    b.push_back(1);
    std::vector<Rational> c(d + 2, Rational(0));
    c[d + 1] = 1;
    auto lp = solve_lp<Rational>(A, b, {}, {}, c);
    return lp.status == LpStatus::Optimal && sgn(lp.value) > 0;
}

std::vector<KSet> k_sets(const Polytope& P, int k, double tol, int threads) {
    Polytope E = to_euclidean_if_possible(P);
    if (E.form != Form::Euclidean) throw std::invalid_argument("k_sets: realization not in an affine chart");
    const int n = E.n_vertices();
    std::vector<Mask> subsets;
    std::function<void(int, int, Mask)> rec = [&](int start, int left, Mask m) {
        if (left == 0) {
            subsets.push_back(m);
            return;
        }
        for (int i = start; i <= n - left; ++i) rec(i + 1, left - 1, m | bit(i));
    };
    if (k >= 1 && k <= n) rec(0, k, 0);
    std::sort(subsets.begin(), subsets.end());

    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, std::max<std::size_t>(1, subsets.size() / 16));
    std::vector<std::optional<KSet>> found(subsets.size());
    auto work = [&](std::size_t from, std::size_t to) {
        for (std::size_t s = from; s < to; ++s) found[s] = separate(E.vertices, subsets[s], tol);
    };
    std::vector<std::thread> pool;
    const std::size_t chunk = (subsets.size() + threads - 1) / std::max(threads, 1);
    for (int w = 0; w < threads; ++w) {
        std::size_t from = w * chunk, to = std::min(subsets.size(), from + chunk);
        if (from < to) pool.emplace_back(work, from, to);
    }
    for (auto& t : pool) t.join();
    std::vector<KSet> out;
    for (auto& f : found)
        if (f) out.push_back(*f);
    return out;
}

bool is_face(const FaceLattice& L, Mask set) { return L.closure(set) == set; }

std::vector<Mask> missing_faces(const FaceLattice& L, int max_size) {
    const int n = L.n_vertices();
    std::vector<Mask> out;
    std::function<void(int, int, Mask)> rec = [&](int start, int left, Mask m) {
        if (left == 0) {
            if (is_face(L, m)) return;
            for (int i : indices(m))
                if (!is_face(L, m & ~bit(i))) return;
            out.push_back(m);
            return;
        }
        for (int i = start; i <= n - left; ++i) rec(i + 1, left - 1, m | bit(i));
    };
    for (int s = 2; s <= max_size; ++s) rec(0, s, 0);
    return out;
}

int neighborliness(const FaceLattice& L) {
    const int n = L.n_vertices();
    int best = 0;
    for (int k = 1; k <= L.dim(); ++k) {
        bool all = true;
        std::function<void(int, int, Mask)> rec = [&](int start, int left, Mask m) {
            if (!all) return;
            if (left == 0) {
                all = is_face(L, m);
                return;
            }
            for (int i = start; i <= n - left && all; ++i) rec(i + 1, left - 1, m | bit(i));
        };
        rec(0, k, 0);
        if (!all) break;
        best = k;
    }
    return best;
}

int StackingTree::max_degree() const {
    int m = 0;
    for (const auto& a : adj) m = std::max(m, static_cast<int>(a.size()));
    return m;
}

bool StackingTree::is_tree() const {
    const int n = size();
    if (n == 0) return false;
    int edges = 0;
    for (const auto& a : adj) edges += static_cast<int>(a.size());
    if (edges != 2 * (n - 1)) return false;
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push_back(w);
            }
    }
    return count == n;
}

StackingTree StackingTree::path(int d, int nodes) {
    StackingTree t;
    t.d = d;
    t.adj.resize(nodes);
    for (int i = 0; i + 1 < nodes; ++i) {
        t.adj[i].push_back(i + 1);
        t.adj[i + 1].push_back(i);
    }
    return t;
}

StackingTree StackingTree::star(int d, int leaves) {
    StackingTree t;
    t.d = d;
    t.adj.resize(leaves + 1);
    for (int i = 1; i <= leaves; ++i) {
        t.adj[0].push_back(i);
        t.adj[i].push_back(0);
    }
    return t;
}

StackingTree StackingTree::random(int d, int nodes, std::uint64_t seed) {
    StackingTree t;
    t.d = d;
    t.adj.resize(nodes);
    std::mt19937_64 rng(seed);
    for (int m = 1; m < nodes; ++m) {
        // The root has d+1 free facets, every other node d.
        std::vector<int> open;
        for (int k = 0; k < m; ++k)
            if (static_cast<int>(t.adj[k].size()) < d + 1) open.push_back(k);
        const int p = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
        t.adj[p].push_back(m);
        t.adj[m].push_back(p);
    }
    return t;
}

StackedLayout stacked_layout(const StackingTree& tree) {
    const int d = tree.d;
    const int m = tree.size();
    if (!tree.is_tree()) throw std::invalid_argument("stacked_layout: not a tree");
    if (d + m > kMaxVertices) throw std::invalid_argument("stacked_layout: too many vertices");
    StackedLayout out;
    out.simplices.assign(m, {});
    out.parent.assign(m, -1);
    out.glued_facet_omits.assign(m, -1);
    for (int i = 0; i <= d; ++i) out.simplices[0].push_back(i);
    std::deque<int> q{0};
    std::vector<char> seen(m, 0);
    seen[0] = 1;
    while (!q.empty()) {
        int p = q.front();
        q.pop_front();
        std::vector<int> children;
        for (int c : tree.adj[p])
            if (!seen[c]) children.push_back(c);
        std::sort(children.begin(), children.end());
        std::vector<int> avail;
        for (int v : out.simplices[p])
            if (p == 0 || v != d + p) avail.push_back(v);
        if (children.size() > avail.size()) throw std::invalid_argument("stacked_layout: node degree exceeds d+1");
        for (std::size_t k = 0; k < children.size(); ++k) {
            int c = children[k];
            seen[c] = 1;
            out.parent[c] = p;
            out.glued_facet_omits[c] = avail[k];
            for (int v : out.simplices[p])
                if (v != avail[k]) out.simplices[c].push_back(v);
            out.simplices[c].push_back(d + c);
            q.push_back(c);
        }
    }
    std::map<Mask, int> count;
    for (const auto& s : out.simplices) {
        Mask all = to_mask(s);
        for (int v : s) ++count[all & ~bit(v)];
    }
    std::vector<Mask> facets;
    for (const auto& [f, c] : count)
        if (c == 1) facets.push_back(f);
    out.lattice = FaceLattice::from_facets(d + m, facets);
    return out;
}

StackedAnalysis stacked_analysis(const FaceLattice& L) {
    const int d = L.dim();
    std::vector<Mask> facets = L.facets();
    for (Mask f : facets)
        if (popcount(f) != d) throw GeometryError("stacked_analysis: polytope is not simplicial");
    Mask alive = full_mask(L.n_vertices());
    std::vector<Mask> simplices;

    auto pseudomanifold = [&](const std::vector<Mask>& fs) {
        std::map<Mask, int> ridges;
        for (Mask f : fs)
            for (int v : indices(f)) ++ridges[f & ~bit(v)];
        for (const auto& [r, c] : ridges)
            if (c != 2) return false;
        return true;
    };

    while (popcount(alive) > d + 1) {
        bool peeled = false;
        for (int v : indices(alive)) {
            std::vector<Mask> around, rest;
            for (Mask f : facets) ((f & bit(v)) ? around : rest).push_back(f);
            if (static_cast<int>(around.size()) != d) continue;
            Mask nbrs = 0;
            for (Mask f : around) nbrs |= f;
            nbrs &= ~bit(v);
            if (popcount(nbrs) != d) continue;
            if (std::find(rest.begin(), rest.end(), nbrs) != rest.end()) continue;
            rest.push_back(nbrs);
            if (!pseudomanifold(rest)) continue;
            facets = rest;
            alive &= ~bit(v);
            simplices.push_back(nbrs | bit(v));
            peeled = true;
            break;
        }
        if (!peeled) throw GeometryError("stacked_analysis: polytope is not stacked");
    }
    if (static_cast<int>(facets.size()) != d + 1) throw GeometryError("stacked_analysis: polytope is not stacked");
    simplices.push_back(alive);
    std::reverse(simplices.begin(), simplices.end());

    StackedAnalysis out;
    out.simplices = simplices;
    out.tree.d = d;
    out.tree.adj.assign(simplices.size(), {});
    for (std::size_t a = 0; a < simplices.size(); ++a)
        for (std::size_t b = a + 1; b < simplices.size(); ++b)
            if (popcount(simplices[a] & simplices[b]) == d) {
                out.tree.adj[a].push_back(static_cast<int>(b));
                out.tree.adj[b].push_back(static_cast<int>(a));
            }
    if (!out.tree.is_tree()) throw GeometryError("stacked_analysis: dual graph is not a tree");
    out.max_degree = out.tree.max_degree();
    out.inscribable = out.max_degree <= 3;
    return out;
}

OddKSetExample odd_kset_counterexample(int d, int n, int k, double tol) {
    if (d % 2 == 0) throw std::invalid_argument("odd_kset_counterexample: dimension must be odd");
    OddCyclic oc = odd_cyclic_scribed(d, n, tol);
    const FaceLattice target = cyclic_lattice(d, n).lattice;
    const int vplus = oc.v_plus;
    std::vector<int> equator;
    for (int i = 0; i < oc.polytope.n_vertices(); ++i)
        if (i != oc.v_plus && i != oc.v_minus) equator.push_back(i);
    if (k < 1 || k - 1 > static_cast<int>(equator.size()))
        throw std::invalid_argument("odd_kset_counterexample: k out of range");

    const auto& facets = oc.polytope.lattice.facets();
    auto contains_facet = [&](Mask m) {
        for (Mask f : facets)
            if (subset_of(f, m)) return true;
        return false;
    };

    // Lexicographically first (k-1)-subset of the equator which, with v_+,
    // contains no facet.
    std::vector<int> pick;
    std::function<bool(std::size_t, int)> rec = [&](std::size_t start, int left) {
        if (left == 0) {
            Mask m = bit(vplus);
            for (int i : pick) m |= bit(i);
            return !contains_facet(m);
        }
        for (std::size_t i = start; i + left <= equator.size(); ++i) {
            pick.push_back(equator[i]);
            if (rec(i + 1, left - 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(0, k - 1)) throw GeometryError("odd_kset_counterexample: every candidate contains a facet");
    Mask chosen = bit(vplus);
    for (int i : pick) chosen |= bit(i);

    double eps = 0.1;
    for (int attempt = 0; attempt < 40; ++attempt, eps /= 2) {
        std::vector<Vec> pts = oc.polytope.vertices;
        for (int i : equator) pts[i](0) = (chosen & bit(i)) ? eps : -eps;
        Polytope Q;
        try {
            Q = hull(pts, Form::Euclidean, tol);
        } catch (const GeometryError&) {
            continue;
        }
        if (Q.n_vertices() != n || !Q.lattice.isomorphism_to(target)) continue;
        auto ks = separate(Q.vertices, chosen, tol);
        if (!ks) continue;
        bool facet_inside = false;
        for (Mask f : Q.lattice.facets()) facet_inside = facet_inside || subset_of(f, chosen);
        if (facet_inside) continue;
        return {Q, *ks, eps};
    }
    throw GeometryError("odd_kset_counterexample: lifting changed the combinatorial type");
}

} // namespace scribe
