#include "scribe/constructions.hpp"

#include "scribe/optim.hpp"
#include "scribe/scribability.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace scribe {

Polytope triakis_weak_inscribed() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    std::vector<Vec> g;
    auto add = [&](double a, double b, double c, double d) {
        Vec v(4);
        v << a, b, c, d;
        g.push_back(v);
    };
    add(s2, 0, 1, 1);
    add(s2, 0, -1, 1);
    add(s3, s2, 0, 1);
    add(s3, -s2, 0, 1);
    add(-s2, 1, 0, 1);
    add(-s2, -1, 0, 1);
    add(-s3, 0, s2, 1);
    add(-s3, 0, -s2, 1);
    return hull(g, Form::Cone);
}

// ---------------------------------------------------------------------------
// Truncation programs

std::string to_string(const VertexLabel& l) { return std::to_string(l.round) + "." + std::to_string(l.index); }

TruncationState TruncationState::simplex(int d) {
    TruncationState s;
    std::vector<Mask> facets;
    for (int i = 0; i <= d; ++i) facets.push_back(full_mask(d + 1) & ~bit(i));
    s.lattice = FaceLattice::from_facets(d + 1, facets);
    for (int i = 0; i <= d; ++i) {
        s.labels.push_back({0, i});
        s.batch.push_back(-1);
    }
    return s;
}

int TruncationState::index_of(const VertexLabel& l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

std::vector<int> TruncationState::truncate(const VertexLabel& l, int round, int& counter) {
    const int v = index_of(l);
    if (v < 0) throw std::invalid_argument("truncation: no vertex labelled " + to_string(l));
    const int nbrs = static_cast<int>(lattice.vertex_adjacency()[v].size());
    lattice = truncate_lattice(lattice, v);
    labels.erase(labels.begin() + v);
    batch.erase(batch.begin() + v);
    std::vector<int> created;
    for (int k = 0; k < nbrs; ++k) {
        created.push_back(static_cast<int>(labels.size()));
        labels.push_back({round, counter++});
        batch.push_back(batches);
    }
    ++batches;
    return created;
}

namespace {

void check_round(const TruncationState& s, const std::vector<VertexLabel>& round, int r) {
    std::set<VertexLabel> seen;
    for (const auto& l : round) {
        if (!seen.insert(l).second) throw std::invalid_argument("truncation: label repeated in round " + std::to_string(r));
        if (l.round >= r || s.index_of(l) < 0)
            throw std::invalid_argument("truncation: label " + to_string(l) + " not present before round " +
                                        std::to_string(r));
    }
}

} // namespace

TruncationState run_truncation(const TruncationProgram& prog) {
    TruncationState s = TruncationState::simplex(prog.d);
    for (std::size_t r = 0; r < prog.rounds.size(); ++r) {
        const int round = static_cast<int>(r) + 1;
        check_round(s, prog.rounds[r], round);
        int counter = 0;
        for (const auto& l : prog.rounds[r]) s.truncate(l, round, counter);
    }
    return s;
}

TruncationProgram random_truncation_program(int d, int rounds, int max_vertices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    TruncationProgram prog;
    prog.d = d;
    TruncationState s = TruncationState::simplex(d);
    for (int r = 1; r <= rounds; ++r) {
        const int n = s.lattice.n_vertices();
        const int room = (max_vertices - n) / (d - 1);
        if (room < 1) break;
        const int k = std::uniform_int_distribution<int>(1, std::min(room, n))(rng);
        std::vector<VertexLabel> pick = s.labels;
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(k);
        prog.rounds.push_back(pick);
        int counter = 0;
        for (const auto& l : pick) s.truncate(l, r, counter);
    }
    return prog;
}

TruncationProgram program_from_tree(const StackingTree& tree) {
    const int d = tree.d;
    StackedLayout layout = stacked_layout(tree);
    TruncationProgram prog;
    prog.d = d;
    TruncationState s = TruncationState::simplex(d);

    // Stacked facet (as a vertex set of the stacked polytope) of each
    // truncated-polytope vertex.
    std::map<VertexLabel, Mask> facet_of;
    for (int i = 0; i <= d; ++i) facet_of[{0, i}] = full_mask(d + 1) & ~bit(i);

    std::vector<int> depth(tree.size(), 0);
    std::vector<int> order;
    for (int c = 1; c < tree.size(); ++c) order.push_back(c);
    for (int c : order) {
        int p = c, k = 0;
        while (layout.parent[p] >= 0) {
            p = layout.parent[p];
            ++k;
        }
        depth[c] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] < depth[b]; });

    int current_round = 0, counter = 0;
    for (int c : order) {
        if (depth[c] != current_round) {
            current_round = depth[c];
            prog.rounds.emplace_back();
            counter = 0;
        }
        const int p = layout.parent[c];
        Mask glued = to_mask(layout.simplices[p]) & ~bit(layout.glued_facet_omits[c]);
        VertexLabel target{-1, -1};
        for (const auto& [l, f] : facet_of)
            if (f == glued && s.index_of(l) >= 0) target = l;
        if (target.round < 0) throw std::logic_error("program_from_tree: glued facet not found");
        prog.rounds.back().push_back(target);

        const int v = s.index_of(target);
        std::vector<Mask> nbr_facets;
        const auto nbrs = s.lattice.vertex_adjacency()[v];
        for (int u : nbrs) nbr_facets.push_back(facet_of.at(s.labels[u]));
        auto created = s.truncate(target, current_round, counter);
        const Mask apex = bit(d + c);
        for (std::size_t k = 0; k < created.size(); ++k)
            facet_of[s.labels[created[k]]] = (glued & nbr_facets[k]) | apex;
    }
    return prog;
}

// ---------------------------------------------------------------------------
// Inscribed truncated polytopes

namespace {

Mat inverse_sqrt(const Mat& A) {
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.eigenvalues().minCoeff() <= 0) throw std::invalid_argument("body: matrix is not positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

// Smallest lambda in (0, 1] with p + lambda (q - p) on the body.
std::optional<Vec> first_crossing(const Body& body, const Vec& p, const Vec& q) {
    const Vec u = q - p;
    const double a = u.dot(body.A * u), b = 2 * p.dot(body.A * u), c = body.value(p) - 1;
    const double disc = b * b - 4 * a * c;
    if (a <= 0 || disc < 0) return std::nullopt;
    const double sq = std::sqrt(disc);
    // Numerically stable pair of roots.
    const double qq = -0.5 * (b + (b >= 0 ? sq : -sq));
    double r1 = qq / a, r2 = qq != 0 ? c / qq : r1;
    if (r1 > r2) std::swap(r1, r2);
    for (double r : {r1, r2})
        if (r > 0 && r <= 1 + 1e-12) {
            Vec x = p + std::min(r, 1.0) * u;
            // One Newton step along the segment keeps |x^T A x - 1| at rounding level.
            const double g = 2 * x.dot(body.A * u);
            if (g != 0) x -= (body.value(x) - 1) / g * u;
            return x;
        }
    return std::nullopt;
}

} // namespace

namespace {

// Every truncated vertex after the first round lies on a live simplex facet
// from its own creation batch and has one neighbor off it.
bool follows_batch_discipline(const TruncationProgram& prog) {
    TruncationState s = TruncationState::simplex(prog.d);
    for (std::size_t r = 0; r < prog.rounds.size(); ++r) {
        const int round = static_cast<int>(r) + 1;
        check_round(s, prog.rounds[r], round);
        const auto adj = s.lattice.vertex_adjacency();
        const auto& facets = s.lattice.facets();
        for (const auto& l : prog.rounds[r]) {
            const int v = s.index_of(l);
            if (round == 1) continue;
            if (s.batch[v] < 0) return false;
            Mask siblings = 0;
            for (int u = 0; u < s.lattice.n_vertices(); ++u)
                if (s.batch[u] == s.batch[v]) siblings |= bit(u);
            int outside = 0;
            for (int u : adj[v]) outside += !(siblings & bit(u));
            if (outside != 1 || std::find(facets.begin(), facets.end(), siblings) == facets.end()) return false;
        }
        int counter = 0;
        for (const auto& l : prog.rounds[r]) s.truncate(l, round, counter);
    }
    return true;
}

InscribedTruncation inscribe_disciplined(const TruncationProgram& prog, const Body& body, double tol) {
    const int d = prog.d;
    if (body.A.rows() != d || body.A.cols() != d) throw std::invalid_argument("inscribe_truncated: body dimension");
    const Mat root = inverse_sqrt(body.A);
    std::vector<Vec> pts;
    for (const Vec& p : regular_simplex_points(d, 1.0)) pts.push_back(root * p);
    TruncationState state = TruncationState::simplex(d);
    InscribedTruncation out;
    // Small truncation facets sit close to their neighbors' planes; the hull
    // runs with a tighter coplanarity tolerance than the classifier.
    const double hull_tol = std::min(tol, 1e-12);

    for (std::size_t r = 0; r < prog.rounds.size(); ++r) {
        const int round = static_cast<int>(r) + 1;
        const auto& labels = prog.rounds[r];
        check_round(state, labels, round);
        const auto adj = state.lattice.vertex_adjacency();
        const auto& facets = state.lattice.facets();

        std::map<int, Vec> dir;
        std::map<int, double> scale;
        for (const auto& l : labels) {
            const int v = state.index_of(l);
            Vec direction = body.A * pts[v];
            if (state.batch[v] >= 0) {
                Mask siblings = 0;
                for (int u = 0; u < state.lattice.n_vertices(); ++u)
                    if (state.batch[u] == state.batch[v]) siblings |= bit(u);
                std::vector<int> outside;
                for (int u : adj[v])
                    if (!(siblings & bit(u))) outside.push_back(u);
                if (std::find(facets.begin(), facets.end(), siblings) != facets.end() && outside.size() == 1)
                    direction = pts[v] - pts[outside[0]];
            }
            dir[v] = direction.normalized();
            double len = std::numeric_limits<double>::infinity();
            for (int u : adj[v]) len = std::min(len, (pts[u] - pts[v]).norm());
            scale[v] = len;
        }

        bool done = false;
        double frac = 1e-2;
        for (int attempt = 0; attempt < 60 && !done; ++attempt, frac /= 2) {
            std::vector<Vec> pulled = pts;
            for (const auto& [v, u] : dir) pulled[v] += frac * scale[v] * u;
            Polytope moved;
            try {
                moved = hull(pulled, Form::Euclidean, hull_tol);
            } catch (const GeometryError&) {
                continue;
            }
            if (moved.n_vertices() != static_cast<int>(pulled.size()) || moved.lattice != state.lattice) continue;

            TruncationState next = state;
            std::vector<Vec> cur = pulled;
            int counter = 0;
            bool ok = true;
            for (const auto& l : labels) {
                const int v = next.index_of(l);
                std::vector<Vec> fresh;
                const auto nbrs = next.lattice.vertex_adjacency()[v];
                for (int u : nbrs) {
                    auto x = first_crossing(body, cur[v], cur[u]);
                    if (!x) {
                        ok = false;
                        break;
                    }
                    fresh.push_back(*x);
                }
                if (!ok) break;
                next.truncate(l, round, counter);
                cur.erase(cur.begin() + v);
                cur.insert(cur.end(), fresh.begin(), fresh.end());
            }
            if (!ok) continue;
            Polytope Q;
            try {
                Q = hull(cur, Form::Euclidean, hull_tol);
            } catch (const GeometryError&) {
                continue;
            }
            if (Q.n_vertices() != static_cast<int>(cur.size()) || Q.lattice != next.lattice) continue;
            state = next;
            pts = cur;
            out.pull_fraction.push_back(frac);
            done = true;
        }
        if (!done)
            throw GeometryError("inscribe_truncated: round " + std::to_string(round) +
                                " changed the combinatorial type after 60 halvings");
    }

    for (const Vec& p : pts)
        if (std::abs(body.value(p) - 1) > tol) throw GeometryError("inscribe_truncated: vertex off the body");
    out.polytope = hull(pts, Form::Euclidean, hull_tol);
    if (out.polytope.lattice != state.lattice) throw GeometryError("inscribe_truncated: final lattice mismatch");
    out.labels = state.labels;
    return out;
}

} // namespace

namespace {

// A vertex of a simple polytope is named by the d facets through it: simplex
// facet i (opposite {0, i}) has id i, the cut of event e has id d + 1 + e.
using FacetIds = std::vector<int>;

struct TrackedRun {
    TruncationState state;
    std::vector<FacetIds> ids;     // per current vertex
    std::vector<int> generation;   // 0 for simplex vertices

    explicit TrackedRun(int d) : state(TruncationState::simplex(d)) {
        for (int i = 0; i <= d; ++i) {
            FacetIds f;
            for (int k = 0; k <= d; ++k)
                if (k != i) f.push_back(k);
            ids.push_back(f);
            generation.push_back(0);
        }
    }

    int find(const FacetIds& f) const {
        auto it = std::find(ids.begin(), ids.end(), f);
        return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
    }

    void cut(int v, int round, int& counter, int cut_id) {
        const FacetIds fv = ids[v];
        const int gen = generation[v];
        std::vector<FacetIds> fresh;
        // New vertices follow the ascending neighbor order of truncate().
        const auto nbrs = state.lattice.vertex_adjacency()[v];
        for (int u : nbrs) {
            FacetIds f;
            std::set_intersection(fv.begin(), fv.end(), ids[u].begin(), ids[u].end(), std::back_inserter(f));
            f.push_back(cut_id);
            std::sort(f.begin(), f.end());
            fresh.push_back(f);
        }
        state.truncate(state.labels[v], round, counter);
        ids.erase(ids.begin() + v);
        generation.erase(generation.begin() + v);
        for (auto& f : fresh) {
            ids.push_back(std::move(f));
            generation.push_back(gen + 1);
        }
    }
};

} // namespace

InscribedTruncation inscribe_truncated(const TruncationProgram& prog, const Body& body, double tol) {
    if (follows_batch_discipline(prog)) return inscribe_disciplined(prog, body, tol);

    // Cuts at distinct vertices commute, so the program is replayed with each
    // cut in the round after the one that created its vertex.
    const int d = prog.d;
    TrackedRun original(d);
    struct Event {
        FacetIds vertex;
        int depth;
    };
    std::vector<Event> events;
    for (std::size_t r = 0; r < prog.rounds.size(); ++r) {
        const int round = static_cast<int>(r) + 1;
        check_round(original.state, prog.rounds[r], round);
        int counter = 0;
        for (const auto& l : prog.rounds[r]) {
            const int v = original.state.index_of(l);
            events.push_back({original.ids[v], original.generation[v] + 1});
            original.cut(v, round, counter, d + static_cast<int>(events.size()));
        }
    }

    int depth = 0;
    for (const auto& e : events) depth = std::max(depth, e.depth);
    TruncationProgram sched;
    sched.d = d;
    TrackedRun replay(d);
    for (int r = 1; r <= depth; ++r) {
        std::vector<VertexLabel> round;
        std::vector<int> cut_ids;
        for (std::size_t e = 0; e < events.size(); ++e)
            if (events[e].depth == r) {
                const int v = replay.find(events[e].vertex);
                if (v < 0) throw std::logic_error("inscribe_truncated: rescheduled vertex missing");
                round.push_back(replay.state.labels[v]);
                cut_ids.push_back(d + 1 + static_cast<int>(e));
            }
        int counter = 0;
        for (std::size_t k = 0; k < round.size(); ++k)
            replay.cut(replay.state.index_of(round[k]), r, counter, cut_ids[k]);
        sched.rounds.push_back(round);
    }

    InscribedTruncation res = inscribe_disciplined(sched, body, tol);
    // The replayed hull is already validated; only the vertex order changes.
    // Re-running the hull on permuted input can split nearly coplanar facets.
    const Polytope& R = res.polytope;
    std::vector<int> perm(replay.ids.size());
    std::vector<Vec> pts(original.ids.size());
    for (std::size_t i = 0; i < replay.ids.size(); ++i) {
        const int j = original.find(replay.ids[i]);
        if (j < 0) throw std::logic_error("inscribe_truncated: rescheduled program has another type");
        perm[i] = j;
        pts[j] = R.vertices[i];
    }
    InscribedTruncation out;
    Polytope& P = out.polytope;
    P.dim = d;
    P.form = Form::Euclidean;
    P.vertices = pts;
    P.lattice = R.lattice.relabeled(perm);
    for (std::size_t i = 0; i < pts.size(); ++i) P.source.push_back(static_cast<int>(i));
    for (Mask f : P.lattice.facets())
        for (std::size_t k = 0; k < R.lattice.facets().size(); ++k) {
            Mask g = 0;
            for (int i : indices(R.lattice.facets()[k])) g |= bit(perm[i]);
            if (g == f) P.facet_normals.push_back(R.facet_normals[k]);
        }
    if (P.lattice != original.state.lattice) throw GeometryError("inscribe_truncated: final lattice mismatch");
    out.labels = original.state.labels;
    out.pull_fraction = res.pull_fraction;
    return out;
}

// ---------------------------------------------------------------------------
// Ridge-scribed stacked polytopes

namespace {

// Unit space-like e with <e, v> = 0 for every v.
Vec lorentz_normal(const std::vector<Vec>& vs) {
    const int D = static_cast<int>(vs[0].size());
    Mat rows(vs.size(), D);
    const Mat J = lorentz_J(D);
    for (std::size_t k = 0; k < vs.size(); ++k) rows.row(k) = (J * vs[k]).transpose();
    Mat N = null_space(rows, 1e-12);
    if (N.cols() != 1) throw GeometryError("lorentz_normal: points do not span a hyperplane");
    Vec e = N.col(0);
    const double q = lorentz_product(e, e);
    if (q <= 0) throw GeometryError("lorentz_normal: hyperplane misses the ball");
    return e / std::sqrt(q);
}

Polytope from_lorentz(const std::vector<Vec>& gens, double tol) {
    std::vector<Vec> pts;
    for (const Vec& g : gens) {
        if (g(0) <= 1e-9 * g.norm()) throw GeometryError("ridge_scribed: a vertex left the affine chart");
        pts.push_back(g.tail(g.size() - 1) / g(0));
    }
    return hull(pts, Form::Euclidean, tol);
}

void require_ridges_tangent(const Polytope& P, double tol, const char* who) {
    for (Mask r : P.lattice.faces(P.dim - 2)) {
        FaceClass fc = classify_face(P, r, tol);
        if (!fc.tangent || fc.indeterminate) throw GeometryError(std::string(who) + ": a ridge is not tangent");
    }
}

} // namespace

Polytope ridge_tangent_simplex(int d) { return regular_simplex(d, std::sqrt(d * (d - 1) / 2.0)); }

Polytope ridge_scribed_stacked(const StackingTree& tree, double tol) {
    const int d = tree.d;
    StackedLayout layout = stacked_layout(tree);
    std::vector<Vec> gens;
    for (const Vec& p : regular_simplex_points(d, std::sqrt(d * (d - 1) / 2.0))) gens.push_back(homogenize(p));
    gens.resize(d + tree.size());

    std::deque<int> q;
    for (int c = 1; c < tree.size(); ++c)
        if (layout.parent[c] == 0) q.push_back(c);
    std::vector<std::vector<int>> children(tree.size());
    for (int c = 1; c < tree.size(); ++c) children[layout.parent[c]].push_back(c);
    while (!q.empty()) {
        const int c = q.front();
        q.pop_front();
        const int p = layout.parent[c];
        const int omit = layout.glued_facet_omits[c];
        std::vector<Vec> facet;
        for (int v : layout.simplices[p])
            if (v != omit) facet.push_back(gens[v]);
        ProjMap R = lorentz_reflection(lorentz_normal(facet));
        gens[d + c] = R.apply(gens[omit]);
        for (int g : children[c]) q.push_back(g);
    }

    Polytope P = from_lorentz(gens, tol);
    if (P.n_vertices() != static_cast<int>(gens.size()) || P.lattice != layout.lattice)
        throw GeometryError("ridge_scribed_stacked: lattice mismatch, tree too deep for floating precision");
    require_ridges_tangent(P, tol, "ridge_scribed_stacked");
    return P;
}

Polytope moebius_connected_sum(const Polytope& P, Mask facet_p, const Polytope& Q, Mask facet_q, double tol) {
    const int d = P.dim;
    if (Q.dim != d) throw std::invalid_argument("moebius_connected_sum: dimension mismatch");
    if (popcount(facet_p) != d || popcount(facet_q) != d)
        throw std::invalid_argument("moebius_connected_sum: facets must be simplices");
    const auto& fp = P.lattice.facets();
    const auto& fq = Q.lattice.facets();
    auto kp = std::find(fp.begin(), fp.end(), facet_p);
    auto kq = std::find(fq.begin(), fq.end(), facet_q);
    if (kp == fp.end() || kq == fq.end()) throw std::invalid_argument("moebius_connected_sum: not a facet");

    const Mat J = lorentz_J(d + 1);
    auto unit = [&](const Vec& v) {
        const double q = lorentz_product(v, v);
        if (q <= 0) throw GeometryError("moebius_connected_sum: facet vertex inside the ball");
        return Vec(v / std::sqrt(q));
    };
    Vec e_p = J * P.facet_normals[kp - fp.begin()];
    Vec e_q = J * Q.facet_normals[kq - fq.begin()];
    e_p /= std::sqrt(lorentz_product(e_p, e_p));
    e_q /= std::sqrt(lorentz_product(e_q, e_q));

    std::vector<int> vp = indices(facet_p), vq = indices(facet_q);
    Mat Mp(d + 1, d + 1);
    for (int k = 0; k < d; ++k) Mp.col(k) = unit(P.generator(vp[k]));
    Mp.col(d) = -e_p;

    std::optional<Mat> T;
    std::vector<int> perm = vq;
    std::sort(perm.begin(), perm.end());
    do {
        Mat Mq(d + 1, d + 1);
        for (int k = 0; k < d; ++k) Mq.col(k) = unit(Q.generator(perm[k]));
        Mq.col(d) = e_q;
        Mat cand = Mp * Mq.inverse();
        const double defect = (cand.transpose() * J * cand - J).cwiseAbs().maxCoeff();
        Vec future = Vec::Unit(d + 1, 0);
        if (defect <= 1e-8 && (cand * future)(0) > 0) {
            T = cand;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!T) throw GeometryError("moebius_connected_sum: facets are not Moebius equivalent within tolerance");

    std::vector<int> qmap(Q.n_vertices(), -1);
    for (int k = 0; k < d; ++k) qmap[perm[k]] = vp[k];
    std::vector<Vec> gens;
    for (int i = 0; i < P.n_vertices(); ++i) gens.push_back(P.generator(i));
    for (int i = 0; i < Q.n_vertices(); ++i)
        if (qmap[i] < 0) {
            qmap[i] = static_cast<int>(gens.size());
            gens.push_back(*T * Q.generator(i));
        }

    std::vector<Mask> facets;
    for (Mask f : fp)
        if (f != facet_p) facets.push_back(f);
    for (Mask f : fq)
        if (f != facet_q) {
            Mask m = 0;
            for (int i : indices(f)) m |= bit(qmap[i]);
            facets.push_back(m);
        }
    FaceLattice target = FaceLattice::from_facets(static_cast<int>(gens.size()), facets);

    Polytope S = from_lorentz(gens, tol);
    if (S.n_vertices() != static_cast<int>(gens.size()) || S.lattice != target)
        throw GeometryError("moebius_connected_sum: glued hull is not the connected sum");
    require_ridges_tangent(S, tol, "moebius_connected_sum");
    return S;
}

// ---------------------------------------------------------------------------
// Ball packings

namespace {

Ball invert(const Ball& sphere, const Ball& b) {
    const double r = sphere.radius(), rho = b.radius();
    const Vec diff = b.center - sphere.center;
    const double den = diff.squaredNorm() - rho * rho;
    Ball out;
    out.center = sphere.center + r * r / den * diff;
    out.curvature = std::abs(den) / (r * r * rho);
    return out;
}

// Point where b touches the (positive) ball `at`.
Vec contact(const Ball& at, const Ball& b) {
    Vec u = b.center - at.center;
    const double n = u.norm();
    if (n == 0) return at.center;
    u /= n;
    return b.curvature > 0 ? Vec(at.center + at.radius() * u) : Vec(at.center - at.radius() * u);
}

} // namespace

double BallPacking::max_tangency_residual() const {
    double worst = 0;
    for (auto [i, j] : tangencies) {
        const double s = balls[i].radius() + balls[j].radius();
        worst = std::max(worst, std::abs((balls[i].center - balls[j].center).norm() - s) / s);
    }
    return worst;
}

double BallPacking::min_separation() const {
    std::set<std::pair<int, int>> t(tangencies.begin(), tangencies.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            if (t.count({static_cast<int>(i), static_cast<int>(j)})) continue;
            const double s = balls[i].radius() + balls[j].radius();
            best = std::min(best, ((balls[i].center - balls[j].center).norm() - s) / s);
        }
    return best;
}

std::vector<std::pair<int, int>> tangency_graph(const std::vector<Ball>& balls, double tol) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            const double s = balls[i].radius() + balls[j].radius();
            if (std::abs((balls[i].center - balls[j].center).norm() - s) <= tol * s)
                out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    return out;
}

BallPacking initial_packing(int d) {
    if (d < 3) throw std::invalid_argument("initial_packing: need d >= 3");
    const int m = d - 1;
    const double R = std::sqrt(2.0 * m / (m + 1));
    BallPacking bp;
    bp.dim = m;
    for (const Vec& c : regular_simplex_points(m, R)) bp.balls.push_back({c, 1.0});
    bp.balls.push_back({Vec::Zero(m), 1.0 / (R - 1)});
    for (int i = 0; i <= d; ++i) bp.labels.push_back({0, i});
    bp.tangencies = tangency_graph(bp.balls);
    return bp;
}

BallPacking ball_packing_truncated(const TruncationProgram& prog, double tol) {
    BallPacking bp = initial_packing(prog.d);
    std::vector<std::vector<Ball>> partners(bp.balls.size());
    for (std::size_t i = 0; i < bp.balls.size(); ++i)
        for (std::size_t j = 0; j < bp.balls.size(); ++j)
            if (i != j) partners[i].push_back(bp.balls[j]);

    TruncationState state = TruncationState::simplex(prog.d);
    for (std::size_t r = 0; r < prog.rounds.size(); ++r) {
        const int round = static_cast<int>(r) + 1;
        check_round(state, prog.rounds[r], round);
        int counter = 0;
        for (const auto& l : prog.rounds[r]) {
            const int v = state.index_of(l);
            const Ball B = bp.balls[v];
            const auto nbrs = state.lattice.vertex_adjacency()[v];
            // Each new ball is the image of the partner touching B where the
            // corresponding neighbor does.
            std::vector<Ball> fresh;
            for (int u : nbrs) {
                const Vec t = contact(B, bp.balls[u]);
                std::size_t best = 0;
                double dist = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < partners[v].size(); ++k) {
                    const double e = (contact(B, partners[v][k]) - t).norm();
                    if (e < dist) {
                        dist = e;
                        best = k;
                    }
                }
                if (dist > 1e-6 * B.radius()) throw GeometryError("ball_packing: lost a tangency point");
                fresh.push_back(invert(B, partners[v][best]));
            }
            state.truncate(l, round, counter);
            bp.balls.erase(bp.balls.begin() + v);
            partners.erase(partners.begin() + v);
            Ball outside{B.center, -B.curvature};
            for (std::size_t k = 0; k < fresh.size(); ++k) {
                std::vector<Ball> ps{outside};
                for (std::size_t j = 0; j < fresh.size(); ++j)
                    if (j != k) ps.push_back(fresh[j]);
                bp.balls.push_back(fresh[k]);
                partners.push_back(ps);
            }
        }
    }
    bp.labels = state.labels;
    bp.tangencies = tangency_graph(bp.balls, tol);

    std::vector<Mask> edges, skeleton;
    for (auto [i, j] : bp.tangencies) edges.push_back(bit(i) | bit(j));
    for (Mask e : state.lattice.faces(1)) skeleton.push_back(e);
    if (!set_system_isomorphism(state.lattice.n_vertices(), edges, skeleton))
        throw GeometryError("ball_packing: tangency graph differs from the 1-skeleton");
    if (bp.min_separation() < -tol) throw GeometryError("ball_packing: overlapping balls");
    return bp;
}

// ---------------------------------------------------------------------------
// Odd cyclic polytopes

OddCyclic odd_cyclic_scribed(int d, int n, double tol) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("odd_cyclic_scribed: d must be odd and at least 3");
    if (n < d + 2) throw std::invalid_argument("odd_cyclic_scribed: need n >= d+2");
    const int m = d - 1;
    const FaceLattice target = cyclic_lattice(d, n).lattice;

    for (double eps : {0.3, 0.1, 0.03}) {
        CurveOptions opt;
        opt.kind = Curve::Clustered;
        opt.eps = eps;
        const auto params = curve_parameters(n - 1, opt);
        // Reflect so that the isolated vertex sits at the south point.
        Vec south = Vec::Zero(m);
        south(m - 1) = -1;
        Vec u = trigonometric_point(m, params[0]) - south;
        Mat H = Mat::Identity(m, m);
        if (u.norm() > 1e-15) {
            u.normalize();
            H -= 2 * u * u.transpose();
        }
        std::vector<Vec> equator;
        for (std::size_t k = 1; k < params.size(); ++k) equator.push_back(H * trigonometric_point(m, params[k]));

        for (int k = 0; k <= 40; ++k) {
            const double h = 1 + std::ldexp(1.0, -k);
            // Shadow of the sphere from (h, 0, ..., 0, -1) on x_0 = 0, with
            // u = 1 + z measured from the south point.
            const double az = h * h / (h * h - 1);
            const double b = h / std::sqrt(h * h - 1);
            std::vector<Vec> pts;
            Vec vp = Vec::Zero(d), vm = Vec::Zero(d);
            vp(0) = h;
            vm(0) = -h;
            vp(d - 1) = vm(d - 1) = -1;
            pts.push_back(vp);
            for (const Vec& q : equator) {
                Vec x = Vec::Zero(d);
                x.segment(1, m - 1) = b * q.head(m - 1);
                x(d - 1) = az * (1 + q(m - 1)) - 1;
                pts.push_back(x);
            }
            pts.push_back(vm);
            Polytope P;
            try {
                P = hull(pts, Form::Euclidean, std::min(tol, 1e-11));
            } catch (const GeometryError&) {
                continue;
            }
            if (P.n_vertices() != n) continue;
            auto iso = P.lattice.isomorphism_to(target);
            if (!iso) continue;
            if (scribed_verdict(P, 1, d - 1, Mode::Strong, tol) != Verdict::True) continue;
            OddCyclic out;
            out.polytope = P;
            out.h = h;
            out.v_plus = 0;
            out.v_minus = n - 1;
            out.relabel = *iso;
            return out;
        }
    }
    throw GeometryError("odd_cyclic_scribed: no height gave a strongly (1, d-1)-scribed realization");
}

// ---------------------------------------------------------------------------
// Weak (i, i+1) realizations

Polytope weak_ij_realization(const Polytope& P_in, int i, std::uint64_t seed, double tol) {
    Polytope P = to_euclidean_if_possible(P_in, tol);
    if (P.form != Form::Euclidean) throw std::invalid_argument("weak_ij_realization: realization not in an affine chart");
    const int d = P.dim;
    if (i < 0 || i > d - 2) throw std::invalid_argument("weak_ij_realization: need 0 <= i <= d-2");
    const int k = d - i - 1; // dimension of L

    Vec c0 = Vec::Zero(d);
    for (const Vec& v : P.vertices) c0 += v;
    c0 /= P.n_vertices();
    double rho = 0;
    for (const Vec& v : P.vertices) rho = std::max(rho, (v - c0).norm());

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto random_matrix = [&](int r, int c) {
        Mat M(r, c);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < c; ++b) M(a, b) = gauss(rng);
        return M;
    };

    for (int attempt = 0; attempt < 50; ++attempt) {
        // L lies in a hyperplane beyond the circumscribed ball of P, so it
        // misses P.
        Vec r = random_matrix(d, 1).col(0).normalized();
        Mat proj = Mat::Identity(d, d) - r * r.transpose();
        Vec l0 = c0 + 1.5 * rho * r + 0.5 * rho * proj * random_matrix(d, 1).col(0);
        Mat U = column_basis(proj * random_matrix(d, k));
        if (U.cols() != k) continue;
        Mat W = null_space(U.transpose());

        std::vector<Vec> hits;
        bool generic = true;
        for (Mask G : P.lattice.faces(i + 1)) {
            FaceGeometry g = face_geometry(P, G);
            Mat M(d, d);
            M << U, -g.span;
            Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
            if (svd.singularValues()(d - 1) < 1e-8 * svd.singularValues()(0)) {
                generic = false;
                break;
            }
            Vec st = svd.solve(g.base - l0);
            hits.push_back(st.head(k));
        }
        if (!generic || hits.empty()) continue;
        Vec sc = Vec::Zero(k);
        for (const Vec& s : hits) sc += s;
        sc /= static_cast<double>(hits.size());
        const Vec c = l0 + U * sc;
        double alpha = 0;
        for (const Vec& s : hits) alpha = std::max(alpha, (s - sc).norm());
        alpha = std::max(2 * alpha, 1e-6 * rho);

        double beta = rho;
        for (int halve = 0; halve < 60; ++halve, beta /= 2) {
            Mat A(d, d);
            A << U.transpose() / alpha, W.transpose() / beta;
            Vec t = -A * c;
            Polytope Q = affine_image(P, A, t);
            bool clear = true;
            for (Mask F : Q.lattice.faces(i)) {
                FaceGeometry g = face_geometry(Q, F);
                Vec perp = g.base - g.span * (g.span.transpose() * g.base);
                if (perp.norm() <= 1 + 1e-6) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            if (scribed_verdict(Q, i, i + 1, Mode::Weak, tol) == Verdict::True) return Q;
            break;
        }
    }
    throw GeometryError("weak_ij_realization: no generic subspace found in 50 attempts");
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

Polytope truncated_cube() { return truncate(cube(3), 0, 1.0 / 3); }

std::vector<Mask> facets_with_vertex_at_least(const Polytope& P, int first) {
    std::vector<Mask> out;
    for (Mask f : P.lattice.facets())
        if (f >> first) out.push_back(f);
    return out;
}

Polytope twice_stacked_truncated_tetrahedron() {
    Polytope P = regular_simplex(3);
    for (int k = 0; k < 4; ++k) P = truncate(P, 0, 1.0 / 3);
    std::vector<Mask> triangles;
    for (Mask f : P.lattice.facets())
        if (popcount(f) == 3) triangles.push_back(f);
    const int n0 = P.n_vertices();
    for (Mask f : triangles) P = stack(P, f);
    for (Mask f : facets_with_vertex_at_least(P, n0)) P = stack(P, f);
    return P;
}

Polytope twice_stacked_simplex_4d() {
    Polytope P = regular_simplex(4);
    std::vector<Mask> first = P.lattice.facets();
    for (Mask f : first) P = stack(P, f);
    for (Mask f : facets_with_vertex_at_least(P, 5)) P = stack(P, f);
    if (stacked_analysis(P.lattice).simplices.size() != 26)
        throw GeometryError("twice-stacked-simplex-4d: unexpected stacked triangulation");
    return P;
}

} // namespace

std::vector<std::string> fixture_names() {
    return {"triakis", "truncated-cube", "twice-stacked-truncated-tetrahedron", "twice-stacked-simplex-4d",
            "pyramid-over-truncated-cube"};
}

Polytope named_fixture(const std::string& name) {
    if (name == "triakis") return triakis_weak_inscribed();
    if (name == "truncated-cube") return truncated_cube();
    if (name == "twice-stacked-truncated-tetrahedron") return twice_stacked_truncated_tetrahedron();
    if (name == "twice-stacked-simplex-4d") return twice_stacked_simplex_4d();
    if (name == "pyramid-over-truncated-cube") return pyramid(truncated_cube());
    throw std::invalid_argument("unknown fixture: " + name);
}

} // namespace scribe
