#include "scribe/caps.hpp"

#include "scribe/combinatorics.hpp"
#include "scribe/optim.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <numbers>

namespace scribe {

SphericalCap cap_from_point(const Vec& x, double tol) {
    const double n = x.norm();
    if (n < 1 + tol) throw std::invalid_argument("cap_from_point: point is not outside the sphere");
    return {x / n, std::acos(1 / n)};
}

double angular_distance(const Vec& u, const Vec& v) {
    const Vec a = u.normalized(), b = v.normalized();
    // atan2 stays accurate for nearly parallel and antipodal vectors.
    return std::atan2((a - b * a.dot(b)).norm(), a.dot(b));
}

bool caps_disjoint(const SphericalCap& a, const SphericalCap& b, double tol) {
    return angular_distance(a.center, b.center) >= a.radius + b.radius - tol;
}

std::vector<std::pair<int, int>> intersection_graph(const std::vector<SphericalCap>& caps, double tol) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < caps.size(); ++i)
        for (std::size_t j = i + 1; j < caps.size(); ++j)
            if (!caps_disjoint(caps[i], caps[j], tol)) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

CapDepth common_cap_depth(const std::vector<SphericalCap>& caps, Mask set) {
    const auto idx = indices(set);
    const int D = static_cast<int>(caps[idx[0]].center.size());
    CapDepth best;
    best.t = -std::numeric_limits<double>::infinity();

    // At the optimum u is a unit vector in the span of the active centers,
    // so each independent active set yields a quadratic in t.
    std::vector<int> active;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!active.empty()) {
            const int m = static_cast<int>(active.size());
            Mat C(D, m);
            Vec a(m);
            for (int k = 0; k < m; ++k) {
                C.col(k) = caps[active[k]].center;
                a(k) = std::cos(caps[active[k]].radius);
            }
            Mat G = C.transpose() * C;
            Eigen::FullPivLU<Mat> lu(G);
            if (lu.rank() == m && lu.rcond() > 1e-12) {
                const Vec ones = Vec::Ones(m);
                const Vec p = lu.solve(ones), q = lu.solve(a);
                const double A = ones.dot(p), B = a.dot(p), Cc = a.dot(q) - 1;
                const double disc = B * B - A * Cc;
                if (disc >= 0) {
                    for (double t : {(-B + std::sqrt(disc)) / A, (-B - std::sqrt(disc)) / A}) {
                        Vec u = C * (q + t * p);
                        bool feasible = true;
                        for (int i : idx)
                            feasible = feasible && u.dot(caps[i].center) >= std::cos(caps[i].radius) + t - 1e-12;
                        if (feasible && t > best.t) {
                            best.t = t;
                            best.u = u;
                        }
                    }
                }
            }
        }
        if (static_cast<int>(active.size()) == D) return;
        for (std::size_t k = start; k < idx.size(); ++k) {
            active.push_back(idx[k]);
            rec(k + 1);
            active.pop_back();
        }
    };
    rec(0);
    return best;
}

KPlyResult is_k_ply(const std::vector<SphericalCap>& caps, int k, double tol) {
    KPlyResult out;
    const int n = static_cast<int>(caps.size());
    if (k < 1 || k > n) return out;
    std::vector<int> pick;
    std::function<bool(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == k) {
            const Mask m = to_mask(pick);
            CapDepth cd = common_cap_depth(caps, m);
            if (cd.t > tol) {
                out.holds = false;
                out.subset = m;
                out.witness = cd.u.normalized();
                return true;
            }
            return false;
        }
        for (int i = start; i < n; ++i) {
            pick.push_back(i);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    rec(0);
    return out;
}

KPlyEquivalence kply_equivalence_check(const std::vector<Vec>& points, int k, double tol) {
    KPlyEquivalence out;
    std::vector<SphericalCap> caps;
    for (const Vec& p : points) caps.push_back(cap_from_point(p, tol));
    out.caps_k_ply = is_k_ply(caps, k, tol).holds;

    out.ksets_meet_ball = true;
    const int n = static_cast<int>(points.size());
    std::vector<int> pick;
    std::function<bool(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == k) {
            const Mask m = to_mask(pick);
            if (!separate(points, m, tol)) return false;
            Mat V(points[0].size(), k);
            for (int j = 0; j < k; ++j) V.col(j) = points[pick[j]];
            if (min_norm_point(V).point.norm() > 1 + tol) {
                out.ksets_meet_ball = false;
                out.offending_kset = m;
                return true;
            }
            return false;
        }
        for (int i = start; i < n; ++i) {
            pick.push_back(i);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (k >= 1 && k <= n) rec(0);
    return out;
}

double ball_volume(int d) { return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1); }

double sphere_area(int d) { return 2 * std::pow(std::numbers::pi, (d + 1) / 2.0) / std::tgamma((d + 1) / 2.0); }

double separator_constant(int d) {
    if (d < 1) throw std::invalid_argument("separator_constant: need d >= 1");
    return 2 * sphere_area(d - 1) / (std::pow(sphere_area(d), 1 - 1.0 / d) * std::pow(ball_volume(d), 1.0 / d));
}

double separator_constant_planar(double k) {
    return std::sqrt(2 * std::numbers::pi / std::sqrt(3.0)) * (1 + std::sqrt(k)) / std::sqrt(2 * (1 + k));
}

Thresholds thresholds(int d) {
    if (d < 2) throw std::invalid_argument("thresholds: need d >= 2");
    Thresholds t;
    t.d = d;
    t.c_d = separator_constant(d);
    const double base = std::pow(separator_constant(d - 1) * (d + 1), d - 1);
    t.even_bound = base * (3.0 * d / 2 - 1);
    t.odd_bound = base * ((3 * d) / 2 - 1);
    return t;
}

double neighborly_bound(int d, int k) { return std::pow(separator_constant(d - 1) * (d + 1), d - 1) * (k + 1); }

double separator_size(int d, double n, double ply) {
    return separator_constant(d - 1) * std::pow(ply, 1.0 / (d - 1)) * std::pow(n, (d - 2.0) / (d - 1));
}

} // namespace scribe
