#include "scribe/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scribe {

namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
    static bool pos(double v) { return v > 1e-11; }
    static bool neg(double v) { return v < -1e-11; }
    static bool zero(double v) { return std::abs(v) <= 1e-11; }
    static double abs(double v) { return std::abs(v); }
    // Phase-one residuals carry rounding proportional to the right-hand side.
    static bool pos_rel(double v, double scale) { return v > 1e-11 * std::max(1.0, scale); }
};

template <>
struct Num<Rational> {
    static bool pos(const Rational& v) { return sgn(v) > 0; }
    static bool neg(const Rational& v) { return sgn(v) < 0; }
    static bool zero(const Rational& v) { return sgn(v) == 0; }
    static Rational abs(const Rational& v) { return ::abs(v); }
    static bool pos_rel(const Rational& v, const Rational&) { return sgn(v) > 0; }
};

// Tableau over nonnegative variables: rows hold B^-1 A | B^-1 b.
template <class T>
struct Tableau {
    std::vector<std::vector<T>> rows;
    std::vector<int> basis;
    std::vector<T> reduced;
    T value{};
    std::vector<char> allowed;

    int cols() const { return static_cast<int>(allowed.size()); }

    void pivot(int r, int c) {
        const int n = cols();
        T p = rows[r][c];
        for (int j = 0; j <= n; ++j) rows[r][j] /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r || Num<T>::zero(rows[i][c])) continue;
            T m = rows[i][c];
            for (int j = 0; j <= n; ++j) rows[i][j] -= m * rows[r][j];
        }
        if (!Num<T>::zero(reduced[c])) {
            T m = reduced[c];
            for (int j = 0; j < n; ++j) reduced[j] -= m * rows[r][j];
            value -= m * rows[r][n];
        }
        basis[r] = c;
    }

    // Minimises; returns false when unbounded.
    bool run() {
        const int n = cols();
        for (int iter = 0; iter < 100000; ++iter) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (allowed[j] && Num<T>::neg(reduced[j])) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            T best{};
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!Num<T>::pos(rows[i][enter])) continue;
                T ratio = rows[i][n] / rows[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex iteration limit");
    }
};

} // namespace

template <class T>
LpResult<T> solve_lp(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
                     const std::vector<std::vector<T>>& E, const std::vector<T>& f,
                     const std::vector<T>& c) {
    const int nx = static_cast<int>(c.size());
    const int mu = static_cast<int>(A.size());
    const int me = static_cast<int>(E.size());
    const int m = mu + me;
    // columns: x+ (nx), x- (nx), slacks (mu), artificials (m)
    const int ns = 2 * nx + mu;
    const int n = ns + m;

    Tableau<T> tab;
    tab.rows.assign(m, std::vector<T>(n + 1, T(0)));
    tab.basis.assign(m, 0);
    tab.allowed.assign(n, 1);
    for (int i = 0; i < m; ++i) {
        const auto& row = i < mu ? A[i] : E[i - mu];
        T rhs = i < mu ? b[i] : f[i - mu];
        auto& r = tab.rows[i];
        for (int j = 0; j < nx; ++j) {
            r[j] = row[j];
            r[nx + j] = -row[j];
        }
        if (i < mu) r[2 * nx + i] = T(1);
        r[n] = rhs;
        if (Num<T>::neg(rhs))
            for (int j = 0; j <= n; ++j) r[j] = -r[j];
        r[ns + i] = T(1);
        tab.basis[i] = ns + i;
    }

    T rhs_scale(0);
    for (int i = 0; i < m; ++i)
        if (Num<T>::abs(tab.rows[i][n]) > rhs_scale) rhs_scale = Num<T>::abs(tab.rows[i][n]);

    tab.reduced.assign(n, T(0));
    tab.value = T(0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < ns; ++j) tab.reduced[j] -= tab.rows[i][j];
        tab.value -= tab.rows[i][n];
    }
    tab.run();

    LpResult<T> out;
    if (Num<T>::pos_rel(-tab.value, rhs_scale)) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int i = static_cast<int>(tab.rows.size()) - 1; i >= 0; --i) {
        if (tab.basis[i] < ns) continue;
        int col = -1;
        for (int j = 0; j < ns; ++j)
            if (!Num<T>::zero(tab.rows[i][j])) {
                col = j;
                break;
            }
        if (col >= 0) {
            tab.pivot(i, col);
        } else {
            tab.rows.erase(tab.rows.begin() + i);
            tab.basis.erase(tab.basis.begin() + i);
        }
    }
    for (int j = ns; j < n; ++j) tab.allowed[j] = 0;

    std::vector<T> cost(n, T(0));
    for (int j = 0; j < nx; ++j) {
        cost[j] = -c[j];
        cost[nx + j] = c[j];
    }
    tab.reduced = cost;
    tab.value = T(0);
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
        const T& cb = cost[tab.basis[i]];
        if (Num<T>::zero(cb)) continue;
        for (int j = 0; j < n; ++j) tab.reduced[j] -= cb * tab.rows[i][j];
        tab.value -= cb * tab.rows[i][n];
    }
    if (!tab.run()) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    std::vector<T> y(n, T(0));
    for (std::size_t i = 0; i < tab.rows.size(); ++i) y[tab.basis[i]] = tab.rows[i][n];
    out.x.assign(nx, T(0));
    out.value = T(0);
    for (int j = 0; j < nx; ++j) {
        out.x[j] = y[j] - y[nx + j];
        out.value += c[j] * out.x[j];
    }
    out.status = LpStatus::Optimal;
    return out;
}

template LpResult<double> solve_lp(const std::vector<std::vector<double>>&, const std::vector<double>&,
                                   const std::vector<std::vector<double>>&, const std::vector<double>&,
                                   const std::vector<double>&);
template LpResult<Rational> solve_lp(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                     const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                     const std::vector<Rational>&);

LpResult<double> solve_lp(const Mat& A, const Vec& b, const Mat& E, const Vec& f, const Vec& c) {
    auto rows = [](const Mat& M) {
        std::vector<std::vector<double>> out(M.rows(), std::vector<double>(M.cols()));
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) out[i][j] = M(i, j);
        return out;
    };
    auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    return solve_lp<double>(rows(A), vec(b), rows(E), vec(f), vec(c));
}

QpResult min_norm_qp(const Mat& E, const Vec& f, const Mat& A, const Vec& b) {
    const int n = static_cast<int>(std::max(E.cols(), A.cols()));
    const int me = static_cast<int>(E.rows());
    const int mi = static_cast<int>(A.rows());
    double scale = 1.0;
    for (int i = 0; i < me; ++i) scale = std::max(scale, E.row(i).norm());
    for (int i = 0; i < mi; ++i) scale = std::max(scale, A.row(i).norm());
    const double eps = 1e-13 * scale;
    const double feas_tol = 1e-12 * scale * std::max(1.0, std::max(f.size() ? f.cwiseAbs().maxCoeff() : 0.0,
                                                                    b.size() ? b.cwiseAbs().maxCoeff() : 0.0));

    // Constraints are handled in the form n.x >= c.
    struct Active {
        int id;
        Vec normal;
        double rhs;
        bool equality;
    };
    std::vector<Active> active;
    Vec u;
    Vec x = Vec::Zero(n);
    std::vector<char> eq_done(me, 0);

    QpResult out;
    for (int outer = 0; outer < 10 * (me + mi) + 100; ++outer) {
        int p = -1;
        Vec np;
        double cp = 0;
        bool p_eq = false;
        for (int k = 0; k < me && p < 0; ++k) {
            if (eq_done[k]) continue;
            double sgn = (E.row(k).dot(x) <= f(k)) ? 1.0 : -1.0;
            p = k;
            np = sgn * E.row(k).transpose();
            cp = sgn * f(k);
            p_eq = true;
        }
        if (p < 0) {
            double worst = feas_tol;
            for (int k = 0; k < mi; ++k) {
                double viol = A.row(k).dot(x) - b(k);
                if (viol > worst) {
                    worst = viol;
                    p = me + k;
                }
            }
            if (p < 0) {
                out.feasible = true;
                out.x = x;
                return out;
            }
            np = -A.row(p - me).transpose();
            cp = -b(p - me);
        }

        Vec uplus(u.size() + 1);
        uplus.head(u.size()) = u;
        uplus(u.size()) = 0;
        for (int inner = 0;; ++inner) {
            if (inner > 4 * (me + mi) + 50) {
                out.converged = false;
                out.x = x;
                return out;
            }
            const int k = static_cast<int>(active.size());
            Vec z = np;
            Vec r(k);
            if (k > 0) {
                Mat N(n, k);
                for (int j = 0; j < k; ++j) N.col(j) = active[j].normal;
                Mat G = N.transpose() * N;
                r = G.completeOrthogonalDecomposition().solve(N.transpose() * np);
                z = np - N * r;
            }
            double sp = np.dot(x) - cp;
            double t1 = std::numeric_limits<double>::infinity();
            int drop = -1;
            for (int j = 0; j < k; ++j) {
                if (active[j].equality || r(j) <= eps) continue;
                double ratio = uplus(j) / r(j);
                if (ratio < t1) {
                    t1 = ratio;
                    drop = j;
                }
            }
            // A normal nearly in the span of the active set gives no usable
            // primal direction; treating it as one cycles on degenerate input.
            const bool has_dir = z.norm() > 1e-9 * np.norm() && z.dot(np) > 0;
            if (!has_dir && p_eq && std::abs(sp) <= feas_tol) {
                // Equality already implied by the active set.
                eq_done[p] = 1;
                break;
            }
            double t2 = has_dir ? -sp / z.dot(np) : std::numeric_limits<double>::infinity();
            if (t2 < 0) t2 = 0;
            double t = std::min(t1, t2);
            if (!std::isfinite(t)) {
                out.feasible = false;
                out.x = x;
                return out;
            }
            if (has_dir) x += t * z;
            uplus.head(k) -= t * r;
            uplus(k) += t;
            if (has_dir && t2 <= t1) {
                active.push_back({p, np, cp, p_eq});
                if (p_eq) eq_done[p] = 1;
                u = uplus;
                break;
            }
            active.erase(active.begin() + drop);
            Vec shrunk(uplus.size() - 1);
            for (int j = 0, w = 0; j < uplus.size(); ++j)
                if (j != drop) shrunk(w++) = uplus(j);
            uplus = shrunk;
            u = uplus.head(uplus.size() - 1);
        }
    }
    out.converged = false;
    out.x = x;
    return out;
}

MinNormResult min_norm_point(const Mat& P) {
    const int m = static_cast<int>(P.cols());
    MinNormResult out;
    out.weights = Vec::Zero(m);
    if (m == 0) throw std::invalid_argument("min_norm_point: empty point set");

    double scale = 0;
    int start = 0;
    for (int j = 0; j < m; ++j) {
        scale = std::max(scale, P.col(j).squaredNorm());
        if (P.col(j).squaredNorm() < P.col(start).squaredNorm()) start = j;
    }
    scale = std::max(scale, 1e-300);

    std::vector<int> S{start};
    Vec w = Vec::Ones(1);
    Vec x = P.col(start);

    for (int major = 0; major < 50 * m + 100; ++major) {
        int j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            double v = x.dot(P.col(i));
            if (v < best) {
                best = v;
                j = i;
            }
        }
        if (x.squaredNorm() - best <= 1e-12 * scale ||
            std::find(S.begin(), S.end(), j) != S.end()) {
            for (std::size_t a = 0; a < S.size(); ++a) out.weights(S[a]) = w(a);
            out.point = x;
            return out;
        }
        S.push_back(j);
        Vec w2(w.size() + 1);
        w2.head(w.size()) = w;
        w2(w.size()) = 0;
        w = w2;

        for (int minor = 0; minor < 10 * m + 10; ++minor) {
            const int k = static_cast<int>(S.size());
            Mat Q(P.rows(), k);
            for (int a = 0; a < k; ++a) Q.col(a) = P.col(S[a]);
            // Affine minimiser: [Q^T Q 1; 1^T 0] [alpha; mu] = [0; 1]
            Mat K = Mat::Zero(k + 1, k + 1);
            K.topLeftCorner(k, k) = Q.transpose() * Q;
            K.block(0, k, k, 1).setOnes();
            K.block(k, 0, 1, k).setOnes();
            Vec rhs = Vec::Zero(k + 1);
            rhs(k) = 1;
            Vec sol = K.completeOrthogonalDecomposition().solve(rhs);
            Vec alpha = sol.head(k);
            if ((alpha.array() > 1e-14).all()) {
                w = alpha;
                break;
            }
            double theta = 1.0;
            for (int a = 0; a < k; ++a)
                if (alpha(a) <= 1e-14) theta = std::min(theta, w(a) / (w(a) - alpha(a)));
            w = w + theta * (alpha - w);
            std::vector<int> S2;
            std::vector<double> w3;
            for (int a = 0; a < k; ++a)
                if (w(a) > 1e-14) {
                    S2.push_back(S[a]);
                    w3.push_back(w(a));
                }
            S = S2;
            w = Eigen::Map<Vec>(w3.data(), static_cast<Eigen::Index>(w3.size()));
            w /= w.sum();
        }
        x = Vec::Zero(P.rows());
        for (std::size_t a = 0; a < S.size(); ++a) x += w(a) * P.col(S[a]);
    }
    out.converged = false;
    for (std::size_t a = 0; a < S.size(); ++a) out.weights(S[a]) = w(a);
    out.point = x;
    return out;
}

Mat column_basis(const Mat& M, double rel_tol) {
    if (M.cols() == 0 || M.rows() == 0) return Mat(M.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    double top = s.size() ? s(0) : 0;
    int r = 0;
    while (r < s.size() && s(r) > rel_tol * std::max(top, 1e-300)) ++r;
    if (top == 0) r = 0;
    return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& M, double rel_tol) {
    const int n = static_cast<int>(M.cols());
    if (M.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double top = s.size() ? s(0) : 0;
    int r = 0;
    while (r < s.size() && s(r) > rel_tol * std::max(top, 1e-300)) ++r;
    if (top == 0) r = 0;
    return svd.matrixV().rightCols(n - r);
}

int numeric_rank(const Mat& M, double rel_tol) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& s = svd.singularValues();
    if (s(0) == 0) return 0;
    int r = 0;
    while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<RVec>& rows, int cols) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][c];
        for (int j = c; j < cols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            Rational m = rows[i][c];
            for (int j = c; j < cols; ++j) rows[i][j] -= m * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int exact_rank(std::vector<RVec> rows, int cols) {
    return static_cast<int>(rref(rows, cols).size());
}

std::vector<RVec> exact_null_space(std::vector<RVec> rows, int cols) {
    auto pivots = rref(rows, cols);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<RVec> basis;
    for (int fcol = 0; fcol < cols; ++fcol) {
        if (is_pivot[fcol]) continue;
        RVec v(cols, Rational(0));
        v[fcol] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][fcol];
        basis.push_back(v);
    }
    return basis;
}

} // namespace scribe
