#pragma once

#include "scribe/types.hpp"

#include <optional>
#include <vector>

namespace scribe {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<T> x;
    T value{};
};

// maximize c.x  subject to  A x <= b,  E x = f,  x free.
// Dense two-phase simplex with Bland's rule; exact when T is Rational.
template <class T>
LpResult<T> solve_lp(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
                     const std::vector<std::vector<T>>& E, const std::vector<T>& f,
                     const std::vector<T>& c);

LpResult<double> solve_lp(const Mat& A, const Vec& b, const Mat& E, const Vec& f, const Vec& c);

struct QpResult {
    bool feasible = false;
    bool converged = true;
    Vec x;
};

// minimize |x|^2  subject to  E x = f,  A x <= b.
// Dual active-set method (Goldfarb-Idnani) specialised to the identity Hessian.
QpResult min_norm_qp(const Mat& E, const Vec& f, const Mat& A, const Vec& b);

struct MinNormResult {
    Vec point;
    Vec weights; // convex weights over the input columns
    bool converged = true;
};

// Minimum-norm point of conv(columns of P), Wolfe's algorithm.
MinNormResult min_norm_point(const Mat& P);

// Orthonormal basis (columns) of the column span / null space, rank cut at
// rel_tol times the largest singular value.
Mat column_basis(const Mat& M, double rel_tol = 1e-10);
Mat null_space(const Mat& M, double rel_tol = 1e-10);
int numeric_rank(const Mat& M, double rel_tol = 1e-10);

// Exact rank and null space by Gaussian elimination over the rationals.
int exact_rank(std::vector<RVec> rows, int cols);
std::vector<RVec> exact_null_space(std::vector<RVec> rows, int cols);

} // namespace scribe
