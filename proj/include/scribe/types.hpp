#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scribe {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rational = mpq_class;
using RVec = std::vector<Rational>;

// Vertex sets are bitmasks over vertex indices; desk-scale polytopes stay
// below 64 vertices.
using Mask = std::uint64_t;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kMaxVertices = 64;

enum class Verdict { False = 0, True = 1, Indeterminate = 2 };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "indeterminate";
    }
}

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LowerDimensionalError : public GeometryError {
public:
    LowerDimensionalError(int affine_rank, int expected)
        : GeometryError("input is lower-dimensional: affine rank " + std::to_string(affine_rank) +
                        " < " + std::to_string(expected)),
          rank(affine_rank) {}
    int rank;
};

inline Mask bit(int i) { return Mask{1} << i; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }

std::vector<int> indices(Mask m);
Mask to_mask(const std::vector<int>& idx);

double to_double(const Rational& q);

} // namespace scribe
