#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <optional>

#include "shadowlab/rational.hpp"

namespace shadowlab {

using RVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact inner product; throws DimensionMismatch on unequal lengths.
Rat dot(const RVec& a, const RVec& b);

/// Solves M x = rhs exactly by Gaussian elimination, choosing the first row
/// with a nonzero pivot (no numerical pivoting is needed in exact
/// arithmetic, and the fixed choice keeps runs deterministic).
/// Returns nullopt when M is rank-deficient.
std::optional<RVec> solve_linear(const RMat& m, const RVec& rhs);

/// Exact inverse; nullopt when singular.
std::optional<RMat> invert(const RMat& m);

/// Rank by exact elimination.
int rank(const RMat& m);

RMat identity(int n);
RVec unit_vector(int n, int i);
RVec zero_vector(int n);

Rat linf_norm(const RVec& v);
Rat l1_norm(const RVec& v);

/// True when b == t * a for some rational t > 0.
bool positive_multiple(const RVec& a, const RVec& b);

}  // namespace shadowlab
