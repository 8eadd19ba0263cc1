#pragma once

#include <vector>

#include "hoeffding/distribution.hpp"
#include "hoeffding/lattice.hpp"
#include "hoeffding/types.hpp"

namespace hoeffding {

// Columns are orthonormal under the probability-weighted inner product:
// columnsᵀ · diag(p) · columns = I. An empty matrix (k = 0) is the zero
// subspace.
struct WeightedBasis {
  SubsetMask subset = 0;
  Matrix columns;  // n × k

  Index dim() const { return columns.cols(); }
};

// Basis of the span of the given vectors, orthonormal under diag(p).
// Rank is decided by the singular-value threshold tol·max(σ_max,
// rank_scale); column order follows the (deterministic) descending
// singular values. Callers projecting residuals out of unit-norm bases
// pass rank_scale = 1 so that a numerically-zero residual has rank zero
// instead of being full rank relative to its own noise.
WeightedBasis weighted_orthonormalize(const Matrix& vectors, const Vector& p,
                                      double tol, SubsetMask subset = 0,
                                      double rank_scale = 0.0);

// Basis of the space of square-integrable functions of x_A: normalized
// indicator columns of the blocks of partition_by(a). Exactly orthonormal
// by construction.
WeightedBasis marginal_space_basis(const SupportAtoms& support, SubsetMask a);

// Cosine of the minimal angle between the spans: σ_max(B_hᵀ·diag(p)·B_k),
// 0 when either basis is empty. The probabilistic analogue of maximal
// correlation.
double dixmier_angle(const WeightedBasis& h, const WeightedBasis& k,
                     const Vector& p);

// Cosine of the angle between the spaces generated by x_A and x_B after
// removing their intersection, realized analytically as the space
// generated by x_{A∩B} (valid under non-perfect functional dependence,
// which is verified for the pair unless assume_assumption1 is set).
// Returns 0 when either quotient is zero-dimensional, in particular for
// nested subsets. The analogue of maximal partial correlation.
double friedrichs_angle(const SupportAtoms& support, SubsetMask a,
                        SubsetMask b, double tol = kDefaultTol,
                        bool assume_assumption1 = false);

// Subset-indexed symmetric matrix with unit diagonal and
// −friedrichs_angle(A,B) off the diagonal, in canonical subset order.
// Identity iff the inputs are mutually independent.
struct FeshchenkoMatrix {
  int d = 0;
  std::vector<SubsetMask> order;
  Matrix entries;  // 2^d × 2^d
  double min_eigenvalue = 0.0;

  double entry(SubsetMask a, SubsetMask b) const;
};

FeshchenkoMatrix feshchenko_matrix(const SupportAtoms& support,
                                   double tol = kDefaultTol,
                                   bool assume_assumption1 = false);

struct Assumption2Report {
  bool pass = false;
  double min_eigenvalue = 0.0;
  double eps = kDefaultEpsPd;
};

// Non-degenerate stochastic dependence: the Feshchenko matrix is positive
// definite (smallest eigenvalue above eps).
Assumption2Report check_assumption2(const FeshchenkoMatrix& delta,
                                    double eps = kDefaultEpsPd);

}  // namespace hoeffding
