#pragma once

#include "hoeffding/distribution.hpp"
#include "hoeffding/types.hpp"

namespace hoeffding {

// Two Bernoulli inputs parameterized by the marginal success
// probabilities and the cross moment rho = E[X₁X₂]. The induced cell
// weights are p00 = 1−q1−q2+rho, p01 = q2−rho, p10 = q1−rho, p11 = rho.
struct BernoulliPair {
  double q1 = 0.5;
  double q2 = 0.5;
  double rho = 0.25;
};

// 2×2 dense law in row-major order (x₁ slow, x₂ fast). Throws
// inadmissible_rho when a cell weight turns negative.
JointPmf bernoulli_pmf(const BernoulliPair& pair);

// Closed-form decomposition over the four-point support: unit-norm
// vectors v_∅, v₁, v₂, v₁₂ with the nine orthogonality/normalization
// constraints, solved in a fixed cascade, plus the expansion
// G = e·v_∅ + α·v₁ + β·v₂ + δ·v₁₂. Signs are fixed by making the last
// nonzero entry of each vector positive. Used as an independent oracle
// for the general pipeline; requires all four weights strictly positive.
struct BernoulliDecomposition {
  Eigen::Vector4d v_empty, v1, v2, v12;
  double e = 0.0, alpha = 0.0, beta = 0.0, delta = 0.0;
  Eigen::Vector4d comp_empty, comp1, comp2, comp12;
};

BernoulliDecomposition closed_form_decomposition(const BernoulliPair& pair,
                                                 const Eigen::Vector4d& g);

}  // namespace hoeffding
