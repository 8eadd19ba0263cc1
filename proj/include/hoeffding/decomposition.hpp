#pragma once

#include <map>
#include <vector>

#include "hoeffding/hilbert.hpp"

namespace hoeffding {

// One orthonormal basis per component subspace V_A. V_∅ is the constants;
// each V_A is the orthogonal complement, inside the space generated by
// x_A, of the sum of all lower components. Dimensions add up to the atom
// count (direct sum of the whole ambient space).
struct ComponentBasisSet {
  std::vector<SubsetMask> order;
  std::map<SubsetMask, WeightedBasis> per_subset;

  const WeightedBasis& basis(SubsetMask a) const;
  Index dim(SubsetMask a) const;
  Index total_dim() const;
};

// Inductive construction over the subset lattice in cardinality order.
// Zero-dimensional components are permitted (support-deficient grids).
// Throws dimension_mismatch when the dimensions do not sum to n, which
// signals an admissibility or tolerance breakdown.
ComponentBasisSet build_component_subspaces(const SupportAtoms& support,
                                            double tol = kDefaultTol);

// The unique expansion G = Σ_A G_A with G_A in V_A, together with the
// coefficients of each G_A in the V_A basis.
struct Decomposition {
  std::vector<SubsetMask> order;
  std::map<SubsetMask, Vector> components;    // value vectors on atoms
  std::map<SubsetMask, Vector> coefficients;  // length dim(V_A)
  double total_variance = 0.0;
  double condition_number = 0.0;         // of the stacked weighted system
  double reconstruction_residual = 0.0;  // ‖ΣG_A − G‖_P / ‖G‖_P

  const Vector& component(SubsetMask a) const;
};

// Solves the square stacked-basis system for the coefficients; exact up
// to conditioning by uniqueness of the direct-sum representation. Throws
// singular_system when the weighted condition number exceeds 1e12.
Decomposition decompose(const SupportAtoms& support,
                        const ComponentBasisSet& bases, const Vector& g,
                        double tol = kDefaultTol);

// Partial sum Σ_{B ⊆ a} G_B: the projection onto the space generated by
// x_a parallel to the span of the remaining components.
Vector oblique_m(const Decomposition& dec, SubsetMask a);

// Orthogonal projection onto the space generated by x_a: blockwise
// weighted averages.
Vector conditional_expectation(const SupportAtoms& support, const Vector& g,
                               SubsetMask a);

// Orthogonal projection onto V_a.
Vector orthogonal_p(const ComponentBasisSet& bases, const Vector& p,
                    const Vector& g, SubsetMask a);

// Max weighted-norm residual of the inclusion–exclusion identity
// G_A = Σ_{B⊆A} (−1)^{|A|−|B|} M_B[G] over all subsets.
double verify_mobius(const Decomposition& dec, const SupportAtoms& support);

// Classical expansion for mutually independent inputs:
// G_A = Σ_{B⊆A} (−1)^{|A|−|B|} E_B[G]. Requires a product-form law and is
// the independence oracle for the general path.
Decomposition hoeffding_classical(const SupportAtoms& support,
                                  const Vector& g);

// Weighted moments.
double weighted_mean(const Vector& p, const Vector& v);
double weighted_covariance(const Vector& p, const Vector& u, const Vector& v);
double weighted_variance(const Vector& p, const Vector& v);
double weighted_norm(const Vector& p, const Vector& v);

}  // namespace hoeffding
