#pragma once

#include <map>

#include "hoeffding/decomposition.hpp"

namespace hoeffding {

struct SubsetIndices {
  double structural = 0.0;        // S^U: variance of the component
  double correlative = 0.0;       // S^C: covariance with uncomparables
  double pure_interaction = 0.0;  // S: Sobol' share under the product law
  double pure_normalized = 0.0;   // S / V[G(X)] (display convenience)
  double dependence = 0.0;        // S^D: oblique-vs-orthogonal gap
};

struct SensitivityReport {
  std::vector<SubsetMask> order;
  std::map<SubsetMask, SubsetIndices> per_subset;
  double model_variance = 0.0;
  double sum_structural = 0.0;
  double sum_correlative = 0.0;
  // Largest deviation between the direct definitions and the
  // alternating-sum formulas, across subsets.
  double crosscheck_correlative = 0.0;
  double crosscheck_structural = 0.0;
  // The oblique-orthogonal gap should be centered; surfaced as a warning
  // rather than silently picking a variance or second-moment form.
  double max_dependence_center_gap = 0.0;
  bool dependence_centered = true;
};

// S_A^U = V[G_A].
double structural_index(const Decomposition& dec, const Vector& p,
                        SubsetMask a);

// S_A^C = Σ_{B uncomparable with A} Cov(G_A, G_B).
double correlative_index(const Decomposition& dec, const Vector& p, int d,
                         SubsetMask a);

// Alternating-sum forms of the two variance contributions, used as
// cross-checks of the direct definitions:
//   S_A^C = Σ_{B⊆A} (−1)^{|A|−|B|} Cov(M_B[G], (I−M_A)[G])
//   S_A^U = Σ_{B⊆A} (−1)^{|A|−|B|} Cov(M_B[G], M_A[G])
double correlative_index_projection_form(const Decomposition& dec,
                                         const Vector& p, const Vector& g,
                                         SubsetMask a);
double structural_index_projection_form(const Decomposition& dec,
                                        const Vector& p, SubsetMask a);

// Pure interaction effect: the Sobol' index of the model under the
// independent copy of the law, rescaled by V[G(X)]. The model must be
// supplied on the full grid; throws degenerate_tilde when the model is
// constant on the product support.
std::map<SubsetMask, double> pure_interaction_all(const JointPmf& pmf,
                                                  const Vector& model_grid);
double pure_interaction(const JointPmf& pmf, const Vector& model_grid,
                        SubsetMask a);

// S_A^D = E[(Q_A G − P_A G)²]: squared weighted norm of the gap between
// the component and the orthogonal projection onto V_A. Zero for every A
// iff the inputs are mutually independent.
double dependence_effect(const Decomposition& dec,
                         const ComponentBasisSet& bases,
                         const SupportAtoms& support, SubsetMask a);

// All four families plus the variance-identity and cross-check metadata.
SensitivityReport variance_report(const JointPmf& pmf,
                                  const Vector& model_grid,
                                  double tol = kDefaultTol);

// Per-subset attribution of one evaluation: G(x) = Σ_A G_A(x_A), exact at
// every supported cell. Coordinates are 0-based level indices.
std::map<SubsetMask, double> evaluation_explanation(
    const Decomposition& dec, const SupportAtoms& support,
    const std::vector<int>& cell_coords);

}  // namespace hoeffding
