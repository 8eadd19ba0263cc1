#include "hoeffding/indices.hpp"

#include <cmath>

#include "hoeffding/errors.hpp"

namespace hoeffding {

double structural_index(const Decomposition& dec, const Vector& p,
                        SubsetMask a) {
  return weighted_variance(p, dec.component(a));
}

double correlative_index(const Decomposition& dec, const Vector& p, int d,
                         SubsetMask a) {
  double acc = 0.0;
  const Vector& ga = dec.component(a);
  for (SubsetMask b : uncomparables(a, d))
    acc += weighted_covariance(p, ga, dec.component(b));
  return acc;
}

double correlative_index_projection_form(const Decomposition& dec,
                                         const Vector& p, const Vector& g,
                                         SubsetMask a) {
  const Vector rest = g - oblique_m(dec, a);
  double acc = 0.0;
  const int ca = cardinality(a);
  for (SubsetMask b : subsets_of(a)) {
    const double sign = ((ca - cardinality(b)) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * weighted_covariance(p, oblique_m(dec, b), rest);
  }
  return acc;
}

// Uses Cov(M_B[G], M_A[G]) inside the alternating sum. The cumulative
// identity behind it is Cov(M_A[G], G) = Σ_{B⊆A} (S_B^U + S_B^C), which
// Möbius inversion combines with the correlative projection form.
double structural_index_projection_form(const Decomposition& dec,
                                        const Vector& p, SubsetMask a) {
  const Vector ma = oblique_m(dec, a);
  double acc = 0.0;
  const int ca = cardinality(a);
  for (SubsetMask b : subsets_of(a)) {
    const double sign = ((ca - cardinality(b)) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * weighted_covariance(p, oblique_m(dec, b), ma);
  }
  return acc;
}

std::map<SubsetMask, double> pure_interaction_all(const JointPmf& pmf,
                                                  const Vector& model_grid) {
  if (model_grid.size() != pmf.grid_size())
    fail(errc::bad_input, "model must be supplied on the full grid");

  const SupportAtoms support = validate_pmf(pmf);
  Vector g(support.n());
  for (int atom = 0; atom < support.n(); ++atom)
    g[atom] = model_grid[support.cells[atom]];
  const double model_variance = weighted_variance(support.p, g);

  const JointPmf tilde_pmf = independent_copy(pmf);
  const SupportAtoms tilde = validate_pmf(tilde_pmf);
  Vector g_tilde(tilde.n());
  for (int atom = 0; atom < tilde.n(); ++atom)
    g_tilde[atom] = model_grid[tilde.cells[atom]];

  const double tilde_variance = weighted_variance(tilde.p, g_tilde);
  if (tilde_variance <= 0.0)
    fail(errc::degenerate_tilde,
         "model is constant under the independent copy of the law; pure "
         "interaction effects are undefined");

  const Decomposition dec = hoeffding_classical(tilde, g_tilde);
  std::map<SubsetMask, double> out;
  for (SubsetMask a : dec.order)
    out[a] = weighted_variance(tilde.p, dec.component(a)) / tilde_variance *
             model_variance;
  return out;
}

double pure_interaction(const JointPmf& pmf, const Vector& model_grid,
                        SubsetMask a) {
  const auto all = pure_interaction_all(pmf, model_grid);
  auto it = all.find(a);
  if (it == all.end())
    fail(errc::missing_subset_key,
         "subset " + subset_label(a) + " outside the lattice");
  return it->second;
}

double dependence_effect(const Decomposition& dec,
                         const ComponentBasisSet& bases,
                         const SupportAtoms& support, SubsetMask a) {
  // Q_A(G) is the stored component; P_A(G) projects the full model, which
  // by hierarchical orthogonality reduces to projecting Σ_B G_B.
  Vector g = Vector::Zero(support.n());
  for (SubsetMask b : dec.order) g += dec.component(b);
  const Vector gap = dec.component(a) - orthogonal_p(bases, support.p, g, a);
  return support.p.dot(gap.cwiseProduct(gap));
}

SensitivityReport variance_report(const JointPmf& pmf,
                                  const Vector& model_grid, double tol) {
  const SupportAtoms support = validate_pmf(pmf);
  if (model_grid.size() != pmf.grid_size())
    fail(errc::bad_input, "model must be supplied on the full grid");
  Vector g(support.n());
  for (int atom = 0; atom < support.n(); ++atom)
    g[atom] = model_grid[support.cells[atom]];

  const ComponentBasisSet bases = build_component_subspaces(support, tol);
  const Decomposition dec = decompose(support, bases, g, tol);
  // A model that is constant under the independent copy is constant on
  // the original support as well, so the whole report is zero; only the
  // standalone pure-interaction query treats that as an error.
  std::map<SubsetMask, double> pure;
  try {
    pure = pure_interaction_all(pmf, model_grid);
  } catch (const Error& e) {
    if (e.code() != errc::degenerate_tilde ||
        dec.total_variance > 0.0)
      throw;
    for (SubsetMask a : dec.order) pure[a] = 0.0;
  }
  const int d = support.d();

  SensitivityReport report;
  report.order = dec.order;
  report.model_variance = dec.total_variance;

  for (SubsetMask a : dec.order) {
    SubsetIndices ix;
    ix.structural = structural_index(dec, support.p, a);
    ix.correlative = correlative_index(dec, support.p, d, a);
    ix.pure_interaction = pure.at(a);
    ix.pure_normalized = report.model_variance > 0.0
                             ? ix.pure_interaction / report.model_variance
                             : 0.0;
    const Vector gap =
        dec.component(a) - orthogonal_p(bases, support.p, g, a);
    ix.dependence = support.p.dot(gap.cwiseProduct(gap));

    report.sum_structural += ix.structural;
    report.sum_correlative += ix.correlative;
    report.crosscheck_correlative = std::max(
        report.crosscheck_correlative,
        std::abs(ix.correlative -
                 correlative_index_projection_form(dec, support.p, g, a)));
    report.crosscheck_structural = std::max(
        report.crosscheck_structural,
        std::abs(ix.structural -
                 structural_index_projection_form(dec, support.p, a)));
    report.max_dependence_center_gap =
        std::max(report.max_dependence_center_gap,
                 std::abs(weighted_mean(support.p, gap)));

    report.per_subset.emplace(a, ix);
  }
  report.dependence_centered = report.max_dependence_center_gap <= 1e-10;
  return report;
}

std::map<SubsetMask, double> evaluation_explanation(
    const Decomposition& dec, const SupportAtoms& support,
    const std::vector<int>& cell_coords) {
  const int atom = support.atom_of_cell(cell_coords);
  if (atom < 0)
    fail(errc::cell_not_in_support,
         "cell is outside the support of the law");
  std::map<SubsetMask, double> out;
  for (SubsetMask a : dec.order) out[a] = dec.component(a)[atom];
  return out;
}

}  // namespace hoeffding
