#include "hoeffding/decomposition.hpp"

#include <cmath>
#include <limits>

#include "hoeffding/errors.hpp"

namespace hoeffding {

double weighted_mean(const Vector& p, const Vector& v) { return p.dot(v); }

double weighted_covariance(const Vector& p, const Vector& u,
                           const Vector& v) {
  return p.dot(u.cwiseProduct(v)) - p.dot(u) * p.dot(v);
}

double weighted_variance(const Vector& p, const Vector& v) {
  return weighted_covariance(p, v, v);
}

double weighted_norm(const Vector& p, const Vector& v) {
  return std::sqrt(p.dot(v.cwiseProduct(v)));
}

const WeightedBasis& ComponentBasisSet::basis(SubsetMask a) const {
  auto it = per_subset.find(a);
  if (it == per_subset.end())
    fail(errc::missing_subset_key,
         "no component basis for subset " + subset_label(a));
  return it->second;
}

Index ComponentBasisSet::dim(SubsetMask a) const {
  return basis(a).dim();
}

Index ComponentBasisSet::total_dim() const {
  Index total = 0;
  for (const auto& [mask, basis] : per_subset) total += basis.dim();
  return total;
}

ComponentBasisSet build_component_subspaces(const SupportAtoms& support,
                                            double tol) {
  const int n = support.n();
  ComponentBasisSet set;
  set.order = enumerate_subsets(support.d());

  for (SubsetMask a : set.order) {
    if (a == 0) {
      WeightedBasis constants;
      constants.subset = 0;
      constants.columns = Matrix::Ones(n, 1);
      set.per_subset.emplace(a, std::move(constants));
      continue;
    }
    const WeightedBasis ambient = marginal_space_basis(support, a);

    Index lower_dim = 0;
    for (SubsetMask b : subsets_of(a))
      if (b != a) lower_dim += set.per_subset.at(b).dim();
    Matrix stacked(n, lower_dim);
    Index col = 0;
    for (SubsetMask b : subsets_of(a)) {
      if (b == a) continue;
      const Matrix& cols = set.per_subset.at(b).columns;
      stacked.middleCols(col, cols.cols()) = cols;
      col += cols.cols();
    }
    // The lower components are orthonormal within each V_B but oblique
    // across subsets, so orthonormalize the stack before projecting.
    const WeightedBasis lower =
        weighted_orthonormalize(stacked, support.p, tol);
    const Matrix residual =
        ambient.columns -
        lower.columns * (lower.columns.transpose() * support.p.asDiagonal() *
                         ambient.columns);
    set.per_subset.emplace(a, weighted_orthonormalize(residual, support.p,
                                                      tol, a,
                                                      /*rank_scale=*/1.0));
  }

  if (set.total_dim() != n)
    fail(errc::dimension_mismatch,
         "component dimensions sum to " + std::to_string(set.total_dim()) +
             " but the support has " + std::to_string(n) +
             " atoms; admissibility or tolerance breakdown");
  return set;
}

const Vector& Decomposition::component(SubsetMask a) const {
  auto it = components.find(a);
  if (it == components.end())
    fail(errc::missing_subset_key,
         "no component for subset " + subset_label(a));
  return it->second;
}

Decomposition decompose(const SupportAtoms& support,
                        const ComponentBasisSet& bases, const Vector& g,
                        double tol) {
  const int n = support.n();
  if (g.size() != n)
    fail(errc::bad_input, "model vector length does not match atom count");
  if (!g.allFinite())
    fail(errc::bad_input, "model values must be finite on all atoms");

  Matrix stacked(n, n);
  Index col = 0;
  for (SubsetMask a : bases.order) {
    const Matrix& cols = bases.basis(a).columns;
    stacked.middleCols(col, cols.cols()) = cols;
    col += cols.cols();
  }

  // Solve in the weighted geometry: diag(√p)·Φ has orthonormal column
  // blocks, so its conditioning reflects only the angles between the
  // component subspaces.
  const Vector sqrt_p = support.p.array().sqrt();
  const Matrix scaled = sqrt_p.asDiagonal() * stacked;
  const Vector rhs = sqrt_p.cwiseProduct(g);

  Vector coeffs, sv;
  constexpr auto kFlags = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (n <= 512) {
    Eigen::JacobiSVD<Matrix> svd(scaled, kFlags);
    sv = svd.singularValues();
    coeffs = svd.solve(rhs);
  } else {
    Eigen::BDCSVD<Matrix> svd(scaled, kFlags);
    sv = svd.singularValues();
    coeffs = svd.solve(rhs);
  }
  const double cond = sv[sv.size() - 1] > 0.0
                          ? sv[0] / sv[sv.size() - 1]
                          : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    fail(errc::singular_system,
         "stacked component system is numerically singular (condition "
         "number " +
             std::to_string(cond) + ")");

  Decomposition dec;
  dec.order = bases.order;
  dec.condition_number = cond;
  dec.total_variance = weighted_variance(support.p, g);

  Vector sum = Vector::Zero(n);
  col = 0;
  for (SubsetMask a : bases.order) {
    const Matrix& cols = bases.basis(a).columns;
    const Vector ca = coeffs.segment(col, cols.cols());
    Vector component = cols.cols() > 0 ? Vector(cols * ca) : Vector::Zero(n);
    sum += component;
    dec.coefficients.emplace(a, ca);
    dec.components.emplace(a, std::move(component));
    col += cols.cols();
  }
  const double gnorm = weighted_norm(support.p, g);
  dec.reconstruction_residual =
      gnorm > 0.0 ? weighted_norm(support.p, sum - g) / gnorm
                  : weighted_norm(support.p, sum - g);
  if (dec.reconstruction_residual > 1e3 * tol * std::max(1.0, cond))
    fail(errc::singular_system,
         "reconstruction residual " +
             std::to_string(dec.reconstruction_residual) +
             " exceeds the tolerance budget");
  return dec;
}

Vector oblique_m(const Decomposition& dec, SubsetMask a) {
  Vector sum;
  for (SubsetMask b : subsets_of(a)) {
    const Vector& gb = dec.component(b);
    if (sum.size() == 0)
      sum = gb;
    else
      sum += gb;
  }
  return sum;
}

Vector conditional_expectation(const SupportAtoms& support, const Vector& g,
                               SubsetMask a) {
  const AtomPartition part = partition_by(support, a);
  Vector out(support.n());
  for (const auto& block : part.blocks) {
    double mass = 0.0, acc = 0.0;
    for (int atom : block) {
      mass += support.p[atom];
      acc += support.p[atom] * g[atom];
    }
    const double mean = acc / mass;
    for (int atom : block) out[atom] = mean;
  }
  return out;
}

Vector orthogonal_p(const ComponentBasisSet& bases, const Vector& p,
                    const Vector& g, SubsetMask a) {
  const WeightedBasis& basis = bases.basis(a);
  if (basis.dim() == 0) return Vector::Zero(g.size());
  return basis.columns * (basis.columns.transpose() * p.asDiagonal() * g);
}

double verify_mobius(const Decomposition& dec, const SupportAtoms& support) {
  std::map<SubsetMask, Vector> partial_sums;
  for (SubsetMask a : dec.order) partial_sums.emplace(a, oblique_m(dec, a));

  double worst = 0.0;
  for (SubsetMask a : dec.order) {
    const Vector reconstructed = mobius_alternating_sum(partial_sums, a);
    worst = std::max(
        worst, weighted_norm(support.p, reconstructed - dec.component(a)));
  }
  return worst;
}

Decomposition hoeffding_classical(const SupportAtoms& support,
                                  const Vector& g) {
  if (!is_product_form(support))
    fail(errc::not_product_form,
         "classical expansion requires a product-form law");

  std::map<SubsetMask, Vector> cond_means;
  const auto order = enumerate_subsets(support.d());
  for (SubsetMask a : order)
    cond_means.emplace(a, conditional_expectation(support, g, a));

  Decomposition dec;
  dec.order = order;
  dec.total_variance = weighted_variance(support.p, g);
  dec.condition_number = 1.0;
  Vector sum = Vector::Zero(support.n());
  for (SubsetMask a : order) {
    Vector component = mobius_alternating_sum(cond_means, a);
    sum += component;
    dec.components.emplace(a, std::move(component));
  }
  const double gnorm = weighted_norm(support.p, g);
  dec.reconstruction_residual =
      gnorm > 0.0 ? weighted_norm(support.p, sum - g) / gnorm : 0.0;
  return dec;
}

}  // namespace hoeffding
