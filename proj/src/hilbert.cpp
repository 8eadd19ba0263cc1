#include "hoeffding/hilbert.hpp"

#include <cmath>

#include "hoeffding/errors.hpp"

namespace hoeffding {

namespace {

// Orthonormalizing under diag(p) is plain orthonormalization of
// diag(√p)·M. p is strictly positive on support atoms.
Matrix scale_rows(const Matrix& m, const Vector& sqrt_p) {
  return sqrt_p.asDiagonal() * m;
}

}  // namespace

WeightedBasis weighted_orthonormalize(const Matrix& vectors, const Vector& p,
                                      double tol, SubsetMask subset,
                                      double rank_scale) {
  WeightedBasis basis;
  basis.subset = subset;
  if (vectors.cols() == 0) {
    basis.columns.resize(vectors.rows(), 0);
    return basis;
  }
  if (vectors.rows() != p.size())
    fail(errc::bad_input, "weighted_orthonormalize: row/weight mismatch");

  const Vector sqrt_p = p.array().sqrt();
  Eigen::JacobiSVD<Matrix> svd(scale_rows(vectors, sqrt_p),
                               Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  if (sv.size() > 0 && sv[0] > 0.0) {
    const double cut = tol * std::max(sv[0], rank_scale);
    while (rank < sv.size() && sv[rank] > cut) ++rank;
  }
  basis.columns =
      sqrt_p.cwiseInverse().asDiagonal() * svd.matrixU().leftCols(rank);
  return basis;
}

WeightedBasis marginal_space_basis(const SupportAtoms& support, SubsetMask a) {
  const AtomPartition part = partition_by(support, a);
  WeightedBasis basis;
  basis.subset = a;
  basis.columns = Matrix::Zero(support.n(), part.block_count());
  for (int b = 0; b < part.block_count(); ++b) {
    double mass = 0.0;
    for (int atom : part.blocks[b]) mass += support.p[atom];
    const double scale = 1.0 / std::sqrt(mass);
    for (int atom : part.blocks[b]) basis.columns(atom, b) = scale;
  }
  return basis;
}

double dixmier_angle(const WeightedBasis& h, const WeightedBasis& k,
                     const Vector& p) {
  if (h.dim() == 0 || k.dim() == 0) return 0.0;
  const Matrix cross = h.columns.transpose() * p.asDiagonal() * k.columns;
  Eigen::JacobiSVD<Matrix> svd(cross);
  return svd.singularValues()[0];
}

namespace {

// Basis of span(big) ⊖ span(inter), where inter spans a subspace of big.
WeightedBasis quotient_basis(const WeightedBasis& big,
                             const WeightedBasis& inter, const Vector& p,
                             double tol) {
  const Matrix residual =
      big.columns -
      inter.columns * (inter.columns.transpose() * p.asDiagonal() *
                       big.columns);
  return weighted_orthonormalize(residual, p, tol, big.subset,
                                 /*rank_scale=*/1.0);
}

void verify_pair_assumption1(const SupportAtoms& support, SubsetMask a,
                             SubsetMask b) {
  const AtomPartition pa = partition_by(support, a);
  const AtomPartition pb = partition_by(support, b);
  if (!sigma_meet(pa, pb).same_blocks(
          partition_by(support, static_cast<SubsetMask>(a & b))))
    fail(errc::assumption1_not_verified,
         "non-perfect functional dependence fails for pair (" +
             subset_label(a) + ", " + subset_label(b) +
             "); the intersection space is not generated by x_" +
             subset_label(static_cast<SubsetMask>(a & b)));
}

}  // namespace

double friedrichs_angle(const SupportAtoms& support, SubsetMask a,
                        SubsetMask b, double tol, bool assume_assumption1) {
  if (mask_contains(a, b) || mask_contains(b, a)) return 0.0;
  if (!assume_assumption1) verify_pair_assumption1(support, a, b);

  const WeightedBasis inter =
      marginal_space_basis(support, static_cast<SubsetMask>(a & b));
  const WeightedBasis qa =
      quotient_basis(marginal_space_basis(support, a), inter, support.p, tol);
  const WeightedBasis qb =
      quotient_basis(marginal_space_basis(support, b), inter, support.p, tol);
  return dixmier_angle(qa, qb, support.p);
}

double FeshchenkoMatrix::entry(SubsetMask a, SubsetMask b) const {
  Index ia = -1, ib = -1;
  for (Index i = 0; i < static_cast<Index>(order.size()); ++i) {
    if (order[i] == a) ia = i;
    if (order[i] == b) ib = i;
  }
  if (ia < 0 || ib < 0)
    fail(errc::bad_input, "subset outside the matrix index set");
  return entries(ia, ib);
}

FeshchenkoMatrix feshchenko_matrix(const SupportAtoms& support, double tol,
                                   bool assume_assumption1) {
  const int d = support.d();
  FeshchenkoMatrix delta;
  delta.d = d;
  delta.order = enumerate_subsets(d);
  const Index size = static_cast<Index>(delta.order.size());
  delta.entries = Matrix::Identity(size, size);

  if (!assume_assumption1) {
    const Assumption1Report report = check_assumption1(support);
    if (!report.pass)
      fail(errc::assumption1_not_verified,
           "non-perfect functional dependence fails; first violating pair (" +
               subset_label(report.violations.front().a) + ", " +
               subset_label(report.violations.front().b) + ")");
  }
  for (Index i = 0; i < size; ++i)
    for (Index j = i + 1; j < size; ++j) {
      const double c = friedrichs_angle(support, delta.order[i],
                                        delta.order[j], tol,
                                        /*assume_assumption1=*/true);
      delta.entries(i, j) = -c;
      delta.entries(j, i) = -c;
    }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(delta.entries,
                                            Eigen::EigenvaluesOnly);
  delta.min_eigenvalue = eig.eigenvalues().minCoeff();
  return delta;
}

Assumption2Report check_assumption2(const FeshchenkoMatrix& delta,
                                    double eps) {
  Assumption2Report report;
  report.eps = eps;
  report.min_eigenvalue = delta.min_eigenvalue;
  report.pass = delta.min_eigenvalue > eps;
  return report;
}

}  // namespace hoeffding
