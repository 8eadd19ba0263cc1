#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hoeffding/errors.hpp"
#include "hoeffding/hilbert.hpp"
#include "oracles.hpp"

using namespace hoeffding;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = unif(rng);
  return m;
}

Vector random_weights(std::mt19937_64& rng, Index n) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Vector p(n);
  for (Index i = 0; i < n; ++i) p[i] = unif(rng);
  return p / p.sum();
}

double gram_identity_gap(const WeightedBasis& basis, const Vector& p) {
  const Matrix gram =
      basis.columns.transpose() * p.asDiagonal() * basis.columns;
  return (gram - Matrix::Identity(basis.dim(), basis.dim()))
      .lpNorm<Eigen::Infinity>();
}

}  // namespace

TEST_CASE("weighted orthonormalization") {
  std::mt19937_64 rng(101);
  const Vector p = random_weights(rng, 6);

  SUBCASE("the constant vector has unit weighted norm") {
    const WeightedBasis basis =
        weighted_orthonormalize(Matrix::Ones(6, 1), p, 1e-10);
    REQUIRE(basis.dim() == 1);
    CHECK(gram_identity_gap(basis, p) < 1e-12);
    // a single constant column stays constant
    CHECK((basis.columns.col(0).array() - basis.columns(0, 0)).abs().maxCoeff() <
          1e-12);
  }
  SUBCASE("duplicated columns collapse the span") {
    Matrix m(6, 2);
    m.col(0) = random_matrix(rng, 6, 1);
    m.col(1) = m.col(0);
    CHECK(weighted_orthonormalize(m, p, 1e-10).dim() == 1);
  }
  SUBCASE("full-rank input gives an exact weighted identity Gram") {
    const WeightedBasis basis =
        weighted_orthonormalize(random_matrix(rng, 6, 4), p, 1e-10);
    REQUIRE(basis.dim() == 4);
    CHECK(gram_identity_gap(basis, p) < 1e-12);
  }
  SUBCASE("zero input has rank zero") {
    CHECK(weighted_orthonormalize(Matrix::Zero(6, 3), p, 1e-10).dim() == 0);
  }
}

TEST_CASE("marginal space dimensions") {
  std::mt19937_64 rng(102);
  const SupportAtoms support =
      validate_pmf(oracle::random_full_pmf(rng, {2, 3}));
  CHECK(marginal_space_basis(support, 0).dim() == 1);
  CHECK(marginal_space_basis(support, 0b01).dim() == 2);
  CHECK(marginal_space_basis(support, 0b10).dim() == 3);
  CHECK(marginal_space_basis(support, 0b11).dim() == support.n());
  CHECK(gram_identity_gap(marginal_space_basis(support, 0b10), support.p) <
        1e-14);
}

TEST_CASE("Dixmier angle") {
  std::mt19937_64 rng(103);
  const Vector p = random_weights(rng, 8);

  SUBCASE("identical subspaces have cosine 1") {
    const WeightedBasis h =
        weighted_orthonormalize(random_matrix(rng, 8, 3), p, 1e-10);
    CHECK(dixmier_angle(h, h, p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("spaces sharing the constants have cosine 1") {
    const SupportAtoms support =
        validate_pmf(oracle::pmf_2x2(0.3, 0.2, 0.2, 0.3));
    const double c = dixmier_angle(marginal_space_basis(support, 0b01),
                                   marginal_space_basis(support, 0b10),
                                   support.p);
    CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("centered spaces of independent inputs have cosine 0") {
    const SupportAtoms support =
        validate_pmf(oracle::pmf_2x2(0.25, 0.25, 0.25, 0.25));
    const WeightedBasis constants = marginal_space_basis(support, 0);
    auto centered = [&](SubsetMask a) {
      const WeightedBasis ambient = marginal_space_basis(support, a);
      const Matrix residual =
          ambient.columns -
          constants.columns * (constants.columns.transpose() *
                               support.p.asDiagonal() * ambient.columns);
      return weighted_orthonormalize(residual, support.p, 1e-10, a);
    };
    CHECK(dixmier_angle(centered(0b01), centered(0b10), support.p) < 1e-12);
  }
  SUBCASE("empty bases give 0") {
    WeightedBasis empty;
    empty.columns.resize(8, 0);
    const WeightedBasis h =
        weighted_orthonormalize(random_matrix(rng, 8, 2), p, 1e-10);
    CHECK(dixmier_angle(h, empty, p) == 0.0);
  }
  SUBCASE("shrinking a subspace never increases the angle") {
    for (int round = 0; round < 25; ++round) {
      const WeightedBasis h =
          weighted_orthonormalize(random_matrix(rng, 8, 4), p, 1e-10);
      const WeightedBasis k =
          weighted_orthonormalize(random_matrix(rng, 8, 3), p, 1e-10);
      WeightedBasis smaller;
      smaller.columns = h.columns.leftCols(2);
      CHECK(dixmier_angle(smaller, k, p) <=
            dixmier_angle(h, k, p) + 1e-12);
    }
  }
}

TEST_CASE("Friedrichs angle") {
  SUBCASE("nested subsets give 0") {
    const SupportAtoms support =
        validate_pmf(oracle::pmf_2x2(0.3, 0.2, 0.2, 0.3));
    CHECK(friedrichs_angle(support, 0b01, 0b11) == 0.0);
    CHECK(friedrichs_angle(support, 0b11, 0b01) == 0.0);
    CHECK(friedrichs_angle(support, 0, 0b10) == 0.0);
  }
  SUBCASE("independent inputs give 0") {
    std::mt19937_64 rng(104);
    const SupportAtoms support =
        validate_pmf(oracle::random_product_pmf(rng, {2, 2}));
    CHECK(friedrichs_angle(support, 0b01, 0b10) < 1e-12);
  }
  SUBCASE("two-Bernoulli pair equals the absolute Pearson correlation") {
    // q1 = q2 = 0.5, rho = 0.3: (rho − q1 q2)/√(q1(1−q1)q2(1−q2)) = 0.2
    const SupportAtoms support =
        validate_pmf(oracle::pmf_2x2(0.3, 0.2, 0.2, 0.3));
    CHECK(friedrichs_angle(support, 0b01, 0b10) ==
          doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("symmetric in the pair") {
    std::mt19937_64 rng(105);
    const SupportAtoms support =
        validate_pmf(oracle::random_full_pmf(rng, {2, 2, 2}));
    for (SubsetMask a : enumerate_subsets(3))
      for (SubsetMask b : enumerate_subsets(3))
        CHECK(friedrichs_angle(support, a, b) ==
              doctest::Approx(friedrichs_angle(support, b, a))
                  .epsilon(1e-12));
  }
  SUBCASE("bounded by the Dixmier angle of the centered spaces") {
    std::mt19937_64 rng(106);
    for (int round = 0; round < 10; ++round) {
      const SupportAtoms support =
          validate_pmf(oracle::random_full_pmf(rng, {2, 2, 2}));
      for (SubsetMask a : enumerate_subsets(3)) {
        for (SubsetMask b : enumerate_subsets(3)) {
          if (mask_contains(a, b) || mask_contains(b, a)) continue;
          const double cf = friedrichs_angle(support, a, b);
          CHECK(cf >= 0.0);
          CHECK(cf <= 1.0 + 1e-12);
          const double c0 = dixmier_angle(marginal_space_basis(support, a),
                                          marginal_space_basis(support, b),
                                          support.p);
          CHECK(cf <= c0 + 1e-10);
        }
      }
    }
  }
  SUBCASE("refuses a pair that breaks non-perfect functional dependence") {
    const SupportAtoms copied =
        validate_pmf(oracle::pmf_2x2(0.5, 0.0, 0.0, 0.5));
    CHECK_THROWS_AS(friedrichs_angle(copied, 0b01, 0b10), Error);
    CHECK_NOTHROW(friedrichs_angle(copied, 0b01, 0b10, 1e-10,
                                   /*assume_assumption1=*/true));
  }
}

TEST_CASE("Feshchenko matrix") {
  SUBCASE("identity under product laws, for d up to 3") {
    std::mt19937_64 rng(107);
    for (const auto& alphabet :
         {std::vector<int>{2, 2}, std::vector<int>{3, 2},
          std::vector<int>{2, 2, 2}}) {
      const SupportAtoms support =
          validate_pmf(oracle::random_product_pmf(rng, alphabet));
      const FeshchenkoMatrix delta = feshchenko_matrix(support);
      const Index size = delta.entries.rows();
      CHECK((delta.entries - Matrix::Identity(size, size))
                .lpNorm<Eigen::Infinity>() < 1e-12);
      CHECK(delta.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("two-Bernoulli off-diagonal entry and eigenvalue") {
    const SupportAtoms support =
        validate_pmf(oracle::pmf_2x2(0.3, 0.2, 0.2, 0.3));
    const FeshchenkoMatrix delta = feshchenko_matrix(support);
    CHECK(delta.entry(0b01, 0b10) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(delta.entry(0b10, 0b01) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(delta.min_eigenvalue == doctest::Approx(0.8).epsilon(1e-12));
    // all other off-diagonal entries vanish (nested pairs)
    for (SubsetMask a : delta.order)
      for (SubsetMask b : delta.order) {
        if (a == b || (a == 0b01 && b == 0b10) || (a == 0b10 && b == 0b01))
          continue;
        CHECK(std::abs(delta.entry(a, b)) < 1e-12);
      }
  }
  SUBCASE("entries lie in [-1, 0] off the diagonal, 0 against the full set") {
    std::mt19937_64 rng(108);
    const SupportAtoms support =
        validate_pmf(oracle::random_full_pmf(rng, {2, 2, 2}));
    const FeshchenkoMatrix delta = feshchenko_matrix(support);
    for (SubsetMask a : delta.order) {
      CHECK(delta.entry(a, a) == 1.0);
      if (a != full_mask(3))
        CHECK(delta.entry(a, full_mask(3)) == 0.0);
      for (SubsetMask b : delta.order)
        if (a != b) {
          CHECK(delta.entry(a, b) <= 0.0);
          CHECK(delta.entry(a, b) >= -1.0 - 1e-12);
        }
    }
  }
}

TEST_CASE("assumption 2 verdicts") {
  SUBCASE("identity passes with eigenvalue 1") {
    std::mt19937_64 rng(109);
    const FeshchenkoMatrix delta = feshchenko_matrix(
        validate_pmf(oracle::random_product_pmf(rng, {2, 2})));
    const auto report = check_assumption2(delta);
    CHECK(report.pass);
    CHECK(report.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("off-diagonal -0.2 passes with eigenvalue 0.8") {
    const FeshchenkoMatrix delta =
        feshchenko_matrix(validate_pmf(oracle::pmf_2x2(0.3, 0.2, 0.2, 0.3)));
    const auto report = check_assumption2(delta);
    CHECK(report.pass);
    CHECK(report.min_eigenvalue == doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("a perfectly relatively correlated pair fails") {
    FeshchenkoMatrix delta;
    delta.d = 2;
    delta.order = enumerate_subsets(2);
    delta.entries = Matrix::Identity(4, 4);
    delta.entries(1, 2) = -1.0;
    delta.entries(2, 1) = -1.0;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(delta.entries,
                                              Eigen::EigenvaluesOnly);
    delta.min_eigenvalue = eig.eigenvalues().minCoeff();
    CHECK_FALSE(check_assumption2(delta).pass);
  }
}
