#include "hoeffding/bernoulli.hpp"

#include <cmath>

#include "hoeffding/errors.hpp"

namespace hoeffding {

namespace {

Eigen::Vector4d cell_weights(const BernoulliPair& pair) {
  return {1.0 - pair.q1 - pair.q2 + pair.rho, pair.q2 - pair.rho,
          pair.q1 - pair.rho, pair.rho};
}

void fix_sign(Eigen::Vector4d& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (int i = 3; i >= 0; --i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

JointPmf bernoulli_pmf(const BernoulliPair& pair) {
  const Eigen::Vector4d w = cell_weights(pair);
  for (int i = 0; i < 4; ++i)
    if (w[i] < 0.0)
      fail(errc::inadmissible_rho,
           "rho = " + std::to_string(pair.rho) +
               " drives cell weight " + std::to_string(i) +
               " negative (" + std::to_string(w[i]) + ")");
  JointPmf pmf;
  pmf.inputs = {{"x1", {"0", "1"}}, {"x2", {"0", "1"}}};
  pmf.weights = w;
  return pmf;
}

BernoulliDecomposition closed_form_decomposition(const BernoulliPair& pair,
                                                 const Eigen::Vector4d& g) {
  const Eigen::Vector4d w = cell_weights(pair);
  for (int i = 0; i < 4; ++i)
    if (w[i] <= 0.0)
      fail(errc::inadmissible_rho,
           "closed form needs strictly positive cell weights; cell " +
               std::to_string(i) + " has weight " + std::to_string(w[i]));
  const double q1 = pair.q1, q2 = pair.q2;

  BernoulliDecomposition out;
  // v_∅ = (c,c,c,c) with c² Σw = 1.
  out.v_empty.setOnes();

  // v₁ = (g0,g0,g1,g1): orthogonal to constants and unit norm gives
  // g0 = −q1·t, g1 = (1−q1)·t with t = 1/√(q1(1−q1)).
  {
    const double t = 1.0 / std::sqrt(q1 * (1.0 - q1));
    out.v1 << -q1 * t, -q1 * t, (1.0 - q1) * t, (1.0 - q1) * t;
  }
  // v₂ = (h0,h1,h0,h1), same pattern in the second coordinate.
  {
    const double t = 1.0 / std::sqrt(q2 * (1.0 - q2));
    out.v2 << -q2 * t, (1.0 - q2) * t, -q2 * t, (1.0 - q2) * t;
  }
  // v₁₂ spans the one-dimensional kernel of the three weighted
  // constraints; v₁ and v₂ need not be orthogonal to each other, so the
  // kernel is taken directly rather than by Gram–Schmidt.
  {
    Eigen::Matrix<double, 3, 4> constraints;
    constraints.row(0) = (w.asDiagonal() * out.v_empty).transpose();
    constraints.row(1) = (w.asDiagonal() * out.v1).transpose();
    constraints.row(2) = (w.asDiagonal() * out.v2).transpose();
    const Eigen::FullPivLU<Eigen::Matrix<double, 3, 4>> lu(constraints);
    Eigen::Vector4d kernel = lu.kernel().col(0);
    kernel /= std::sqrt(kernel.dot(w.asDiagonal() * kernel));
    out.v12 = kernel;
  }
  fix_sign(out.v_empty);
  fix_sign(out.v1);
  fix_sign(out.v2);
  fix_sign(out.v12);

  Eigen::Matrix4d basis;
  basis.col(0) = out.v_empty;
  basis.col(1) = out.v1;
  basis.col(2) = out.v2;
  basis.col(3) = out.v12;
  const Eigen::Vector4d coeffs = basis.fullPivLu().solve(g);
  out.e = coeffs[0];
  out.alpha = coeffs[1];
  out.beta = coeffs[2];
  out.delta = coeffs[3];
  out.comp_empty = out.e * out.v_empty;
  out.comp1 = out.alpha * out.v1;
  out.comp2 = out.beta * out.v2;
  out.comp12 = out.delta * out.v12;
  return out;
}

}  // namespace hoeffding
