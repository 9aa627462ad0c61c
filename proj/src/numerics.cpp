#include "wsnloc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wsnloc/errors.hpp"

namespace wsnloc {

bool is_hermitian(const CMatrix& R, double tol) {
  if (R.rows() != R.cols()) return false;
  const double scale = std::max(1.0, R.norm());
  return (R - R.adjoint()).norm() <= tol * scale;
}

HermEig herm_eig(const CMatrix& R) {
  if (!is_hermitian(R, 1e-10)) fail(ErrorKind::NonHermitian, "matrix is not Hermitian");

  const CMatrix sym = 0.5 * (R + R.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) fail(ErrorKind::NonHermitian, "eigendecomposition failed");

  // Eigen returns ascending order.
  const Eigen::Index n = sym.rows();
  HermEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = solver.eigenvalues()[n - 1 - i];
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

cd poly_eval(const std::vector<cd>& coeffs, cd z) {
  cd acc = 0.0;
  for (const cd& c : coeffs) acc = acc * z + c;
  return acc;
}

PolyRoots poly_roots(const std::vector<cd>& coeffs) {
  if (coeffs.empty()) fail(ErrorKind::DegenerateLeadingCoefficient, "empty coefficient list");
  const double cmax = std::accumulate(coeffs.begin(), coeffs.end(), 0.0,
                                      [](double m, const cd& c) { return std::max(m, std::abs(c)); });
  if (std::abs(coeffs.front()) <= 1e-14 * cmax || cmax == 0.0) {
    fail(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient is zero");
  }

  PolyRoots out;
  out.degree = static_cast<int>(coeffs.size()) - 1;
  if (out.degree == 0) return out;

  const int n = out.degree;
  CMatrix companion = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) companion(0, k) = -coeffs[k + 1] / coeffs[0];
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;

  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::RootSolveFailure, "companion eigensolver failed");
  out.roots.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return out;
}

CMatrix inv_sqrt_psd(const CMatrix& M) {
  const HermEig e = herm_eig(M);
  const double trace = e.values.sum();
  if (!(e.values.minCoeff() > 1e-12 * trace)) fail(ErrorKind::NearSingular, "matrix is not safely positive definite");
  const Eigen::VectorXd s = e.values.cwiseSqrt().cwiseInverse();
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

}  // namespace wsnloc
