#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace wsnloc {

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct HermEig {
  Eigen::VectorXd values;  // descending
  CMatrix vectors;         // column i pairs with values[i]
};

// Throws NonHermitian when ||R - R^H||_F exceeds 1e-10 * max(1, ||R||_F).
HermEig herm_eig(const CMatrix& R);

struct PolyRoots {
  std::vector<cd> roots;
  int degree = 0;
};

// Coefficients are ordered from the highest power down to the constant term.
PolyRoots poly_roots(const std::vector<cd>& coeffs);

cd poly_eval(const std::vector<cd>& coeffs, cd z);

// X such that X * M * X = I, for Hermitian positive definite M.
CMatrix inv_sqrt_psd(const CMatrix& M);

bool is_hermitian(const CMatrix& R, double tol);

}  // namespace wsnloc
