#include "wsnloc/decorrelation.hpp"

#include <string>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

void check_square(const CMatrix& R) {
  if (R.rows() != R.cols() || R.rows() < 1) fail(ErrorKind::DimensionMismatch, "covariance must be square");
}

CMatrix forward_average(const CMatrix& R, const SmoothingPlan& plan) {
  const int p = plan.subarray_len;
  CMatrix acc = CMatrix::Zero(p, p);
  for (int k = 0; k < plan.subarray_count; ++k) acc += R.block(k, k, p, p);
  return acc / static_cast<double>(plan.subarray_count);
}

}  // namespace

SmoothingPlan make_plan(int N, int subarray_len) { return {subarray_len, N - subarray_len + 1}; }

void validate_plan(const SmoothingPlan& plan, int N, int M, bool backward) {
  const int p = plan.subarray_len;
  const int L = plan.subarray_count;
  if (p < 1 || p > N || L != N - p + 1) fail(ErrorKind::InvalidPlan, "plan does not fit the array");
  if (M < 1) fail(ErrorKind::TooFewSources, "at least one source required");
  if (p <= M) fail(ErrorKind::InvalidPlan, "subarray length must exceed the source count");
  const int effective = backward ? 2 * L : L;
  if (effective < M) {
    fail(ErrorKind::InvalidPlan, "too few subarrays (" + std::to_string(L) + ") for " + std::to_string(M) +
                                     " coherent sources");
  }
}

SmoothingPlan default_plan(int N, int M, bool backward) {
  for (int p = M + 1; p <= N; ++p) {
    const SmoothingPlan plan = make_plan(N, p);
    const int effective = backward ? 2 * plan.subarray_count : plan.subarray_count;
    if (effective >= M) return plan;
  }
  fail(ErrorKind::InvalidPlan, "no subarray length can resolve " + std::to_string(M) + " coherent sources with " +
                                   std::to_string(N) + " elements");
}

CMatrix fss(const CMatrix& R, const SmoothingPlan& plan, int M) {
  check_square(R);
  validate_plan(plan, static_cast<int>(R.rows()), M, false);
  const CMatrix out = forward_average(R, plan);
  return 0.5 * (out + out.adjoint());
}

CMatrix fbss(const CMatrix& R, const SmoothingPlan& plan, int M) {
  check_square(R);
  validate_plan(plan, static_cast<int>(R.rows()), M, true);
  const CMatrix Rf = forward_average(R, plan);
  // J conj(Rf) J, with J the exchange matrix, reverses both index orders.
  const CMatrix Rb = Rf.conjugate().reverse();
  const CMatrix out = 0.5 * (Rf + Rb);
  return 0.5 * (out + out.adjoint());
}

CMatrix toeplitz_reconstruct(const CMatrix& R) {
  check_square(R);
  const Eigen::Index n = R.rows();
  CMatrix T(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) T(i, k) = k >= i ? R(0, k - i) : std::conj(R(0, i - k));
  }
  for (Eigen::Index i = 0; i < n; ++i) T(i, i) = T(i, i).real();
  return T;
}

}  // namespace wsnloc
