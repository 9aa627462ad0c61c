#pragma once

#include "wsnloc/numerics.hpp"

namespace wsnloc {

struct SmoothingPlan {
  int subarray_len = 0;    // p_ss
  int subarray_count = 0;  // L_ss = N - p_ss + 1
};

SmoothingPlan make_plan(int N, int subarray_len);

// Throws InvalidPlan unless the plan fits an N-element array and can restore
// rank for M coherent sources: p_ss > M, and L_ss >= M (forward only) or
// 2 L_ss >= M (forward/backward).
void validate_plan(const SmoothingPlan& plan, int N, int M, bool backward);

// Smallest valid plan (p_ss = M + 1 when that works). Throws InvalidPlan if
// no subarray length satisfies the constraints.
SmoothingPlan default_plan(int N, int M, bool backward);

CMatrix fss(const CMatrix& R, const SmoothingPlan& plan, int M);

CMatrix fbss(const CMatrix& R, const SmoothingPlan& plan, int M);

// Hermitian Toeplitz matrix built from the first row of R.
CMatrix toeplitz_reconstruct(const CMatrix& R);

}  // namespace wsnloc
