#pragma once

#include "wsnloc/array_model.hpp"
#include "wsnloc/numerics.hpp"

namespace wsnloc {

// Phase-mode excitation of a UCA: maps N ring elements onto a virtual ULA of
// 2h+1 elements with steering vector e^{j p theta}, p = -h..h.
struct PmeTransform {
  int h = 0;
  int elements = 0;   // N of the source ring
  double zeta = 0.0;
  bool clamped = false;  // h was reduced to keep N > 2h
  CMatrix F;          // (2h+1) x N, row p = (1/N) w^{p n}
  CMatrix J;          // diag(1 / (j^p J_p(zeta)))
  CMatrix Tv;         // J F
  CMatrix whitener;   // (Tv Tv^H)^{-1/2}
  CMatrix Tw;         // whitener Tv, orthonormal rows

  ArrayGeometry virtual_geometry() const { return ArrayGeometry::virtual_ula(2 * h + 1); }
};

// floor(2 pi r / lambda)
int max_mode(double r, double wavelength);

PmeTransform build_transform(const ArrayGeometry& g);

CMatrix to_vula(const CMatrix& X, const PmeTransform& t, bool prewhitened);

// Bessel function of the first kind, |p| <= 64 and 0 <= zeta <= 128.
double bessel_j(int p, double zeta);

}  // namespace wsnloc
