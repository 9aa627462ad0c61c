#include "wsnloc/pme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

long double bessel_series(int p, long double z) {
  const long double half = z / 2.0L;
  long double term = 1.0L;
  for (int k = 1; k <= p; ++k) term *= half / k;
  long double sum = term;
  const long double q = half * half;
  for (int k = 0; k < 500; ++k) {
    term *= -q / ((k + 1.0L) * (k + 1.0L + p));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum) && k > z) break;
  }
  return sum;
}

// Miller's backward recurrence normalised by J0 + 2 sum J_2k = 1.
long double bessel_miller(int p, long double z) {
  const int top = std::max(p, static_cast<int>(z));
  int start = top + 30 + static_cast<int>(std::sqrt(60.0 * top));
  start += start % 2;

  long double next = 0.0L;  // J_{k+1}
  long double cur = 1e-30L; // J_k
  long double norm = 0.0L;
  long double result = 0.0L;
  for (int k = start; k > 0; --k) {
    const long double prev = (2.0L * k / z) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == p) result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * cur;
    if (std::fabs(cur) > 1e250L) {
      next *= 1e-250L;
      cur *= 1e-250L;
      norm *= 1e-250L;
      result *= 1e-250L;
    }
  }
  norm += cur;  // J_0
  return result / norm;
}

}  // namespace

double bessel_j(int p, double zeta) {
  if (std::abs(p) > 64 || !(zeta >= 0.0) || zeta > 128.0) {
    fail(ErrorKind::OutOfSupportedRange, "bessel_j supports |p| <= 64 and 0 <= zeta <= 128");
  }
  const int n = std::abs(p);
  const double sign = (p < 0 && n % 2 == 1) ? -1.0 : 1.0;
  if (zeta == 0.0) return n == 0 ? 1.0 : 0.0;
  const long double v = zeta <= 12.0 ? bessel_series(n, zeta) : bessel_miller(n, zeta);
  return sign * static_cast<double>(v);
}

int max_mode(double r, double wavelength) {
  return static_cast<int>(std::floor(2.0 * std::numbers::pi * r / wavelength + 1e-9));
}

PmeTransform build_transform(const ArrayGeometry& g) {
  const auto* u = std::get_if<Uca>(&g.kind);
  if (!u) fail(ErrorKind::WrongGeometry, "phase-mode transform needs a UCA");
  const int N = u->elements;

  PmeTransform t;
  t.elements = N;
  t.zeta = uca_zeta(*u, g.wavelength);
  if (u->max_mode >= 0) {
    t.h = u->max_mode;
    if (N <= 2 * t.h) fail(ErrorKind::InsufficientElements, "N must exceed 2h");
  } else {
    t.h = max_mode(u->radius, g.wavelength);
    const int limit = (N - 1) / 2;
    if (t.h > limit) {
      t.h = limit;
      t.clamped = true;
    }
  }
  if (t.h < 1) fail(ErrorKind::InsufficientElements, "ring is too small to excite any phase mode");

  const int rows = 2 * t.h + 1;
  static const cd kPowJ[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  t.F.resize(rows, N);
  t.J = CMatrix::Zero(rows, rows);
  for (int r = 0; r < rows; ++r) {
    const int p = r - t.h;
    for (int n = 0; n < N; ++n) t.F(r, n) = std::polar(1.0 / N, 2.0 * std::numbers::pi * p * n / N);
    const double jp = bessel_j(p, t.zeta);
    if (std::abs(jp) < 1e-10) fail(ErrorKind::BesselNearZero, "phase mode has a vanishing Bessel weight");
    t.J(r, r) = 1.0 / (kPowJ[((p % 4) + 4) % 4] * jp);
  }
  t.Tv = t.J * t.F;
  t.whitener = inv_sqrt_psd(t.Tv * t.Tv.adjoint());
  t.Tw = t.whitener * t.Tv;
  return t;
}

CMatrix to_vula(const CMatrix& X, const PmeTransform& t, bool prewhitened) {
  if (X.rows() != t.elements) fail(ErrorKind::DimensionMismatch, "snapshot rows must equal ring size");
  return prewhitened ? CMatrix(t.Tw * X) : CMatrix(t.Tv * X);
}

}  // namespace wsnloc
