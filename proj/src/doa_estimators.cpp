#include "wsnloc/doa_estimators.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_source_count(int M, int limit, const char* what) {
  if (M < 1) fail(ErrorKind::TooFewSources, "at least one source must be requested");
  if (M >= limit) fail(ErrorKind::TooManySources, what);
}

double checked_arcsin(double x) {
  if (std::abs(x) > 1.0 + 1e-12) fail(ErrorKind::ArcsinOutOfRange, "phase maps outside the visible region");
  return std::asin(std::clamp(x, -1.0, 1.0));
}

const Ula& require_ula(const ArrayGeometry& g) {
  const auto* u = std::get_if<Ula>(&g.kind);
  if (!u) fail(ErrorKind::WrongGeometry, "estimator needs a ULA");
  return *u;
}

// Maps every root inside the unit circle, merges reciprocal partners (and the
// two halves of a split double root) by averaging, then keeps the M clusters
// closest to the circle.
std::vector<cd> select_roots(const std::vector<cd>& roots, int M) {
  std::vector<cd> inside;
  inside.reserve(roots.size());
  for (const cd& z : roots) {
    const double r = std::abs(z);
    if (r == 0.0) continue;
    inside.push_back(r <= 1.0 ? z : 1.0 / std::conj(z));
  }
  std::sort(inside.begin(), inside.end(), [](const cd& a, const cd& b) { return std::abs(a) > std::abs(b); });

  struct Cluster {
    cd first;
    cd sum;
    int count;
  };
  std::vector<Cluster> clusters;
  for (const cd& z : inside) {
    bool merged = false;
    for (auto& c : clusters) {
      if (c.count < 2 && std::abs(c.first - z) < 1e-6) {
        c.sum += z;
        ++c.count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({z, z, 1});
  }

  std::vector<cd> reps;
  for (const auto& c : clusters) reps.push_back(c.sum / static_cast<double>(c.count));
  std::stable_sort(reps.begin(), reps.end(), [](const cd& a, const cd& b) { return std::abs(a) > std::abs(b); });
  if (static_cast<int>(reps.size()) < M) fail(ErrorKind::RootSolveFailure, "not enough distinct roots");
  reps.resize(M);
  return reps;
}

// Coefficients of sum_{r,s} P(r,s) z^{sign*(r-s)} multiplied by z^{n-1}.
std::vector<cd> banded_sum_polynomial(const CMatrix& P, int sign) {
  const int n = static_cast<int>(P.rows());
  std::vector<cd> coeffs(2 * n - 1, cd{0.0, 0.0});
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const int k = sign * (r - s);  // power of z before the shift
      coeffs[(n - 1) - k] += P(r, s);
    }
  }
  return coeffs;
}

DoaEstimate finish(std::vector<double> az, DoaMethod method) {
  std::sort(az.begin(), az.end());
  return {std::move(az), method};
}

CMatrix shift_invariance_operator(const CMatrix& Vs) {
  const Eigen::Index n = Vs.rows();
  const CMatrix V1 = Vs.topRows(n - 1);
  const CMatrix V2 = Vs.bottomRows(n - 1);
  Eigen::JacobiSVD<CMatrix> svd(V1);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || !(s[s.size() - 1] > 1e-10 * s[0])) {
    fail(ErrorKind::RankDeficientSubspace, "subarray signal subspace is rank deficient");
  }
  return V1.colPivHouseholderQr().solve(V2);
}

}  // namespace

std::string_view to_string(DoaMethod m) {
  switch (m) {
    case DoaMethod::Music: return "music";
    case DoaMethod::RootMusic: return "root-music";
    case DoaMethod::Esprit: return "esprit";
    case DoaMethod::UcaRootMusic: return "uca-root-music";
    case DoaMethod::UcaEsprit: return "uca-esprit";
  }
  return "unknown";
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

SubspaceSplit eig_split(const CMatrix& R, int M) {
  check_source_count(M, static_cast<int>(R.rows()), "source count must be below the covariance dimension");
  const HermEig e = herm_eig(R);
  const Eigen::Index n = R.rows();
  return {e.vectors.leftCols(M), e.vectors.rightCols(n - M), e.values};
}

std::vector<double> angle_grid(const ArrayGeometry& g, double step) {
  if (!(step > 0.0)) fail(ErrorKind::InvalidArgument, "grid step must be positive");
  const double half = g.full_circle() ? kPi : kPi / 2.0;
  const auto n = static_cast<long>(std::floor(half / step + 1e-9));
  const bool hits_edge = std::abs(n * step - half) < 1e-9;
  long lo = -n;
  long hi = n;
  if (hits_edge) {
    lo = -n + 1;
    if (!g.full_circle()) hi = n - 1;
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) grid.push_back(k * step);
  return grid;
}

Spectrum music_spectrum(const CMatrix& R, const ArrayGeometry& g, int M, const std::vector<double>& grid) {
  if (R.rows() != g.elements()) fail(ErrorKind::DimensionMismatch, "covariance does not match the geometry");
  const SubspaceSplit split = eig_split(R, M);
  const CMatrix VnH = split.Vn.adjoint();

  Spectrum s;
  s.grid = grid;
  s.power_db.reserve(grid.size());
  for (double theta : grid) {
    const CVector a = steering(theta, g);
    const double num = a.squaredNorm();
    const double den = std::max((VnH * a).squaredNorm(), DBL_MIN);
    s.power_db.push_back(10.0 * std::log10(num / den));
  }
  return s;
}

std::vector<double> local_maxima(const Spectrum& s, bool circular) {
  const auto n = static_cast<long>(s.power_db.size());
  std::vector<double> out;
  for (long i = 0; i < n; ++i) {
    long l = i - 1;
    long r = i + 1;
    if (circular) {
      l = (l + n) % n;
      r = r % n;
    } else if (l < 0 || r >= n) {
      continue;
    }
    if (s.power_db[i] > s.power_db[l] && s.power_db[i] > s.power_db[r]) out.push_back(s.grid[i]);
  }
  return out;
}

std::vector<double> pick_peaks(const Spectrum& s, int M, bool circular) {
  const auto n = static_cast<long>(s.power_db.size());
  std::vector<long> idx;
  for (long i = 0; i < n; ++i) {
    long l = i - 1;
    long r = i + 1;
    if (circular) {
      l = (l + n) % n;
      r = r % n;
    } else if (l < 0 || r >= n) {
      continue;
    }
    if (s.power_db[i] > s.power_db[l] && s.power_db[i] > s.power_db[r]) idx.push_back(i);
  }
  if (static_cast<int>(idx.size()) < M) fail(ErrorKind::NoPeaksFound, "fewer spectral peaks than sources");
  std::stable_sort(idx.begin(), idx.end(), [&](long a, long b) {
    if (s.power_db[a] != s.power_db[b]) return s.power_db[a] > s.power_db[b];
    return s.grid[a] < s.grid[b];
  });
  std::vector<double> out;
  for (int m = 0; m < M; ++m) out.push_back(s.grid[idx[m]]);
  std::sort(out.begin(), out.end());
  return out;
}

MusicResult music(const CMatrix& R, const ArrayGeometry& g, int M, double grid_step) {
  MusicResult res;
  res.spectrum = music_spectrum(R, g, M, angle_grid(g, grid_step));
  res.estimate = {pick_peaks(res.spectrum, M, g.full_circle()), DoaMethod::Music};
  return res;
}

std::vector<cd> root_music_polynomial(const CMatrix& R, int M) {
  const SubspaceSplit split = eig_split(R, M);
  const CMatrix Pn = split.Vn * split.Vn.adjoint();
  return banded_sum_polynomial(Pn, +1);
}

DoaEstimate root_music(const CMatrix& R, const ArrayGeometry& g, int M) {
  const Ula& u = require_ula(g);
  if (R.rows() != u.elements) fail(ErrorKind::DimensionMismatch, "covariance does not match the geometry");
  const PolyRoots roots = poly_roots(root_music_polynomial(R, M));
  const double scale = g.wavelength / (2.0 * kPi * u.spacing);
  std::vector<double> az;
  for (const cd& z : select_roots(roots.roots, M)) az.push_back(checked_arcsin(std::arg(z) * scale));
  return finish(std::move(az), DoaMethod::RootMusic);
}

DoaEstimate esprit_cov(const CMatrix& R, const ArrayGeometry& g, int M) {
  const Ula& u = require_ula(g);
  if (R.rows() != u.elements) fail(ErrorKind::DimensionMismatch, "covariance does not match the geometry");
  check_source_count(M, u.elements - 1, "ESPRIT needs M < N - 1");
  const SubspaceSplit split = eig_split(R, M);
  const CMatrix Psi = shift_invariance_operator(split.Vs);
  Eigen::ComplexEigenSolver<CMatrix> es(Psi, false);

  // Adjacent elements differ by e^{-j phi}, so phi = -arg(eigenvalue).
  const double scale = g.wavelength / (2.0 * kPi * u.spacing);
  std::vector<double> az;
  for (Eigen::Index m = 0; m < es.eigenvalues().size(); ++m) {
    az.push_back(checked_arcsin(-std::arg(es.eigenvalues()[m]) * scale));
  }
  return finish(std::move(az), DoaMethod::Esprit);
}

DoaEstimate esprit(const CMatrix& X, const ArrayGeometry& g, int M) {
  return esprit_cov(sample_covariance(X), g, M);
}

std::vector<cd> uca_root_music_polynomial(const CMatrix& R_uca, const PmeTransform& t, int M) {
  if (R_uca.rows() != t.elements) fail(ErrorKind::DimensionMismatch, "covariance does not match the ring");
  check_source_count(M, 2 * t.h + 1, "UCA-Root-MUSIC needs M < 2h + 1");
  const CMatrix Rv = t.Tw * R_uca * t.Tw.adjoint();
  const SubspaceSplit split = eig_split(0.5 * (Rv + Rv.adjoint()), M);
  const CMatrix P = t.whitener.adjoint() * split.Vn * split.Vn.adjoint() * t.whitener;
  return banded_sum_polynomial(P, -1);
}

DoaEstimate uca_root_music_cov(const CMatrix& R_uca, const PmeTransform& t, int M) {
  const PolyRoots roots = poly_roots(uca_root_music_polynomial(R_uca, t, M));
  std::vector<double> az;
  for (const cd& z : select_roots(roots.roots, M)) az.push_back(wrap_angle(std::arg(z)));
  return finish(std::move(az), DoaMethod::UcaRootMusic);
}

DoaEstimate uca_root_music(const CMatrix& X, const PmeTransform& t, int M) {
  return uca_root_music_cov(sample_covariance(X), t, M);
}

CMatrix centro_hermitian_unitary(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "size must be positive");
  const int k = n / 2;
  const double s = 1.0 / std::numbers::sqrt2;
  const cd j{0.0, 1.0};
  CMatrix Q = CMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i) {
    Q(i, i) = s;
    Q(i, n - k + i) = j * s;
    Q(n - 1 - i, i) = s;
    Q(n - 1 - i, n - k + i) = -j * s;
  }
  if (n % 2 == 1) Q(k, k) = 1.0;
  return Q;
}

DoaEstimate uca_esprit_cov(const CMatrix& R_uca, const PmeTransform& t, int M) {
  if (R_uca.rows() != t.elements) fail(ErrorKind::DimensionMismatch, "covariance does not match the ring");
  const int n = 2 * t.h + 1;
  check_source_count(M, n - 1, "UCA-ESPRIT needs M < 2h");

  // The virtual array is centro-symmetric, so Q^H Rv Q has a real part that
  // equals the forward/backward average in the rotated basis.
  const CMatrix Rv = t.Tv * R_uca * t.Tv.adjoint();
  const CMatrix Q = centro_hermitian_unitary(n);
  const CMatrix Rq = (Q.adjoint() * Rv * Q).real().cast<cd>();
  const SubspaceSplit split = eig_split(0.5 * (Rq + Rq.adjoint()), M);
  const CMatrix Vs = Q * split.Vs;

  // Adjacent virtual elements differ by e^{+j theta}.
  const CMatrix Psi = shift_invariance_operator(Vs);
  Eigen::ComplexEigenSolver<CMatrix> es(Psi, false);
  std::vector<double> az;
  for (Eigen::Index m = 0; m < es.eigenvalues().size(); ++m) az.push_back(wrap_angle(std::arg(es.eigenvalues()[m])));
  return finish(std::move(az), DoaMethod::UcaEsprit);
}

DoaEstimate uca_esprit(const CMatrix& X, const PmeTransform& t, int M) {
  return uca_esprit_cov(sample_covariance(X), t, M);
}

}  // namespace wsnloc
