#include "wsnloc/array_model.hpp"

#include <cmath>
#include <numbers>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ArrayGeometry ArrayGeometry::ula(int elements, double spacing, double wavelength) {
  ArrayGeometry g{Ula{elements, spacing}, wavelength};
  g.validate();
  return g;
}

ArrayGeometry ArrayGeometry::uca(int elements, double radius, double elevation, double wavelength, int max_mode) {
  ArrayGeometry g{Uca{elements, radius, elevation, max_mode}, wavelength};
  g.validate();
  return g;
}

ArrayGeometry ArrayGeometry::virtual_ula(int elements) {
  ArrayGeometry g{VirtualUla{elements}, 1.0};
  g.validate();
  return g;
}

int ArrayGeometry::elements() const {
  return std::visit([](const auto& k) { return k.elements; }, kind);
}

void ArrayGeometry::validate() const {
  if (elements() < 2) fail(ErrorKind::InvalidArgument, "array needs at least two elements");
  if (!(wavelength > 0.0)) fail(ErrorKind::InvalidArgument, "wavelength must be positive");
  if (const auto* u = std::get_if<Ula>(&kind)) {
    if (!(u->spacing > 0.0)) fail(ErrorKind::InvalidArgument, "ULA spacing must be positive");
  } else if (const auto* c = std::get_if<Uca>(&kind)) {
    if (!(c->radius > 0.0)) fail(ErrorKind::InvalidArgument, "UCA radius must be positive");
    if (!(c->elevation >= 0.0 && c->elevation <= std::numbers::pi / 2 + 1e-12)) {
      fail(ErrorKind::InvalidArgument, "UCA elevation must lie in [0, pi/2]");
    }
  }
}

double SourceSet::total_power() const {
  double acc = 0.0;
  for (double r : amplitudes) acc += r * r;
  return acc;
}

CVector ula_steering(double theta, const ArrayGeometry& g) {
  const auto* u = std::get_if<Ula>(&g.kind);
  if (!u) fail(ErrorKind::WrongGeometry, "ULA steering requested for a non-ULA geometry");
  const double phi = kTwoPi * (u->spacing / g.wavelength) * std::sin(theta);
  CVector a(u->elements);
  for (int n = 0; n < u->elements; ++n) a[n] = std::polar(1.0, -n * phi);
  return a;
}

double uca_zeta(const Uca& u, double wavelength) {
  return kTwoPi * u.radius / wavelength * std::sin(u.elevation);
}

CVector uca_steering(double theta, const ArrayGeometry& g) {
  const auto* u = std::get_if<Uca>(&g.kind);
  if (!u) fail(ErrorKind::WrongGeometry, "UCA steering requested for a non-UCA geometry");
  const double zeta = uca_zeta(*u, g.wavelength);
  CVector a(u->elements);
  for (int n = 0; n < u->elements; ++n) {
    const double theta_n = kTwoPi * n / u->elements;
    a[n] = std::polar(1.0, zeta * std::cos(theta - theta_n));
  }
  return a;
}

CVector vula_steering(double theta, const ArrayGeometry& g) {
  const auto* v = std::get_if<VirtualUla>(&g.kind);
  if (!v) fail(ErrorKind::WrongGeometry, "virtual ULA steering requested for another geometry");
  const double centre = 0.5 * (v->elements - 1);
  CVector a(v->elements);
  for (int k = 0; k < v->elements; ++k) a[k] = std::polar(1.0, (k - centre) * theta);
  return a;
}

CVector steering(double theta, const ArrayGeometry& g) {
  if (g.is_ula()) return ula_steering(theta, g);
  if (g.is_uca()) return uca_steering(theta, g);
  return vula_steering(theta, g);
}

CMatrix steering_matrix(const std::vector<double>& thetas, const ArrayGeometry& g) {
  CMatrix A(g.elements(), static_cast<Eigen::Index>(thetas.size()));
  for (std::size_t m = 0; m < thetas.size(); ++m) A.col(static_cast<Eigen::Index>(m)) = steering(thetas[m], g);
  return A;
}

std::vector<Position2D> uca_element_positions(const ArrayGeometry& g, Position2D center) {
  const auto* u = std::get_if<Uca>(&g.kind);
  if (!u) fail(ErrorKind::WrongGeometry, "element positions need a UCA");
  std::vector<Position2D> out;
  out.reserve(u->elements);
  for (int n = 0; n < u->elements; ++n) {
    const double theta_n = kTwoPi * n / u->elements;
    out.push_back({center.x + u->radius * std::cos(theta_n), center.y + u->radius * std::sin(theta_n)});
  }
  return out;
}

double noise_variance(const SourceSet& src, double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return src.total_power() / std::pow(10.0, snr_db / 10.0);
}

CMatrix synthesize_snapshots_noise(const ArrayGeometry& g, const SourceSet& src, int K, double noise_var,
                                   Rng& rng) {
  const int N = g.elements();
  const int M = src.count();
  if (K < 1) fail(ErrorKind::InvalidArgument, "need at least one snapshot");
  if (M >= N) fail(ErrorKind::TooManySources, "source count must be below the element count");
  if (src.amplitudes.size() != src.azimuths.size()) {
    fail(ErrorKind::LengthMismatch, "one amplitude per source required");
  }

  const CMatrix A = steering_matrix(src.azimuths, g);
  CMatrix S(M, K);
  for (int k = 0; k < K; ++k) {
    if (src.coherent) {
      const cd common = rng.complex_normal();
      for (int m = 0; m < M; ++m) S(m, k) = src.amplitudes[m] * common;
    } else {
      for (int m = 0; m < M; ++m) S(m, k) = src.amplitudes[m] * rng.complex_normal();
    }
  }

  CMatrix X = A * S;
  if (noise_var > 0.0) {
    const double s = std::sqrt(noise_var);
    for (int k = 0; k < K; ++k) {
      for (int n = 0; n < N; ++n) X(n, k) += s * rng.complex_normal();
    }
  }
  return X;
}

CMatrix synthesize_snapshots(const ArrayGeometry& g, const SourceSet& src, int K, double snr_db, Rng& rng) {
  return synthesize_snapshots_noise(g, src, K, noise_variance(src, snr_db), rng);
}

CMatrix sample_covariance(const CMatrix& X) {
  if (X.cols() < 1) fail(ErrorKind::InvalidArgument, "need at least one snapshot");
  const CMatrix R = X * X.adjoint() / static_cast<double>(X.cols());
  return 0.5 * (R + R.adjoint());
}

CMatrix analytic_covariance(const ArrayGeometry& g, const SourceSet& src, double noise_var) {
  const int M = src.count();
  const CMatrix A = steering_matrix(src.azimuths, g);
  CMatrix Rs = CMatrix::Zero(M, M);
  for (int m = 0; m < M; ++m) {
    for (int n = 0; n < M; ++n) {
      if (src.coherent || m == n) Rs(m, n) = src.amplitudes[m] * src.amplitudes[n];
    }
  }
  CMatrix R = A * Rs * A.adjoint();
  R.diagonal().array() += noise_var;
  return 0.5 * (R + R.adjoint());
}

std::vector<cd> beampattern(const ArrayGeometry& g, const CVector& weights, const std::vector<double>& grid) {
  if (weights.size() != g.elements()) fail(ErrorKind::LengthMismatch, "weight length must equal element count");
  std::vector<cd> out;
  out.reserve(grid.size());
  for (double theta : grid) out.push_back(weights.dot(steering(theta, g)));
  return out;
}

}  // namespace wsnloc
