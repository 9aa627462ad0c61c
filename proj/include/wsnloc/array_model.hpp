#pragma once

#include <variant>
#include <vector>

#include "wsnloc/geometry.hpp"
#include "wsnloc/numerics.hpp"
#include "wsnloc/rng.hpp"

namespace wsnloc {

// Elements along a line, element n at n*spacing. Angles are measured from
// broadside, so the unambiguous field of view is (-90, 90) degrees.
struct Ula {
  int elements = 0;
  double spacing = 0.0;  // m
};

// Elements on a ring, element n at azimuth 2*pi*n/N counter-clockwise from +x.
// elevation is the known source elevation from the array axis (pi/2 = in plane).
// max_mode < 0 selects the phase-mode order from the radius.
struct Uca {
  int elements = 0;
  double radius = 0.0;  // m
  double elevation = 0.0;
  int max_mode = -1;
};

// Output of the phase-mode transform: 2h+1 virtual elements whose steering
// vector is e^{j p theta}, p = -h..h. Smoothed subarrays may have an even
// count, in which case p runs over half-integers centred on zero.
struct VirtualUla {
  int elements = 0;
};

struct ArrayGeometry {
  std::variant<Ula, Uca, VirtualUla> kind;
  double wavelength = 1.0;

  static ArrayGeometry ula(int elements, double spacing, double wavelength);
  static ArrayGeometry uca(int elements, double radius, double elevation, double wavelength, int max_mode = -1);
  static ArrayGeometry virtual_ula(int elements);

  int elements() const;
  bool is_ula() const { return std::holds_alternative<Ula>(kind); }
  bool is_uca() const { return std::holds_alternative<Uca>(kind); }
  bool is_virtual() const { return std::holds_alternative<VirtualUla>(kind); }

  // Azimuth field of view is the full circle for UCA and virtual arrays.
  bool full_circle() const { return !is_ula(); }

  void validate() const;
};

struct SourceSet {
  std::vector<double> azimuths;    // radians
  std::vector<double> amplitudes;  // rho_m
  bool coherent = false;

  int count() const { return static_cast<int>(azimuths.size()); }
  double total_power() const;
};

CVector ula_steering(double theta, const ArrayGeometry& g);
CVector uca_steering(double theta, const ArrayGeometry& g);
CVector vula_steering(double theta, const ArrayGeometry& g);
CVector steering(double theta, const ArrayGeometry& g);
CMatrix steering_matrix(const std::vector<double>& thetas, const ArrayGeometry& g);

// Phase-mode argument zeta = (2 pi r / lambda) sin(elevation).
double uca_zeta(const Uca& u, double wavelength);

// Element positions of a UCA placed at `center`.
std::vector<Position2D> uca_element_positions(const ArrayGeometry& g, Position2D center);

// Per-element noise power giving 10 log10(sum rho^2 / sigma_n^2) = snr_db.
double noise_variance(const SourceSet& src, double snr_db);

// N x K snapshots with the given per-element noise power.
CMatrix synthesize_snapshots_noise(const ArrayGeometry& g, const SourceSet& src, int K, double noise_var, Rng& rng);

CMatrix synthesize_snapshots(const ArrayGeometry& g, const SourceSet& src, int K, double snr_db, Rng& rng);

CMatrix sample_covariance(const CMatrix& X);

// A R_s A^H + noise_var I, with R_s = diag(rho^2) or rho rho^T when coherent.
CMatrix analytic_covariance(const ArrayGeometry& g, const SourceSet& src, double noise_var);

std::vector<cd> beampattern(const ArrayGeometry& g, const CVector& weights, const std::vector<double>& grid);

}  // namespace wsnloc
