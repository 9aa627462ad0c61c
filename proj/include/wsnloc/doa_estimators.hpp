#pragma once

#include <numbers>
#include <string_view>
#include <vector>

#include "wsnloc/array_model.hpp"
#include "wsnloc/numerics.hpp"
#include "wsnloc/pme.hpp"

namespace wsnloc {

enum class DoaMethod { Music, RootMusic, Esprit, UcaRootMusic, UcaEsprit };

std::string_view to_string(DoaMethod m);

struct SubspaceSplit {
  CMatrix Vs;
  CMatrix Vn;
  Eigen::VectorXd eigenvalues;  // descending
};

struct Spectrum {
  std::vector<double> grid;      // radians, strictly increasing
  std::vector<double> power_db;
};

struct DoaEstimate {
  std::vector<double> azimuths;  // radians, ascending
  DoaMethod method = DoaMethod::Music;
};

struct MusicResult {
  Spectrum spectrum;
  DoaEstimate estimate;
};

inline constexpr double kDefaultGridStep = 0.1 * std::numbers::pi / 180.0;

SubspaceSplit eig_split(const CMatrix& R, int M);

// Integer multiples of step inside the field of view: (-90, 90) degrees for a
// ULA, (-180, 180] degrees otherwise.
std::vector<double> angle_grid(const ArrayGeometry& g, double step);

Spectrum music_spectrum(const CMatrix& R, const ArrayGeometry& g, int M, const std::vector<double>& grid);

// Strict local maxima, strongest first, ties toward the smaller angle. The
// returned M angles are sorted ascending. Throws NoPeaksFound when fewer than
// M maxima exist.
std::vector<double> pick_peaks(const Spectrum& s, int M, bool circular);

// All strict local maxima of the spectrum, ascending by angle.
std::vector<double> local_maxima(const Spectrum& s, bool circular);

MusicResult music(const CMatrix& R, const ArrayGeometry& g, int M, double grid_step = kDefaultGridStep);

// Root-MUSIC polynomial for a ULA covariance, highest power first. Roots lie
// at z = e^{j phi} with phi = 2 pi (d / lambda) sin(theta).
std::vector<cd> root_music_polynomial(const CMatrix& R, int M);

DoaEstimate root_music(const CMatrix& R, const ArrayGeometry& g, int M);

DoaEstimate esprit_cov(const CMatrix& R, const ArrayGeometry& g, int M);
DoaEstimate esprit(const CMatrix& X, const ArrayGeometry& g, int M);

// Prewhitened virtual-array polynomial of degree 4h, highest power first.
std::vector<cd> uca_root_music_polynomial(const CMatrix& R_uca, const PmeTransform& t, int M);

DoaEstimate uca_root_music_cov(const CMatrix& R_uca, const PmeTransform& t, int M);
DoaEstimate uca_root_music(const CMatrix& X, const PmeTransform& t, int M);

DoaEstimate uca_esprit_cov(const CMatrix& R_uca, const PmeTransform& t, int M);
DoaEstimate uca_esprit(const CMatrix& X, const PmeTransform& t, int M);

// Unitary matrix mapping centro-Hermitian n x n matrices to real ones.
CMatrix centro_hermitian_unitary(int n);

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace wsnloc
