#include "wsnloc/rng.hpp"

#include <cmath>
#include <numbers>

namespace wsnloc {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng Rng::stream(std::uint64_t root, std::uint64_t snr_index, std::uint64_t trial_index) {
  std::uint64_t state = root;
  std::uint64_t key = splitmix64(state);
  state = key ^ (snr_index * 0xD1B54A32D192ED03ULL);
  key = splitmix64(state);
  state = key ^ (trial_index * 0x8CB92BA72F3D8DD7ULL);
  return Rng(splitmix64(state));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

std::complex<double> Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

}  // namespace wsnloc
