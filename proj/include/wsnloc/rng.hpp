#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace wsnloc {

std::uint64_t splitmix64(std::uint64_t& state);

// Seedable generator built on mt19937_64. Uniform and normal variates are
// derived here rather than through <random> distributions, whose output is
// implementation-defined, so that every platform draws the same numbers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for one (snr_index, trial_index) cell of an experiment.
  // The three keys are folded through splitmix64 to form the engine seed.
  static Rng stream(std::uint64_t root, std::uint64_t snr_index, std::uint64_t trial_index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();

  // Circular complex Gaussian with unit power (E|z|^2 = 1).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wsnloc
