#pragma once

#include <cstdint>

#include "ndsylv/ode.hpp"
#include "ndsylv/sylvester.hpp"

namespace ndsylv {

/// xoshiro256++ seeded through splitmix64, so any 64-bit seed gives a full
/// well-mixed state. Reproducible across platforms.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
      sm += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  cxd uniform_complex() {
    const double re = uniform();
    return {re, uniform()};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

/// Square matrix with entries uniform in [0,1) + i[0,1), filled column-major.
Matrix random_matrix(int n, Xoshiro256pp& rng);

NDTensor random_tensor(const std::vector<std::int64_t>& dims, Xoshiro256pp& rng);

struct GeneratedProblem {
  SylvesterProblem problem;
  NDTensor x_true;
};

/// Draws A_1..A_N then X in that order from one stream and sets the
/// right-hand side to the operator applied to X, so the exact solution is
/// known by construction.
GeneratedProblem random_problem(const std::vector<std::int64_t>& dims, std::uint64_t seed);

/// Draws A_1..A_N, then the forcing, then the initial state.
OdeSystem random_ode_system(const std::vector<std::int64_t>& dims, std::uint64_t seed);

}  // namespace ndsylv
