#ifndef CUBES_RNG_HPP_
#define CUBES_RNG_HPP_

#include <cstdint>
#include <random>

namespace cubes {

  // Uniform draw from [0, n) by rejection. Unlike the standard
  // distributions the result is the same on every standard library.
  inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) {
      return 0;
    }
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t       x;
    do {
      x = rng();
    } while (x >= limit);
    return x % n;
  }

}  // namespace cubes

#endif  // CUBES_RNG_HPP_
