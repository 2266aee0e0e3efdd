#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eljx {

inline constexpr double pi = std::numbers::pi;

/// Bad physical parameters, malformed configuration, API misuse.
class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numerical tolerance was violated (lost unitarity, failed convergence).
class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Stateless 64-bit mixer (splitmix64 finalizer). Used as a counter-based
/// generator: mix64(seed, counter) is a stable, documented function of its
/// arguments on every platform, which keeps disorder draws and derived
/// per-realization seeds bitwise reproducible.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of a mixed word.
inline double uniform01(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

std::string version_string();

} // namespace eljx
