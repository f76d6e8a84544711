#include "hbc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hbc {

__extension__ using u128 = unsigned __int128;

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Rng::binomial: p outside [0, 1]");
  if (p == 0.0 || trials == 0) return 0;
  if (p == 1.0) return trials;
  const double log_q = std::log1p(-p);
  std::uint64_t successes = 0;
  double position = 0.0;  // trials consumed so far
  const auto limit = static_cast<double>(trials);
  while (true) {
    position += std::floor(std::log(uniform_open_closed()) / log_q) + 1.0;
    if (position > limit) return successes;
    ++successes;
  }
}

}  // namespace hbc
