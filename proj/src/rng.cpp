#include "homog/rng.hpp"

#include <bit>
#include <cmath>

namespace homog {

std::string to_string(RngLabel label) {
  switch (label) {
    case RngLabel::sampling:
      return "sampling";
    case RngLabel::resampling:
      return "resampling";
  }
  return "unknown";
}

bool parse_rng_label(const std::string& text, RngLabel& out) {
  if (text == "sampling") {
    out = RngLabel::sampling;
    return true;
  }
  if (text == "resampling") {
    out = RngLabel::resampling;
    return true;
  }
  return false;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t state, std::uint64_t value) {
  return mix64(state ^ (value + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2)));
}

std::uint64_t compose_stream_index(double side, std::uint64_t realization) {
  return hash_combine(std::bit_cast<std::uint64_t>(side), realization);
}

RngStream RngStream::derive(std::uint64_t tag) const {
  RngStream s = *this;
  s.counter = hash_combine(counter, tag);
  return s;
}

std::mt19937_64 RngStream::engine() const {
  std::uint64_t h = mix64(master_seed);
  h = hash_combine(h, stream_index);
  h = hash_combine(h, static_cast<std::uint64_t>(label));
  h = hash_combine(h, counter);
  return std::mt19937_64(h);
}

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

std::uint64_t poisson_knuth(std::mt19937_64& eng, double mean) {
  // Poisson(a+b) = Poisson(a) + Poisson(b) for independent summands; chunking
  // keeps exp(-chunk) well inside the normal double range for large means.
  constexpr double kChunk = 256.0;
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = std::min(remaining, kChunk);
    remaining -= chunk;
    const double threshold = std::exp(-chunk);
    double product = 1.0;
    std::uint64_t count = 0;
    for (;;) {
      product *= uniform01(eng);
      if (product <= threshold) break;
      ++count;
    }
    total += count;
  }
  return total;
}

}  // namespace homog
