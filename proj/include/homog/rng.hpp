#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace homog {

/// Substream purpose; part of the stream identity.
enum class RngLabel : std::uint64_t { sampling = 1, resampling = 2 };

std::string to_string(RngLabel label);
bool parse_rng_label(const std::string& text, RngLabel& out);

/// Descriptor of an independent random stream. Identical
/// (master_seed, stream_index, label, counter) always reproduce identical
/// draws, regardless of execution order; the engine seed is a hash of the
/// four fields.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
  RngLabel label = RngLabel::sampling;
  std::uint64_t counter = 0;

  RngStream with_label(RngLabel l) const {
    RngStream s = *this;
    s.label = l;
    return s;
  }
  /// Derived substream: mixes a tag into the counter. Used for per-resample
  /// and per-ball-center streams so draws nest (stream for counter k does not
  /// depend on how many counters are used).
  RngStream derive(std::uint64_t tag) const;

  std::mt19937_64 engine() const;
};

/// SplitMix64 finalizer; the mixing primitive behind stream seeding.
std::uint64_t mix64(std::uint64_t x);
/// Order-sensitive combine of a hash state with one value.
std::uint64_t hash_combine(std::uint64_t state, std::uint64_t value);

/// Composes a stream index from a side length and realization index, so
/// sweeps over several L get disjoint streams per (L, realization).
std::uint64_t compose_stream_index(double side, std::uint64_t realization);

/// Uniform double in [0,1) from the top 53 bits; portable across platforms
/// (std::uniform_real_distribution is implementation-defined).
double uniform01(std::mt19937_64& eng);

/// Uniform in [lo, hi).
double uniform_in(std::mt19937_64& eng, double lo, double hi);

/// Poisson draw by the chunked Knuth product method; exact for any mean >= 0
/// and portable (std::poisson_distribution is implementation-defined).
/// Cost is O(mean) uniform draws.
std::uint64_t poisson_knuth(std::mt19937_64& eng, double mean);

}  // namespace homog
