#pragma once

#include <cstdint>
#include <limits>

namespace sharpcount {

/// SplitMix64 stream. Cheap to construct, so every try, sample block and
/// trial gets its own generator keyed by (seed, index) and results do not
/// depend on how work is split across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound). Multiply-shift; bias is below 2^-32 for the
  /// bounds used here (clause widths, variable counts).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  bool coin() { return (*this)() >> 63; }

 private:
  std::uint64_t state_;
};

/// Child seed for stream `index` of `seed`.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (index * 0xd1b54a32d192ed03ULL));
  mix();
  return mix() ^ index;
}

/// Named sub-streams so the phases of one run never share random bits.
enum class Stream : std::uint64_t {
  kEnumeration = 0x454e554d,
  kSampling = 0x53414d50,
  kHashing = 0x48415348,
  kTrials = 0x5452494c,
};

inline std::uint64_t deriveSeed(std::uint64_t seed, Stream stream) {
  return deriveSeed(seed, static_cast<std::uint64_t>(stream));
}

}  // namespace sharpcount
