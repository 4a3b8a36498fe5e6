#pragma once

// Reproducible random streams.
//
// Every stream is a std::mt19937_64 engine (its output sequence is fixed by
// the C++ standard) seeded from a (master_seed, stream_index) pair through the
// SplitMix64 finalizer. All distributions are implemented here rather than
// taken from <random>, whose distribution algorithms are implementation
// defined; this keeps draws bit-identical across standard libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>

namespace satlab {

/// Identifies one random stream.
struct RngHandle {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of child stream `stream_index` under `master_seed`. Pure function of
/// its arguments so that adding trials never perturbs earlier ones.
inline constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                           std::uint64_t stream_index) {
  return splitmix64(splitmix64(master_seed) ^
                    splitmix64(stream_index + 0xD1B54A32D192ED03ULL));
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngHandle handle)
      : handle_(handle), engine_(derive_seed(handle.master_seed, handle.stream_index)) {}
  Rng(std::uint64_t master_seed, std::uint64_t stream_index)
      : Rng(RngHandle{master_seed, stream_index}) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  const RngHandle& handle() const { return handle_; }

  /// Independent stream derived from this one's handle; does not consume draws.
  Rng child(std::uint64_t index) const {
    return Rng(derive_seed(handle_.master_seed, handle_.stream_index), index);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p. p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    std::uint64_t x = engine_();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Fisher-Yates, back to front.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  RngHandle handle_;
  std::mt19937_64 engine_;
};

}  // namespace satlab
