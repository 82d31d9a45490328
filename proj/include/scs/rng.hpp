#ifndef SCS_RNG_HPP
#define SCS_RNG_HPP

#include <cstdint>
#include <random>

namespace scs {

/// Seeded random stream with a fully pinned cross-platform sequence.
///
/// std::mt19937_64 has a standard-mandated output sequence, but the
/// <random> distributions do not, so normals are generated here with an
/// explicit Box-Muller transform. Two runs with equal seeds produce
/// bit-identical draws on any conforming implementation, which is what
/// keeps CSV goldens byte-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw via Box-Muller; the paired value is cached.
    double normal();

    /// Fair coin.
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; the mixing primitive behind derive_seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Fixed public mixing of (master seed, stream coordinates) into a
/// substream seed. Coordinates are typically (k, trial_index, arm) so
/// that trials parallelize deterministically and arms stay comparable.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c);

} // namespace scs

#endif
