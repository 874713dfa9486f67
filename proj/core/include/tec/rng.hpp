#ifndef TEC_RNG_HPP
#define TEC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tec {

/// splitmix64 step; also used to fold several key components into one
/// 64-bit stream seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a785629774cbULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a key tuple.
/// Deterministic and order-free, so parallel replications can seed
/// themselves without shared generator state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t state = base;
    splitmix64(state);
    state ^= a * 0xd6e8feb86659fd93ULL;
    splitmix64(state);
    state ^= b * 0xa3b195354a39b70dULL;
    splitmix64(state);
    state ^= c * 0x1b03738712fad5c9ULL;
    return splitmix64(state);
}

/// Small self-contained generator (xorshift-based state advance via
/// splitmix64) with a Box-Muller normal transform, so sampled datasets
/// are bit-identical across platforms and standard libraries.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : state_(seed) {}

    double uniform() {
        // 53-bit mantissa in (0, 1].
        return (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace tec

#endif
