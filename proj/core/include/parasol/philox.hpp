#ifndef PARASOL_PHILOX_HPP
#define PARASOL_PHILOX_HPP

#include <array>
#include <cstdint>

namespace parasol {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: every (key, counter) pair maps to four independent 32-bit
/// words, so ensembles keyed by lattice vector are reproducible across
/// resolutions, platforms and thread counts.
namespace philox {

constexpr std::uint32_t M0 = 0xD2511F53u;
constexpr std::uint32_t M1 = 0xCD9E8D57u;
constexpr std::uint32_t W0 = 0x9E3779B9u;
constexpr std::uint32_t W1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

/// Uniform double in [0,1) from the first two output words.
inline double uniform(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    const auto out = block(ctr, key);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(out[0]) << 21) ^ (static_cast<std::uint64_t>(out[1]) >> 11);
    return static_cast<double>(bits & ((1ull << 53) - 1)) * 0x1p-53;
}

} // namespace philox
} // namespace parasol

#endif
