#pragma once

#include <cstdint>
#include <random>

namespace hawkrad {

// SplitMix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for (seed, index), so ensembles give the same result no
// matter how samples are spread over workers.
inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

// Uniform on [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace hawkrad
