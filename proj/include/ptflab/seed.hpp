#pragma once

#include <cstdint>

namespace ptflab {

// Counter-based seed derivation: one root seed fans out into independent
// per-task seeds. splitmix64 finalizer, so nearby counters decorrelate.
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t counter) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace ptflab
